#ifndef QLINEAR_TEXT_HPP
#define QLINEAR_TEXT_HPP

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <qlinear/error.hpp>
#include <qlinear/puiseux.hpp>
#include <qlinear/rational.hpp>

// Text form of elements of L0^x.
//
//   element  := "x^(" rational ")" "*" unit | series
//   unit     := "1" { "+" term } "+" "O(" monomial ")"
//   series   := { term "+" } "O(" monomial ")"
//   term     := "1" | monomial
//   monomial := "x" [ "^" ( "(" rational ")" | integer ) ]
//   rational := integer [ "/" positive-integer ]
//
// A series whose first term is not 1 is read as a raw Puiseux series and
// decomposed into uniformizer power and unit; its O-term is absolute. In the
// "x^(a) * unit" form the O-term belongs to the unit. Whitespace between
// tokens is ignored. Output always parenthesizes exponents.

namespace qlinear
{

inline std::string format_exponent(const rational &e)
{
    return "x^(" + to_string(e) + ")";
}

inline std::string format_unit(const puiseux_unit &u)
{
    std::string out = "1";
    for (const auto &e : u.support()) {
        if (e != 0) {
            out += " + " + format_exponent(e);
        }
    }
    out += " + O(" + format_exponent(u.aprec()) + ")";
    return out;
}

inline std::string format_element(const l0_element &a)
{
    if (a.val == 0) {
        return format_unit(a.unit);
    }
    return format_exponent(a.val) + " * " + format_unit(a.unit);
}

inline std::string format_raw(const raw_series &s)
{
    std::string out;
    for (const auto &e : s.support()) {
        out += (e == 0 ? std::string("1") : format_exponent(e)) + " + ";
    }
    return out + "O(" + format_exponent(s.prec()) + ")";
}

namespace detail
{

class element_parser
{
public:
    element_parser(std::string_view text, const context &ctx) : m_text(text), m_ctx(ctx) {}

    l0_element parse_element()
    {
        skip_ws();
        if (at_end()) {
            fail("empty input");
        }
        l0_element result = [&] {
            if (peek() == 'x') {
                const auto start = m_pos;
                auto first = parse_monomial();
                skip_ws();
                if (peek() == '*') {
                    ++m_pos;
                    return l0_element{first, parse_unit()};
                }
                return decompose_element(parse_series_after(start, std::move(first)), m_ctx);
            }
            if (peek() == 'O') {
                return decompose_element(parse_series_after(m_pos, std::nullopt), m_ctx);
            }
            const auto start = m_pos;
            expect_one();
            return decompose_element(parse_series_after(start, rational(0)), m_ctx);
        }();
        expect_end();
        return result;
    }

    raw_series parse_raw()
    {
        skip_ws();
        if (at_end()) {
            fail("empty input");
        }
        const auto start = m_pos;
        std::optional<rational> first;
        if (peek() == 'x') {
            first = parse_monomial();
        } else if (peek() != 'O') {
            expect_one();
            first = rational(0);
        }
        auto r = parse_series_after(start, std::move(first));
        expect_end();
        return r;
    }

    puiseux_unit parse_unit_only()
    {
        auto u = parse_unit();
        expect_end();
        return u;
    }

    rational parse_rational_only()
    {
        skip_ws();
        auto r = parse_rational();
        expect_end();
        return r;
    }

private:
    [[noreturn]] void fail(const std::string &msg) const
    {
        throw syntax_error(m_pos, msg);
    }

    bool at_end() const
    {
        return m_pos >= m_text.size();
    }
    char peek() const
    {
        return at_end() ? '\0' : m_text[m_pos];
    }
    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(m_text[m_pos]))) {
            ++m_pos;
        }
    }
    void expect(char c)
    {
        skip_ws();
        if (peek() != c) {
            fail(std::string("expected '") + c + "'" + (at_end() ? " before end of input" : ", found '" + std::string(1, peek()) + "'"));
        }
        ++m_pos;
    }
    void expect_end()
    {
        skip_ws();
        if (!at_end()) {
            fail("unexpected trailing input '" + std::string(m_text.substr(m_pos)) + "'");
        }
    }
    void expect_one()
    {
        skip_ws();
        if (peek() != '1' || (m_pos + 1 < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[m_pos + 1])))) {
            fail("expected the term 1 or a power of x");
        }
        ++m_pos;
    }

    integer parse_digits()
    {
        const auto start = m_pos;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            ++m_pos;
        }
        if (m_pos == start) {
            fail("expected a digit");
        }
        return integer(std::string(m_text.substr(start, m_pos - start)));
    }

    integer parse_integer()
    {
        skip_ws();
        bool neg = false;
        if (peek() == '-' || peek() == '+') {
            neg = peek() == '-';
            ++m_pos;
        }
        auto n = parse_digits();
        return neg ? integer(-n) : n;
    }

    rational parse_rational()
    {
        auto n = parse_integer();
        skip_ws();
        if (peek() != '/') {
            return rational(n);
        }
        ++m_pos;
        skip_ws();
        const auto dpos = m_pos;
        auto d = parse_digits();
        if (d == 0) {
            m_pos = dpos;
            fail("zero denominator");
        }
        return rational(n, d);
    }

    // "x", "x^2", "x^-2" or "x^(p/q)"; returns the exponent.
    rational parse_monomial()
    {
        expect('x');
        if (peek() != '^') {
            return rational(1);
        }
        ++m_pos;
        skip_ws();
        if (peek() == '(') {
            ++m_pos;
            skip_ws();
            auto r = parse_rational();
            expect(')');
            return r;
        }
        return rational(parse_integer());
    }

    rational parse_big_o()
    {
        expect('O');
        expect('(');
        skip_ws();
        rational p;
        if (peek() == '1' && !(m_pos + 1 < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[m_pos + 1])))) {
            ++m_pos;
            p = 0;
        } else {
            p = parse_monomial();
        }
        expect(')');
        return p;
    }

    // Remaining "+ term ... + O(...)" after an optional first term.
    raw_series parse_series_after(std::size_t first_pos, std::optional<rational> first)
    {
        std::vector<rational> support;
        std::vector<std::size_t> positions;
        if (first) {
            support.push_back(std::move(*first));
            positions.push_back(first_pos);
            expect('+');
        }
        for (;;) {
            skip_ws();
            const auto pos = m_pos;
            if (peek() == 'O') {
                auto prec = parse_big_o();
                check_order(support, positions, prec, pos);
                return raw_series(std::move(support), std::move(prec));
            }
            if (peek() == 'x') {
                support.push_back(parse_monomial());
            } else {
                expect_one();
                support.push_back(rational(0));
            }
            positions.push_back(pos);
            expect('+');
        }
    }

    void check_order(const std::vector<rational> &support, const std::vector<std::size_t> &positions, const rational &prec,
                     std::size_t prec_pos) const
    {
        if (!support.empty() && prec <= support.front()) {
            throw nonpositive_precision(prec_pos, "precision x^(" + to_string(prec) + ") does not exceed the leading term x^("
                                                      + to_string(support.front()) + "); nothing is known");
        }
        for (std::size_t i = 1; i < support.size(); ++i) {
            if (support[i] <= support[i - 1]) {
                throw exponent_not_increasing(positions[i], "exponent " + to_string(support[i]) + " does not exceed the previous exponent "
                                                                + to_string(support[i - 1]));
            }
            if (support[i] >= prec) {
                throw exponent_not_increasing(positions[i], "exponent " + to_string(support[i]) + " is not below the precision "
                                                                + to_string(prec));
            }
        }
    }

    puiseux_unit parse_unit()
    {
        skip_ws();
        const auto start = m_pos;
        std::optional<rational> first;
        if (peek() == 'x') {
            first = parse_monomial();
        } else if (peek() == '1') {
            expect_one();
            first = rational(0);
        } else if (peek() != 'O') {
            fail("expected a unit starting with 1");
        }
        auto s = parse_series_after(start, first);
        if (s.support().empty() || s.support().front() != 0) {
            throw non_unit_leading_term(start, "unit part must start with the term 1");
        }
        if (s.prec() <= 0) {
            throw nonpositive_precision(start, "precision of a unit must be positive");
        }
        return decompose(s, m_ctx).second;
    }

    std::string_view m_text;
    context m_ctx;
    std::size_t m_pos = 0;
};

} // namespace detail

inline l0_element parse_element(std::string_view text, const context &ctx = {})
{
    return detail::element_parser(text, ctx).parse_element();
}

inline puiseux_unit parse_unit(std::string_view text, const context &ctx = {})
{
    return detail::element_parser(text, ctx).parse_unit_only();
}

// A series in raw form, without decomposing it.
inline raw_series parse_raw(std::string_view text, const context &ctx = {})
{
    return detail::element_parser(text, ctx).parse_raw();
}

inline rational parse_rational(std::string_view text)
{
    return detail::element_parser(text, context{}).parse_rational_only();
}

} // namespace qlinear

#endif
