#ifndef QLINEAR_PUISEUX_HPP
#define QLINEAR_PUISEUX_HPP

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <qlinear/error.hpp>
#include <qlinear/f2series.hpp>
#include <qlinear/rational.hpp>

namespace qlinear
{

// Resource bounds for the union of grids F2[[x^(1/n)]].
struct context {
    std::uint64_t den_cap = std::uint64_t(1) << 16;
};

namespace detail
{

inline std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b, const context &ctx)
{
    const auto g = std::gcd(a, b);
    const auto q = a / g;
    if (q > ctx.den_cap / b) {
        throw denominator_overflow("grid denominator lcm(" + std::to_string(a) + ", " + std::to_string(b)
                                   + ") exceeds the cap " + std::to_string(ctx.den_cap));
    }
    return q * b;
}

// Doubling a grid denominator; the cap itself is enforced after normalization.
inline std::uint64_t doubled_den(std::uint64_t a)
{
    if (a > std::numeric_limits<std::uint64_t>::max() / 2) {
        throw denominator_overflow("grid denominator " + std::to_string(a) + " cannot be doubled");
    }
    return 2 * a;
}

} // namespace detail

// A unit of R = union of F2[[x^(1/n)]] with residue 1, known modulo x^aprec.
//
// The body is a series in s = x^(1/den); bit j is the coefficient of x^(j/den)
// and body.prec()/den is the absolute precision. The representation is
// canonical: den is the least n such that every support exponent and the
// precision lie in (1/n)Z.
class puiseux_unit
{
public:
    puiseux_unit(std::uint64_t den, f2_series body, const context &ctx = {}) : m_den(den), m_body(std::move(body))
    {
        if (den == 0) {
            throw std::invalid_argument("puiseux_unit: denominator must be positive");
        }
        if (!m_body.is_unit()) {
            throw not_a_unit("puiseux_unit: constant coefficient is 0");
        }
        normalize();
        if (m_den > ctx.den_cap) {
            throw denominator_overflow("puiseux_unit: denominator " + std::to_string(m_den) + " exceeds the cap "
                                       + std::to_string(ctx.den_cap));
        }
    }

    // The identity known modulo x^aprec.
    static puiseux_unit one(const rational &aprec, const context &ctx = {})
    {
        if (aprec <= 0) {
            throw out_of_range("puiseux_unit: precision must be positive");
        }
        const auto d = to_uint64(qlinear::den(aprec));
        return puiseux_unit(d, f2_series::one(static_cast<std::size_t>(to_uint64(num(aprec)))), ctx);
    }

    // 1 + sum of x^e over the given positive exponents, modulo x^aprec.
    static puiseux_unit from_exponents(const std::vector<rational> &exps, const rational &aprec, const context &ctx = {})
    {
        if (aprec <= 0) {
            throw out_of_range("puiseux_unit: precision must be positive");
        }
        std::uint64_t grid = to_uint64(qlinear::den(aprec));
        for (const auto &e : exps) {
            if (e <= 0 || e >= aprec) {
                throw out_of_range("puiseux_unit: exponent " + to_string(e) + " outside (0, " + to_string(aprec) + ")");
            }
            grid = detail::checked_lcm(grid, to_uint64(qlinear::den(e)), ctx);
        }
        auto body = f2_series::one(static_cast<std::size_t>(to_uint64(num(aprec * grid))));
        for (const auto &e : exps) {
            const auto j = static_cast<std::size_t>(to_uint64(num(e * grid)));
            body.set_coeff(j, !body.coeff(j));
        }
        return puiseux_unit(grid, std::move(body), ctx);
    }

    std::uint64_t den() const noexcept
    {
        return m_den;
    }
    const f2_series &body() const noexcept
    {
        return m_body;
    }
    rational aprec() const
    {
        return rational(integer(m_body.prec()), integer(m_den));
    }
    bool is_one() const noexcept
    {
        return m_body.is_one();
    }
    // Exponents with coefficient 1, including 0.
    std::vector<rational> support() const
    {
        std::vector<rational> r;
        for (auto j : m_body.support()) {
            r.emplace_back(integer(j), integer(m_den));
        }
        return r;
    }
    // Body re-expressed on the finer grid 1/(den*m); same element.
    f2_series body_on_grid(std::uint64_t grid) const
    {
        assert(grid % m_den == 0);
        return spread(m_body, static_cast<std::size_t>(grid / m_den));
    }

    friend bool operator==(const puiseux_unit &, const puiseux_unit &) = default;

private:
    void normalize()
    {
        auto g = std::gcd(m_den, static_cast<std::uint64_t>(m_body.prec()));
        for (auto j : m_body.support()) {
            if (g == 1) {
                break;
            }
            g = std::gcd(g, static_cast<std::uint64_t>(j));
        }
        if (g > 1) {
            m_body = contract(m_body, static_cast<std::size_t>(g));
            m_den /= g;
        }
    }

    std::uint64_t m_den;
    f2_series m_body;
};

// Equality on the common grid at the common precision.
inline bool agree(const puiseux_unit &u, const puiseux_unit &v)
{
    const auto g = std::lcm(u.den(), v.den());
    return agree(u.body_on_grid(g), v.body_on_grid(g));
}

inline puiseux_unit normalize(std::uint64_t den, f2_series body, const context &ctx = {})
{
    return puiseux_unit(den, std::move(body), ctx);
}

inline puiseux_unit unit_mul(const puiseux_unit &u, const puiseux_unit &v, const context &ctx = {})
{
    const auto g = detail::checked_lcm(u.den(), v.den(), ctx);
    return puiseux_unit(g, u.body_on_grid(g) * v.body_on_grid(g), ctx);
}

inline puiseux_unit unit_inv(const puiseux_unit &u)
{
    return puiseux_unit(u.den(), inv(u.body()), context{u.den()});
}

// Same bit sequence on the grid 1/(2*den): the inverse of the Frobenius.
inline puiseux_unit unit_sqrt(const puiseux_unit &u, const context &ctx = {})
{
    return puiseux_unit(detail::doubled_den(u.den()), u.body(), ctx);
}

// Powers. The 2-part of the exponent is applied as a Frobenius, which is exact
// and multiplies the absolute precision by the same power of two.
inline puiseux_unit unit_pow(const puiseux_unit &u, std::int64_t e)
{
    const context keep{u.den()};
    if (e == 0) {
        return puiseux_unit(u.den(), f2_series::one(u.body().prec()), keep);
    }
    const auto &base = e < 0 ? unit_inv(u) : u;
    auto m = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
    const auto s = static_cast<unsigned>(std::countr_zero(m));
    m >>= s;
    auto body = pow_int(base.body(), m);
    if (s) {
        body = spread(body, std::size_t(1) << s);
    }
    return puiseux_unit(u.den(), std::move(body), keep);
}

// The unique k-th root with residue 1. For k = 2^s * m the odd part is lifted
// on the body and each factor 2 doubles the denominator.
inline puiseux_unit unit_root(const puiseux_unit &u, std::uint64_t k, const context &ctx = {})
{
    if (k == 0) {
        throw std::invalid_argument("unit_root: index must be positive");
    }
    const auto s = static_cast<unsigned>(std::countr_zero(k));
    const auto m = k >> s;
    auto d = u.den();
    for (unsigned i = 0; i < s; ++i) {
        d = detail::doubled_den(d);
    }
    return puiseux_unit(d, kth_root_odd(u.body(), m), ctx);
}

// r.u := (u^num(r))^(1/den(r)).
inline puiseux_unit scalar_mul_unit(const rational &r, const puiseux_unit &u, const context &ctx = {})
{
    return unit_root(unit_pow(u, to_int64(num(r))), to_uint64(den(r)), ctx);
}

// x^val * unit, an element of L0^x.
struct l0_element {
    rational val;
    puiseux_unit unit;

    friend bool operator==(const l0_element &, const l0_element &) = default;
};

inline bool agree(const l0_element &a, const l0_element &b)
{
    return a.val == b.val && agree(a.unit, b.unit);
}

inline l0_element compose(const rational &alpha, const puiseux_unit &u)
{
    return l0_element{alpha, u};
}

inline l0_element element_mul(const l0_element &a, const l0_element &b, const context &ctx = {})
{
    return l0_element{a.val + b.val, unit_mul(a.unit, b.unit, ctx)};
}

inline l0_element element_inv(const l0_element &a)
{
    return l0_element{-a.val, unit_inv(a.unit)};
}

inline l0_element element_pow(const l0_element &a, std::int64_t e)
{
    return l0_element{a.val * e, unit_pow(a.unit, e)};
}

inline l0_element element_root(const l0_element &a, std::uint64_t k, const context &ctx = {})
{
    return l0_element{a.val / rational(integer(k)), unit_root(a.unit, k, ctx)};
}

inline l0_element element_scalar_mul(const rational &r, const l0_element &a, const context &ctx = {})
{
    return l0_element{r * a.val, scalar_mul_unit(r, a.unit, ctx)};
}

// A Puiseux series given by its support (strictly increasing rational
// exponents, all coefficients 1) and absolute precision: sum x^e + O(x^prec).
class raw_series
{
public:
    raw_series(std::vector<rational> support, rational prec) : m_support(std::move(support)), m_prec(std::move(prec))
    {
        for (std::size_t i = 0; i < m_support.size(); ++i) {
            if ((i > 0 && m_support[i] <= m_support[i - 1]) || m_support[i] >= m_prec) {
                throw std::invalid_argument("raw_series: exponents must be strictly increasing and below the precision");
            }
        }
    }

    const std::vector<rational> &support() const noexcept
    {
        return m_support;
    }
    const rational &prec() const noexcept
    {
        return m_prec;
    }

    friend bool operator==(const raw_series &, const raw_series &) = default;

private:
    std::vector<rational> m_support;
    rational m_prec;
};

// x^val * u written out as a raw series with absolute precision val + aprec(u).
inline raw_series to_raw(const l0_element &a)
{
    auto s = a.unit.support();
    for (auto &e : s) {
        e += a.val;
    }
    return raw_series(std::move(s), a.val + a.unit.aprec());
}

// Splits off the least exponent: the uniformizer power and a residue-1 unit.
inline std::pair<rational, puiseux_unit> decompose(const raw_series &a, const context &ctx = {})
{
    if (a.support().empty()) {
        throw indistinguishable("decompose: every coefficient below x^(" + to_string(a.prec())
                                + ") is zero; the series cannot be certified nonzero");
    }
    const auto &val = a.support().front();
    const rational rel_prec = a.prec() - val;
    std::uint64_t grid = to_uint64(den(rel_prec));
    for (const auto &e : a.support()) {
        grid = detail::checked_lcm(grid, to_uint64(den(e - val)), ctx);
    }
    f2_series body(static_cast<std::size_t>(to_uint64(num(rel_prec * grid))));
    for (const auto &e : a.support()) {
        body.set_coeff(static_cast<std::size_t>(to_uint64(num((e - val) * grid))), true);
    }
    return {val, puiseux_unit(grid, std::move(body), ctx)};
}

inline l0_element decompose_element(const raw_series &a, const context &ctx = {})
{
    auto [val, u] = decompose(a, ctx);
    return compose(val, u);
}

// Product of raw series computed term by term on a common integer grid. It
// never goes through the unit representation, so it serves as an independent
// witness for decompose being a homomorphism.
inline raw_series raw_mul(const raw_series &a, const raw_series &b, const context &ctx = {})
{
    const auto lead = [](const raw_series &s) { return s.support().empty() ? s.prec() : s.support().front(); };
    const rational pa = a.prec() + lead(b), pb = b.prec() + lead(a);
    const rational prec = pa < pb ? pa : pb;
    std::uint64_t grid = to_uint64(den(prec));
    for (const auto *s : {&a, &b}) {
        grid = detail::checked_lcm(grid, to_uint64(den(s->prec())), ctx);
        for (const auto &e : s->support()) {
            grid = detail::checked_lcm(grid, to_uint64(den(e)), ctx);
        }
    }
    const auto index = [grid](const rational &e) { return to_int64(num(e * grid)); };
    std::vector<std::int64_t> ia, ib;
    for (const auto &e : a.support()) {
        ia.push_back(index(e));
    }
    for (const auto &e : b.support()) {
        ib.push_back(index(e));
    }
    const auto top = index(prec);
    const auto low = (ia.empty() || ib.empty()) ? top : ia.front() + ib.front();
    std::vector<unsigned char> bits(static_cast<std::size_t>(top - low));
    for (auto x : ia) {
        for (auto y : ib) {
            if (x + y >= top) {
                break;
            }
            bits[static_cast<std::size_t>(x + y - low)] ^= 1u;
        }
    }
    std::vector<rational> support;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) {
            support.emplace_back(integer(low + static_cast<std::int64_t>(i)), integer(grid));
        }
    }
    return raw_series(std::move(support), prec);
}

} // namespace qlinear

#endif
