#ifndef QLINEAR_F2SERIES_HPP
#define QLINEAR_F2SERIES_HPP

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <qlinear/error.hpp>

namespace qlinear
{

namespace detail
{

using word = std::uint64_t;
inline constexpr std::size_t word_bits = 64;

constexpr std::size_t words_for(std::size_t nbits) noexcept
{
    return (nbits + word_bits - 1) / word_bits;
}

// 64x64 -> 128 carry-less product, 4-bit window.
inline void clmul64(word a, word b, word &lo, word &hi) noexcept
{
    using u128 = unsigned __int128;
    u128 tab[16];
    tab[0] = 0;
    tab[1] = b;
    for (unsigned i = 2; i < 16; ++i) {
        tab[i] = (i & 1u) ? (tab[i - 1] ^ static_cast<u128>(b)) : (tab[i / 2] << 1);
    }
    u128 r = 0;
    for (int i = 60; i >= 0; i -= 4) {
        r = (r << 4) ^ tab[(a >> i) & 15u];
    }
    lo = static_cast<word>(r);
    hi = static_cast<word>(r >> 64);
}

// out[0 .. a.size()+b.size()) ^= a * b, word-level schoolbook.
inline void mul_basecase(std::span<const word> a, std::span<const word> b, std::span<word> out) noexcept
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            word lo, hi;
            clmul64(a[i], b[j], lo, hi);
            out[i + j] ^= lo;
            out[i + j + 1] ^= hi;
        }
    }
}

inline constexpr std::size_t karatsuba_threshold = 16;

// out[0 .. 2n) ^= a * b for a.size() == b.size() == n.
inline void mul_balanced(std::span<const word> a, std::span<const word> b, std::span<word> out)
{
    const auto n = a.size();
    assert(b.size() == n && out.size() >= 2 * n);
    if (n <= karatsuba_threshold) {
        mul_basecase(a, b, out);
        return;
    }
    // a = a0 + a1 X^h with len(a1) = n - h >= h.
    const auto h = n / 2, hn = n - h;
    std::vector<word> z0(2 * h), z2(2 * hn), z1(2 * hn), sa(hn), sb(hn);
    mul_balanced(a.first(h), b.first(h), z0);
    mul_balanced(a.subspan(h), b.subspan(h), z2);
    for (std::size_t i = 0; i < hn; ++i) {
        sa[i] = a[h + i] ^ (i < h ? a[i] : 0);
        sb[i] = b[h + i] ^ (i < h ? b[i] : 0);
    }
    mul_balanced(sa, sb, z1);
    for (std::size_t i = 0; i < 2 * h; ++i) {
        z1[i] ^= z0[i];
        out[i] ^= z0[i];
    }
    for (std::size_t i = 0; i < 2 * hn; ++i) {
        z1[i] ^= z2[i];
        out[2 * h + i] ^= z2[i];
    }
    for (std::size_t i = 0; i < 2 * hn; ++i) {
        out[h + i] ^= z1[i];
    }
}

// Full product of two word sequences; result has a.size() + b.size() words.
inline std::vector<word> mul_words(std::span<const word> a, std::span<const word> b)
{
    std::vector<word> out(a.size() + b.size());
    if (a.empty() || b.empty()) {
        return out;
    }
    if (a.size() < b.size()) {
        std::swap(a, b);
    }
    // Chop the longer operand into blocks of the shorter length.
    const auto n = b.size();
    std::vector<word> block(n);
    for (std::size_t off = 0; off < a.size(); off += n) {
        const auto len = std::min(n, a.size() - off);
        std::fill(block.begin(), block.end(), 0);
        std::copy_n(a.begin() + static_cast<std::ptrdiff_t>(off), len, block.begin());
        std::vector<word> part(2 * n);
        mul_balanced(block, b, part);
        const auto lim = std::min(part.size(), out.size() - off);
        for (std::size_t i = 0; i < lim; ++i) {
            out[off + i] ^= part[i];
        }
    }
    return out;
}

} // namespace detail

// Truncated power series over F2 in one variable t, known modulo t^prec.
// Bit j of the packed words is the coefficient of t^j; bits at or above prec are zero.
class f2_series
{
public:
    using word_type = detail::word;

    // The zero series O(t^prec).
    explicit f2_series(std::size_t prec) : m_prec(prec), m_words(detail::words_for(prec))
    {
        if (prec == 0) {
            throw out_of_range("f2_series: precision must be at least 1");
        }
    }
    f2_series(std::size_t prec, std::vector<word_type> words) : f2_series(prec)
    {
        const auto n = std::min(words.size(), m_words.size());
        std::copy_n(words.begin(), n, m_words.begin());
        clear_tail();
    }

    static f2_series one(std::size_t prec)
    {
        f2_series r(prec);
        r.m_words[0] = 1;
        return r;
    }
    // Exponents at or beyond prec are dropped.
    static f2_series from_exponents(std::span<const std::size_t> exps, std::size_t prec)
    {
        f2_series r(prec);
        for (auto e : exps) {
            if (e < prec) {
                r.m_words[e / detail::word_bits] ^= word_type(1) << (e % detail::word_bits);
            }
        }
        return r;
    }
    static f2_series from_exponents(std::initializer_list<std::size_t> exps, std::size_t prec)
    {
        return from_exponents(std::span<const std::size_t>(exps.begin(), exps.size()), prec);
    }

    std::size_t prec() const noexcept
    {
        return m_prec;
    }
    std::span<const word_type> words() const noexcept
    {
        return m_words;
    }
    bool coeff(std::size_t j) const noexcept
    {
        return j < m_prec && ((m_words[j / detail::word_bits] >> (j % detail::word_bits)) & 1u);
    }
    void set_coeff(std::size_t j, bool v)
    {
        if (j >= m_prec) {
            throw out_of_range("f2_series: coefficient index " + std::to_string(j) + " is beyond precision");
        }
        const auto mask = word_type(1) << (j % detail::word_bits);
        if (v) {
            m_words[j / detail::word_bits] |= mask;
        } else {
            m_words[j / detail::word_bits] &= ~mask;
        }
    }

    bool is_unit() const noexcept
    {
        return coeff(0);
    }
    bool is_zero() const noexcept
    {
        return std::all_of(m_words.begin(), m_words.end(), [](word_type w) { return w == 0; });
    }
    bool is_one() const noexcept
    {
        return m_words[0] == 1 && std::all_of(m_words.begin() + 1, m_words.end(), [](word_type w) { return w == 0; });
    }
    // Index of the least nonzero coefficient, if any below prec.
    std::optional<std::size_t> valuation() const noexcept
    {
        for (std::size_t i = 0; i < m_words.size(); ++i) {
            if (m_words[i]) {
                return i * detail::word_bits + static_cast<std::size_t>(std::countr_zero(m_words[i]));
            }
        }
        return std::nullopt;
    }
    std::optional<std::size_t> degree() const noexcept
    {
        for (std::size_t i = m_words.size(); i-- > 0;) {
            if (m_words[i]) {
                return i * detail::word_bits + detail::word_bits - 1 - static_cast<std::size_t>(std::countl_zero(m_words[i]));
            }
        }
        return std::nullopt;
    }
    std::vector<std::size_t> support() const
    {
        std::vector<std::size_t> r;
        for (std::size_t i = 0; i < m_words.size(); ++i) {
            for (auto w = m_words[i]; w; w &= w - 1) {
                r.push_back(i * detail::word_bits + static_cast<std::size_t>(std::countr_zero(w)));
            }
        }
        return r;
    }

    // Same series known to the smaller precision p.
    f2_series truncated(std::size_t p) const
    {
        assert(p <= m_prec);
        return f2_series(p, std::vector<word_type>(m_words.begin(), m_words.begin() + static_cast<std::ptrdiff_t>(detail::words_for(p))));
    }
    // Zero-padded to precision p >= prec. Only meaningful as a lifting seed.
    f2_series extended(std::size_t p) const
    {
        assert(p >= m_prec);
        return f2_series(p, m_words);
    }

    friend bool operator==(const f2_series &, const f2_series &) = default;

private:
    void clear_tail() noexcept
    {
        if (const auto r = m_prec % detail::word_bits) {
            m_words.back() &= (word_type(1) << r) - 1;
        }
    }

    std::size_t m_prec;
    std::vector<word_type> m_words;
};

// Equality after truncating both operands to the smaller precision.
inline bool agree(const f2_series &a, const f2_series &b)
{
    const auto p = std::min(a.prec(), b.prec());
    return a.truncated(p) == b.truncated(p);
}

inline f2_series add(const f2_series &a, const f2_series &b)
{
    const auto p = std::min(a.prec(), b.prec());
    std::vector<detail::word> w(detail::words_for(p));
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = a.words()[i] ^ b.words()[i];
    }
    return f2_series(p, std::move(w));
}

// Carry-less product truncated to min(a.prec, b.prec). Karatsuba above a small
// word threshold.
inline f2_series mul(const f2_series &a, const f2_series &b)
{
    const auto p = std::min(a.prec(), b.prec());
    const auto nw = detail::words_for(p);
    auto w = detail::mul_words(a.words().first(nw), b.words().first(nw));
    w.resize(nw);
    return f2_series(p, std::move(w));
}

inline f2_series operator+(const f2_series &a, const f2_series &b)
{
    return add(a, b);
}
inline f2_series operator*(const f2_series &a, const f2_series &b)
{
    return mul(a, b);
}

// a(t^m): bit j moves to bit j*m and the precision scales by m. For m = 2 this
// is the Frobenius a^2, with the doubled precision that squaring certifies.
inline f2_series spread(const f2_series &a, std::size_t m)
{
    assert(m >= 1);
    if (m == 1) {
        return a;
    }
    f2_series r(a.prec() * m);
    for (auto j : a.support()) {
        r.set_coeff(j * m, true);
    }
    return r;
}

// Inverse of spread: requires every support index and prec to be divisible by g.
inline f2_series contract(const f2_series &a, std::size_t g)
{
    assert(g >= 1 && a.prec() % g == 0);
    if (g == 1) {
        return a;
    }
    f2_series r(a.prec() / g);
    for (auto j : a.support()) {
        assert(j % g == 0);
        r.set_coeff(j / g, true);
    }
    return r;
}

inline f2_series square(const f2_series &a)
{
    return spread(a, 2).truncated(a.prec());
}

inline f2_series pow_int(const f2_series &a, std::uint64_t e)
{
    auto result = f2_series::one(a.prec());
    auto base = a;
    while (e) {
        if (e & 1u) {
            result = result * base;
        }
        e >>= 1;
        if (e) {
            base = square(base);
        }
    }
    return result;
}

// Newton step y <- a*y^2: if a*y = 1 + e then a*(a*y^2) = 1 + e^2 in characteristic 2.
inline f2_series inv(const f2_series &a)
{
    if (!a.is_unit()) {
        throw not_a_unit("inv: constant coefficient is 0");
    }
    const auto target = a.prec();
    auto y = f2_series::one(1);
    for (std::size_t p = 1; p < target;) {
        p = std::min(2 * p, target);
        const auto yp = y.extended(p);
        y = a.truncated(p) * square(yp);
    }
    return y;
}

inline f2_series sqrt(const f2_series &a)
{
    f2_series r((a.prec() + 1) / 2);
    for (auto j : a.support()) {
        if (j % 2) {
            throw odd_support("sqrt: coefficient of t^" + std::to_string(j) + " is nonzero");
        }
        r.set_coeff(j / 2, true);
    }
    return r;
}

// Unique b with b(0) = 1 and b^k = a, by Newton lifting
// b <- b + (b^k + a) / b^(k-1). The derivative k*b^(k-1) = b^(k-1) is a unit for odd k.
inline f2_series kth_root_odd(const f2_series &a, std::uint64_t k)
{
    if (k == 0 || k % 2 == 0) {
        throw even_root("kth_root_odd: index " + std::to_string(k) + " is not a positive odd integer");
    }
    if (!a.is_unit()) {
        throw not_a_unit("kth_root_odd: constant coefficient is 0");
    }
    if (k == 1) {
        return a;
    }
    const auto target = a.prec();
    auto b = f2_series::one(1);
    for (std::size_t p = 1; p < target;) {
        p = std::min(2 * p, target);
        const auto bx = b.extended(p);
        const auto c = pow_int(bx, k - 1);
        const auto residual = (c * bx) + a.truncated(p);
        b = bx + residual * inv(c);
    }
    return b;
}

} // namespace qlinear

#endif
