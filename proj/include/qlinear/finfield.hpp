#ifndef QLINEAR_FINFIELD_HPP
#define QLINEAR_FINFIELD_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <qlinear/error.hpp>

// When is the multiplicative group of F_q a vector space over some field?
// Two routes: the closed-form verdict (q = 2, 3, or q - 1 a Mersenne prime)
// and a literal check that Z/(q-1) is elementary abelian.

namespace qlinear
{

// Deterministic trial division.
constexpr bool is_prime(std::uint64_t n) noexcept
{
    if (n < 2) {
        return false;
    }
    if (n % 2 == 0) {
        return n == 2;
    }
    for (std::uint64_t d = 3; d <= n / d; d += 2) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

// Lucas-Lehmer: for an odd prime r, 2^r - 1 is prime iff s_{r-2} = 0 where
// s_0 = 4 and s_{i+1} = s_i^2 - 2 mod 2^r - 1.
inline bool lucas_lehmer(unsigned r)
{
    if (r < 3 || r > 63 || !is_prime(r)) {
        throw std::invalid_argument("lucas_lehmer: exponent must be an odd prime below 64");
    }
    using u128 = unsigned __int128;
    const std::uint64_t m = (std::uint64_t(1) << r) - 1;
    std::uint64_t s = 4;
    for (unsigned i = 0; i + 2 < r; ++i) {
        const auto sq = static_cast<std::uint64_t>((static_cast<u128>(s) * s) % m);
        s = sq >= 2 ? sq - 2 : sq + m - 2;
    }
    return s == 0;
}

// r such that p = 2^r - 1 is prime, if any. Primality comes from trial
// division; for r >= 3 Lucas-Lehmer must agree.
inline std::optional<unsigned> mersenne_exponent(std::uint64_t p)
{
    if (p < 3 || p == std::uint64_t(-1) || !std::has_single_bit(p + 1)) {
        return std::nullopt;
    }
    const auto r = static_cast<unsigned>(std::countr_zero(p + 1));
    const bool prime = is_prime(p);
    if (r >= 3) {
        const bool ll = is_prime(r) && lucas_lehmer(r);
        if (ll != prime) {
            throw std::logic_error("mersenne_exponent: trial division and Lucas-Lehmer disagree on 2^" + std::to_string(r) + " - 1");
        }
    }
    return prime ? std::optional<unsigned>(r) : std::nullopt;
}

struct prime_power {
    std::uint64_t p;
    unsigned n;
    std::uint64_t q;

    // q = p^n with p verified prime.
    prime_power(std::uint64_t p_, unsigned n_) : p(p_), n(n_), q(1)
    {
        if (!is_prime(p_)) {
            throw std::invalid_argument("prime_power: " + std::to_string(p_) + " is not prime");
        }
        if (n_ == 0) {
            throw std::invalid_argument("prime_power: exponent must be positive");
        }
        for (unsigned i = 0; i < n_; ++i) {
            if (q > std::uint64_t(-1) / p_) {
                throw out_of_range("prime_power: q overflows 64 bits");
            }
            q *= p_;
        }
    }

    // Recognizes q as p^n, if it is a prime power.
    static std::optional<prime_power> from_q(std::uint64_t q)
    {
        if (q < 2) {
            return std::nullopt;
        }
        std::uint64_t p = q;
        for (std::uint64_t d = 2; d <= q / d; ++d) {
            if (q % d == 0) {
                p = d;
                break;
            }
        }
        unsigned n = 0;
        for (auto t = q; t > 1; t /= p) {
            if (t % p) {
                return std::nullopt;
            }
            ++n;
        }
        return prime_power(p, n);
    }

    friend bool operator==(const prime_power &, const prime_power &) = default;
};

struct fq_verdict {
    bool linear = false;
    // Order of the prime scalar field and the dimension, present iff linear.
    std::optional<std::uint64_t> scalar_order;
    std::optional<unsigned> dim;

    static fq_verdict no()
    {
        return {};
    }
    static fq_verdict yes(std::uint64_t order, unsigned d)
    {
        return {true, order, d};
    }

    friend bool operator==(const fq_verdict &, const fq_verdict &) = default;
};

// The trivial group is a space of dimension 0 over any field; F_2 is reported.
inline constexpr std::uint64_t trivial_scalar_order = 2;

inline fq_verdict theorem1_verdict(const prime_power &pp)
{
    if (pp.q == 2) {
        return fq_verdict::yes(trivial_scalar_order, 0);
    }
    if (pp.q == 3) {
        return fq_verdict::yes(2, 1);
    }
    if (mersenne_exponent(pp.q - 1)) {
        return fq_verdict::yes(pp.q - 1, 1);
    }
    return fq_verdict::no();
}

inline constexpr std::uint64_t default_oracle_bound = std::uint64_t(1) << 20;

// Additive order of g in Z/n.
constexpr std::uint64_t additive_order(std::uint64_t g, std::uint64_t n) noexcept
{
    std::uint64_t k = 1, acc = g % n;
    while (acc != 0) {
        acc = (acc + g) % n;
        ++k;
    }
    return k;
}

// Element of Z/(q-1) whose order does not divide the smallest prime p' | q-1.
// Its existence is exactly the failure of Z/(q-1) = (Z/p')^m.
inline std::optional<std::uint64_t> elementary_abelian_witness(std::uint64_t q)
{
    const auto order = q - 1;
    if (order <= 1) {
        return std::nullopt;
    }
    std::uint64_t p = order;
    for (std::uint64_t d = 2; d <= order / d; ++d) {
        if (order % d == 0) {
            p = d;
            break;
        }
    }
    for (std::uint64_t g = 1; g < order; ++g) {
        if ((static_cast<unsigned __int128>(p) * g) % order != 0) {
            return g;
        }
    }
    return std::nullopt;
}

// Checks Z/(q-1) = (Z/p')^m element by element, without using the closed form.
inline fq_verdict elementary_abelian_oracle(const prime_power &pp, std::uint64_t bound = default_oracle_bound)
{
    if (pp.q > bound) {
        throw out_of_range("elementary_abelian_oracle: q = " + std::to_string(pp.q) + " exceeds the scan bound " + std::to_string(bound));
    }
    const auto order = pp.q - 1;
    if (order == 1) {
        return fq_verdict::yes(trivial_scalar_order, 0);
    }
    if (elementary_abelian_witness(pp.q)) {
        return fq_verdict::no();
    }
    // Every element is killed by p', so the group is (Z/p')^m with p'^m = q - 1.
    std::uint64_t p = order;
    for (std::uint64_t d = 2; d <= order / d; ++d) {
        if (order % d == 0) {
            p = d;
            break;
        }
    }
    unsigned m = 0;
    for (auto t = order; t > 1; t /= p) {
        ++m;
    }
    return fq_verdict::yes(p, m);
}

struct scan_row {
    prime_power q;
    fq_verdict theorem;
    std::optional<fq_verdict> oracle;
};

// All prime powers q <= q_max in increasing order, with the closed-form
// verdict and, if requested, the oracle verdict.
inline std::vector<scan_row> prime_power_scan(std::uint64_t q_max, bool with_oracle = true,
                                              std::uint64_t oracle_bound = default_oracle_bound)
{
    if (q_max < 2) {
        throw out_of_range("prime_power_scan: q_max must be at least 2");
    }
    if (with_oracle && q_max > oracle_bound) {
        throw out_of_range("prime_power_scan: q_max = " + std::to_string(q_max) + " exceeds the oracle bound "
                           + std::to_string(oracle_bound));
    }
    // Smallest prime factor sieve.
    std::vector<std::uint32_t> spf(q_max + 1, 0);
    for (std::uint64_t i = 2; i <= q_max; ++i) {
        if (spf[i] == 0) {
            for (std::uint64_t j = i; j <= q_max; j += i) {
                if (spf[j] == 0) {
                    spf[j] = static_cast<std::uint32_t>(i);
                }
            }
        }
    }
    std::vector<scan_row> rows;
    for (std::uint64_t q = 2; q <= q_max; ++q) {
        const std::uint64_t p = spf[q];
        unsigned n = 0;
        auto t = q;
        while (t % p == 0) {
            t /= p;
            ++n;
        }
        if (t != 1) {
            continue;
        }
        prime_power pp(p, n);
        auto th = theorem1_verdict(pp);
        std::optional<fq_verdict> orc;
        if (with_oracle) {
            orc = elementary_abelian_oracle(pp, oracle_bound);
        }
        rows.push_back(scan_row{pp, th, orc});
    }
    return rows;
}

} // namespace qlinear

#endif
