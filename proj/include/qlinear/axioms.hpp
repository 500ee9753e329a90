#ifndef QLINEAR_AXIOMS_HPP
#define QLINEAR_AXIOMS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <qlinear/error.hpp>
#include <qlinear/puiseux.hpp>
#include <qlinear/rational.hpp>
#include <qlinear/text.hpp>

// Seeded randomized checks of the Q-vector-space structure of L0^x and of the
// torsion-freeness and root bijectivity of R^x. Every comparison is exact on
// canonical truncated forms; there is no statistical tolerance.

namespace qlinear
{

struct axiom_outcome {
    explicit axiom_outcome(std::string n) : name(std::move(n)) {}

    std::string name;
    std::size_t checked = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;
    // First failure, rendered in the element text format with seed and sample index.
    std::optional<std::string> counterexample;

    bool passed() const noexcept
    {
        return failed == 0;
    }
};

struct axiom_report {
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    rational aprec;
    std::vector<axiom_outcome> results;

    std::size_t failures() const noexcept
    {
        std::size_t n = 0;
        for (const auto &r : results) {
            n += r.failed;
        }
        return n;
    }
    bool passed() const noexcept
    {
        return failures() == 0;
    }
    const axiom_outcome *find(const std::string &name) const noexcept
    {
        for (const auto &r : results) {
            if (r.name == name) {
                return &r;
            }
        }
        return nullptr;
    }
};

// The group operations the harness exercises. Swapping one out is how the
// fault-injection tests plant a bug.
struct group_ops {
    std::function<puiseux_unit(const puiseux_unit &, const puiseux_unit &, const context &)> unit_mul
        = [](const puiseux_unit &u, const puiseux_unit &v, const context &ctx) { return qlinear::unit_mul(u, v, ctx); };
    std::function<puiseux_unit(const puiseux_unit &, std::uint64_t, const context &)> unit_root
        = [](const puiseux_unit &u, std::uint64_t k, const context &ctx) { return qlinear::unit_root(u, k, ctx); };
    std::function<std::pair<rational, puiseux_unit>(const raw_series &, const context &)> decompose
        = [](const raw_series &s, const context &ctx) { return qlinear::decompose(s, ctx); };
};

// Per-sample generator seeded from (seed, index), so reports do not depend on
// evaluation order.
inline std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

inline constexpr std::array<std::uint64_t, 7> sample_grids{1, 2, 3, 4, 6, 8, 12};

// Fair coin per coefficient on a random grid, constant term 1.
inline puiseux_unit random_unit(std::mt19937_64 &rng, const rational &aprec, const context &ctx = {})
{
    if (aprec <= 0) {
        throw out_of_range("random_unit: precision must be positive");
    }
    std::uniform_int_distribution<std::size_t> pick(0, sample_grids.size() - 1);
    const auto grid = std::lcm(sample_grids[pick(rng)], to_uint64(den(aprec)));
    const auto prec = static_cast<std::size_t>(to_uint64(num(aprec * grid)));
    auto body = f2_series::one(prec);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t j = 1; j < prec; ++j) {
        if (coin(rng)) {
            body.set_coeff(j, true);
        }
    }
    return puiseux_unit(grid, std::move(body), ctx);
}

inline rational random_rational(std::mt19937_64 &rng, std::int64_t bound)
{
    std::uniform_int_distribution<std::int64_t> n(-bound, bound), d(1, bound);
    const auto a = n(rng);
    const auto b = d(rng);
    return make_rational(a, b);
}

inline l0_element random_element(std::mt19937_64 &rng, const rational &aprec, const context &ctx = {})
{
    auto val = random_rational(rng, 12);
    return l0_element{std::move(val), random_unit(rng, aprec, ctx)};
}

struct axiom_sample {
    rational r;
    rational s;
    l0_element a;
    l0_element b;
};

namespace detail
{

// Scalar action computed through the (possibly faulty) operation table.
inline l0_element scalar_via(const group_ops &ops, const rational &r, const l0_element &a, const context &ctx)
{
    return l0_element{r * a.val, ops.unit_root(unit_pow(a.unit, to_int64(num(r))), to_uint64(den(r)), ctx)};
}

inline l0_element mul_via(const group_ops &ops, const l0_element &a, const l0_element &b, const context &ctx)
{
    return l0_element{a.val + b.val, ops.unit_mul(a.unit, b.unit, ctx)};
}

inline std::string describe(const axiom_sample &x)
{
    return "r = " + to_string(x.r) + ", s = " + to_string(x.s) + ", a = " + format_element(x.a) + ", b = " + format_element(x.b);
}

// Runs one law; overflow of the denominator cap is a skip.
template <typename Law>
void run_law(axiom_outcome &out, Law &&law, const std::string &where)
{
    try {
        ++out.checked;
        if (!law()) {
            ++out.failed;
            if (!out.counterexample) {
                out.counterexample = where;
            }
        }
    } catch (const denominator_overflow &) {
        --out.checked;
        ++out.skipped;
    }
}

} // namespace detail

inline const std::array<std::string, 6> vector_space_laws{"scalar-sum",      "distributivity", "scalar-product",
                                                          "identity-scalar", "zero-scalar",    "decompose-homomorphism"};

// The five vector-space laws for the action r.a = a^r on L0^x, plus the
// homomorphism law decompose(ab) = decompose(a) (+) decompose(b), checked
// on the supplied samples.
inline axiom_report check_vector_space_axioms_on(const std::vector<axiom_sample> &samples, std::uint64_t seed, const rational &aprec,
                                                 const context &ctx = {}, const group_ops &ops = {})
{
    axiom_report rep;
    rep.seed = seed;
    rep.samples = samples.size();
    rep.aprec = aprec;
    for (const auto &name : vector_space_laws) {
        rep.results.push_back(axiom_outcome{name});
    }
    const rational one(1), zero(0);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto &x = samples[i];
        const auto where = "seed " + std::to_string(seed) + ", sample " + std::to_string(i) + ": " + detail::describe(x);
        const auto smul = [&](const rational &r, const l0_element &a) { return detail::scalar_via(ops, r, a, ctx); };
        const auto mul = [&](const l0_element &a, const l0_element &b) { return detail::mul_via(ops, a, b, ctx); };

        detail::run_law(
            rep.results[0], [&] { return agree(smul(x.r + x.s, x.a), mul(smul(x.r, x.a), smul(x.s, x.a))); }, where);
        detail::run_law(
            rep.results[1], [&] { return agree(smul(x.r, mul(x.a, x.b)), mul(smul(x.r, x.a), smul(x.r, x.b))); }, where);
        detail::run_law(
            rep.results[2], [&] { return agree(smul(x.r * x.s, x.a), smul(x.r, smul(x.s, x.a))); }, where);
        detail::run_law(
            rep.results[3], [&] { return agree(smul(one, x.a), x.a); }, where);
        detail::run_law(
            rep.results[4], [&] { return agree(smul(zero, x.a), l0_element{zero, puiseux_unit::one(x.a.unit.aprec())}); }, where);
        detail::run_law(
            rep.results[5],
            [&] {
                const auto ra = to_raw(x.a), rb = to_raw(x.b);
                const auto [va, ua] = ops.decompose(ra, ctx);
                const auto [vb, ub] = ops.decompose(rb, ctx);
                const auto [vab, uab] = ops.decompose(raw_mul(ra, rb, ctx), ctx);
                return va == x.a.val && ua == x.a.unit && vb == x.b.val && ub == x.b.unit && vab == va + vb
                       && agree(uab, ops.unit_mul(ua, ub, ctx));
            },
            where);
    }
    return rep;
}

inline axiom_report check_vector_space_axioms(std::size_t samples, const rational &aprec, std::uint64_t seed, std::int64_t scalar_bound,
                                              const context &ctx = {}, const group_ops &ops = {})
{
    if (samples < 1) {
        throw out_of_range("check_vector_space_axioms: need at least one sample");
    }
    if (scalar_bound < 1) {
        throw out_of_range("check_vector_space_axioms: scalar bound must be positive");
    }
    std::vector<axiom_sample> xs;
    xs.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        auto rng = sample_rng(seed, i);
        auto r = random_rational(rng, scalar_bound);
        auto s = random_rational(rng, scalar_bound);
        auto a = random_element(rng, aprec, ctx);
        auto b = random_element(rng, aprec, ctx);
        xs.push_back(axiom_sample{std::move(r), std::move(s), std::move(a), std::move(b)});
    }
    return check_vector_space_axioms_on(xs, seed, aprec, ctx, ops);
}

// Least n in [1, n_max] with u^n indistinguishable from 1, if any. The
// identity itself is not a valid input.
inline std::optional<std::int64_t> torsion_witness(const puiseux_unit &u, std::int64_t n_max)
{
    if (u.is_one()) {
        throw std::invalid_argument("torsion_witness: the identity is not a nontrivial sample");
    }
    for (std::int64_t n = 1; n <= n_max; ++n) {
        if (unit_pow(u, n).is_one()) {
            return n;
        }
    }
    return std::nullopt;
}

inline axiom_report check_torsion_free(std::size_t samples, std::int64_t n_max, const rational &aprec, std::uint64_t seed,
                                       const context &ctx = {})
{
    if (n_max < 2) {
        throw out_of_range("check_torsion_free: n_max must be at least 2");
    }
    axiom_report rep;
    rep.seed = seed;
    rep.samples = samples;
    rep.aprec = aprec;
    rep.results.push_back(axiom_outcome{"torsion-free"});
    auto &out = rep.results.back();
    for (std::size_t i = 0; i < samples; ++i) {
        auto rng = sample_rng(seed, i);
        auto u = random_unit(rng, aprec, ctx);
        // Samples indistinguishable from 1 cannot certify anything; redraw.
        while (u.is_one()) {
            u = random_unit(rng, aprec, ctx);
        }
        ++out.checked;
        if (const auto n = torsion_witness(u, n_max)) {
            ++out.failed;
            if (!out.counterexample) {
                out.counterexample = "seed " + std::to_string(seed) + ", sample " + std::to_string(i) + ": u = " + format_unit(u)
                                     + ", u^" + std::to_string(*n) + " = 1";
            }
        }
    }
    return rep;
}

inline axiom_report check_root_bijectivity(std::size_t samples, std::uint64_t k_max, const rational &aprec, std::uint64_t seed,
                                           const context &ctx = {})
{
    if (k_max < 2) {
        throw out_of_range("check_root_bijectivity: k_max must be at least 2");
    }
    axiom_report rep;
    rep.seed = seed;
    rep.samples = samples;
    rep.aprec = aprec;
    rep.results = {axiom_outcome{"root-of-power"}, axiom_outcome{"power-of-root"}, axiom_outcome{"power-homomorphism"}};
    for (std::size_t i = 0; i < samples; ++i) {
        auto rng = sample_rng(seed, i);
        const auto u = random_unit(rng, aprec, ctx);
        const auto v = random_unit(rng, aprec, ctx);
        for (std::uint64_t k = 1; k <= k_max; ++k) {
            const auto e = static_cast<std::int64_t>(k);
            const auto where = "seed " + std::to_string(seed) + ", sample " + std::to_string(i) + ", k = " + std::to_string(k)
                               + ": u = " + format_unit(u) + ", v = " + format_unit(v);
            detail::run_law(
                rep.results[0], [&] { return agree(unit_root(unit_pow(u, e), k, ctx), u); }, where);
            detail::run_law(
                rep.results[1], [&] { return agree(unit_pow(unit_root(u, k, ctx), e), u); }, where);
            detail::run_law(
                rep.results[2], [&] { return agree(unit_pow(unit_mul(u, v, ctx), e), unit_mul(unit_pow(u, e), unit_pow(v, e), ctx)); },
                where);
        }
    }
    return rep;
}

} // namespace qlinear

#endif
