#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <qlinear/axioms.hpp>
#include <qlinear/puiseux.hpp>

#include "oracles.hpp"

using namespace qlinear;

namespace
{

rational Q(std::int64_t n, std::int64_t d = 1)
{
    return make_rational(n, d);
}

// 1 + sum x^e + O(x^aprec).
puiseux_unit U(std::vector<rational> exps, rational aprec)
{
    return puiseux_unit::from_exponents(exps, aprec);
}

} // namespace

TEST(puiseux, normalize)
{
    // Support and precision on the integer grid.
    const auto a = normalize(2, f2_series::from_exponents({0, 2}, 4));
    EXPECT_EQ(a.den(), 1u);
    EXPECT_EQ(a.body(), f2_series::from_exponents({0, 1}, 2));

    const auto b = normalize(2, f2_series::from_exponents({0, 1}, 4));
    EXPECT_EQ(b.den(), 2u);
    EXPECT_EQ(b.body(), f2_series::from_exponents({0, 1}, 4));

    // gcd of the support indices, precision and den is 2.
    const auto c = normalize(6, f2_series::from_exponents({0, 2, 4}, 6));
    EXPECT_EQ(c.den(), 3u);
    EXPECT_EQ(c.body(), f2_series::from_exponents({0, 1, 2}, 3));
    EXPECT_EQ(normalize(c.den(), c.body()), c);

    // An odd precision index keeps the finer grid.
    EXPECT_EQ(normalize(2, f2_series::from_exponents({0, 2}, 5)).den(), 2u);

    EXPECT_THROW(normalize(2, f2_series::from_exponents({1}, 4)), not_a_unit);
    EXPECT_THROW(normalize(3, f2_series::one(4), context{2}), denominator_overflow);
}

TEST(puiseux, tower_compatibility)
{
    // Re-gridding 1/n -> 1/(mn) and normalizing is the identity.
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        const auto u = random_unit(rng, Q(10));
        for (std::uint64_t m : {2u, 3u, 5u, 12u}) {
            EXPECT_EQ(normalize(u.den() * m, u.body_on_grid(u.den() * m)), u);
        }
    }
}

TEST(puiseux, unit_mul)
{
    // (1+x)(1+x^(1/2)) on grid 1/2: (1+s^2)(1+s) = 1+s+s^2+s^3.
    const auto p = unit_mul(U({Q(1)}, Q(4)), U({Q(1, 2)}, Q(4)));
    const auto expect = oracle::schoolbook_mul(oracle::to_bits(f2_series::from_exponents({0, 2}, 8)),
                                               oracle::to_bits(f2_series::from_exponents({0, 1}, 8)));
    EXPECT_EQ(p, normalize(2, oracle::from_bits(expect)));
    EXPECT_EQ(p, U({Q(1, 2), Q(1), Q(3, 2)}, Q(4)));

    std::mt19937_64 rng(12);
    for (int i = 0; i < 30; ++i) {
        const auto u = random_unit(rng, Q(16));
        EXPECT_EQ(unit_mul(u, puiseux_unit::one(Q(16))), u);
        EXPECT_TRUE(unit_mul(u, unit_inv(u)).is_one());
    }
    EXPECT_THROW(unit_mul(U({Q(1, 3)}, Q(1)), U({Q(1, 5)}, Q(1)), context{10}), denominator_overflow);
}

TEST(puiseux, unit_inv)
{
    EXPECT_EQ(unit_inv(puiseux_unit::one(Q(3))), puiseux_unit::one(Q(3)));
    EXPECT_EQ(unit_inv(U({Q(1, 2)}, Q(2))), U({Q(1, 2), Q(1), Q(3, 2)}, Q(2)));
    std::mt19937_64 rng(13);
    for (int i = 0; i < 30; ++i) {
        const auto u = random_unit(rng, Q(20));
        EXPECT_EQ(unit_inv(u).aprec(), u.aprec());
        EXPECT_TRUE(unit_mul(u, unit_inv(u)).is_one());
    }
}

TEST(puiseux, unit_sqrt)
{
    EXPECT_EQ(unit_sqrt(U({Q(1)}, Q(4))), U({Q(1, 2)}, Q(2)));
    EXPECT_TRUE(unit_sqrt(puiseux_unit::one(Q(4))).is_one());
    const auto r = unit_sqrt(U({Q(1, 2), Q(1)}, Q(2)));
    EXPECT_EQ(r.den(), 4u);
    EXPECT_EQ(r, U({Q(1, 4), Q(1, 2)}, Q(1)));
    EXPECT_EQ(unit_pow(r, 2), U({Q(1, 2), Q(1)}, Q(2)));
    EXPECT_THROW(unit_sqrt(U({Q(1, 3)}, Q(1)), context{5}), denominator_overflow);
}

TEST(puiseux, unit_root)
{
    std::mt19937_64 rng(14);
    const auto u = random_unit(rng, Q(8));
    EXPECT_EQ(unit_root(u, 1), u);

    const auto c = unit_root(U({Q(1)}, Q(3)), 3);
    EXPECT_EQ(c, U({Q(1), Q(2)}, Q(3)));
    EXPECT_EQ(unit_pow(c, 3), U({Q(1)}, Q(3)));

    // Square root of the cube root, precision halves once.
    const auto s = unit_root(U({Q(1)}, Q(3)), 6);
    EXPECT_EQ(s, U({Q(1, 2), Q(1)}, Q(3, 2)));
    EXPECT_TRUE(agree(unit_pow(s, 6), U({Q(1)}, Q(3))));

    EXPECT_THROW(unit_root(u, 0), std::invalid_argument);
    EXPECT_THROW(unit_root(U({Q(1, 3)}, Q(1)), 4, context{6}), denominator_overflow);
}

TEST(puiseux, unit_root_uniqueness)
{
    // Any perturbation of the root within precision stops being a k-th root.
    std::mt19937_64 rng(15);
    for (int i = 0; i < 20; ++i) {
        const auto u = random_unit(rng, Q(12));
        const std::uint64_t k = 1 + rng() % 12;
        const auto r = unit_root(u, k);
        EXPECT_TRUE(agree(unit_pow(r, static_cast<std::int64_t>(k)), u));
        auto body = r.body();
        const auto j = 1 + rng() % (body.prec() - 1);
        body.set_coeff(j, !body.coeff(j));
        const auto bad = normalize(r.den(), body);
        EXPECT_FALSE(agree(unit_pow(bad, static_cast<std::int64_t>(k)), u)) << "k = " << k << " j = " << j;
    }
}

TEST(puiseux, unit_pow)
{
    std::mt19937_64 rng(16);
    const auto u = random_unit(rng, Q(8));
    EXPECT_TRUE(unit_pow(u, 0).is_one());
    EXPECT_EQ(unit_pow(U({Q(1, 2)}, Q(2)), 2), U({Q(1)}, Q(4)));
    EXPECT_EQ(unit_pow(u, -1), unit_inv(u));
    EXPECT_TRUE(agree(unit_pow(u, -6), unit_inv(unit_pow(u, 6))));
    // Frobenius doubles precision; products lose none.
    EXPECT_EQ(unit_pow(u, 4).aprec(), u.aprec() * 4);
    EXPECT_TRUE(agree(unit_pow(u, 5), unit_mul(unit_mul(unit_pow(u, 2), unit_pow(u, 2)), u)));
}

TEST(puiseux, scalar_mul_unit)
{
    // Cubing the result gives (1+x)^2 = 1+x^2 mod x^3.
    const auto r = scalar_mul_unit(Q(2, 3), U({Q(1)}, Q(3)));
    EXPECT_TRUE(agree(r, U({Q(2)}, Q(3))));
    EXPECT_TRUE(agree(unit_pow(r, 3), U({Q(2)}, Q(3))));

    std::mt19937_64 rng(17);
    const auto u = random_unit(rng, Q(8));
    EXPECT_EQ(scalar_mul_unit(Q(1), u), u);
    EXPECT_TRUE(scalar_mul_unit(Q(0), u).is_one());
    EXPECT_EQ(scalar_mul_unit(Q(1, 2), U({Q(1)}, Q(4))), U({Q(1, 2)}, Q(2)));

    // Power then root equals root then power.
    for (int i = 0; i < 30; ++i) {
        const auto v = random_unit(rng, Q(8));
        const auto q = random_rational(rng, 9);
        const auto n = to_int64(num(q));
        const auto d = to_uint64(den(q));
        EXPECT_TRUE(agree(unit_root(unit_pow(v, n), d), unit_pow(unit_root(v, d), n)));
        EXPECT_EQ(unit_root(unit_pow(v, n), d).aprec(), unit_pow(unit_root(v, d), n).aprec());
    }
}

TEST(puiseux, element_ops)
{
    const auto one = puiseux_unit::one(Q(4));
    const auto e = element_mul(compose(Q(1, 2), one), compose(Q(1, 3), one));
    EXPECT_EQ(e.val, Q(5, 6));
    EXPECT_TRUE(e.unit.is_one());

    std::mt19937_64 rng(18);
    const auto a = random_element(rng, Q(10));
    const auto i = element_mul(a, element_inv(a));
    EXPECT_EQ(i.val, 0);
    EXPECT_TRUE(i.unit.is_one());

    const auto s = element_scalar_mul(Q(3, 2), compose(Q(1), one));
    EXPECT_EQ(s.val, Q(3, 2));
    EXPECT_TRUE(s.unit.is_one());
    const auto z = element_scalar_mul(Q(0), a);
    EXPECT_EQ(z.val, 0);
    EXPECT_TRUE(z.unit.is_one());

    const auto t = element_scalar_mul(Q(2, 3), compose(Q(1, 2), U({Q(1)}, Q(3))));
    EXPECT_EQ(t.val, Q(1, 3));
    EXPECT_TRUE(agree(t.unit, U({Q(2)}, Q(3))));

    const auto r = element_root(compose(Q(1), U({Q(1)}, Q(4))), 2);
    EXPECT_EQ(r, compose(Q(1, 2), U({Q(1, 2)}, Q(2))));
    EXPECT_EQ(element_pow(r, 2), compose(Q(1), U({Q(1)}, Q(4))));
}

TEST(puiseux, decompose_compose)
{
    const raw_series a({Q(-5, 3), Q(-4, 3)}, Q(1, 3));
    const auto [v, u] = decompose(a);
    EXPECT_EQ(v, Q(-5, 3));
    EXPECT_EQ(u, U({Q(1, 3)}, Q(2)));
    EXPECT_EQ(to_raw(compose(v, u)), a);

    const auto [v0, u0] = decompose(raw_series({Q(0)}, Q(3)));
    EXPECT_EQ(v0, 0);
    EXPECT_TRUE(u0.is_one());

    // Factor out x^(1/2); re-expanding gives back the input.
    const raw_series b({Q(1, 2), Q(1), Q(3, 2)}, Q(2));
    const auto [vb, ub] = decompose(b);
    EXPECT_EQ(vb, Q(1, 2));
    EXPECT_EQ(ub, U({Q(1, 2), Q(1)}, Q(3, 2)));
    EXPECT_EQ(to_raw(compose(vb, ub)), b);

    EXPECT_THROW(decompose(raw_series({}, Q(3))), indistinguishable);
    EXPECT_THROW(raw_series({Q(1), Q(1)}, Q(3)), std::invalid_argument);
    EXPECT_THROW(raw_series({Q(3)}, Q(3)), std::invalid_argument);
}

TEST(puiseux, decompose_is_homomorphism)
{
    std::mt19937_64 rng(19);
    for (int i = 0; i < 40; ++i) {
        const auto a = random_element(rng, Q(6));
        const auto b = random_element(rng, Q(6));
        const auto ra = to_raw(a), rb = to_raw(b);
        const auto prod = oracle::map_mul(ra, rb);
        EXPECT_EQ(raw_mul(ra, rb), prod);
        const auto [v, u] = decompose(prod);
        EXPECT_EQ(v, a.val + b.val);
        EXPECT_EQ(u, unit_mul(a.unit, b.unit));
        EXPECT_EQ(decompose_element(to_raw(a)), a);
    }
}
