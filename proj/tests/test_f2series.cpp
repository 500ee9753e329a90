#include <cstdint>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <qlinear/f2series.hpp>

#include "oracles.hpp"

using namespace qlinear;

namespace
{

f2_series S(std::initializer_list<std::size_t> exps, std::size_t prec)
{
    return f2_series::from_exponents(exps, prec);
}

} // namespace

TEST(f2_series, construction)
{
    EXPECT_THROW(f2_series(0), out_of_range);
    const auto a = S({0, 3, 70, 200}, 100);
    EXPECT_EQ(a.prec(), 100u);
    EXPECT_EQ(a.support(), (std::vector<std::size_t>{0, 3, 70}));
    EXPECT_EQ(a.valuation(), 0u);
    EXPECT_EQ(a.degree(), 70u);
    EXPECT_TRUE(a.is_unit());
    EXPECT_FALSE(f2_series(5).valuation());
    // Storage beyond prec is canonical zero.
    const f2_series w(3, {0xFFu});
    EXPECT_EQ(w, S({0, 1, 2}, 3));
    EXPECT_THROW(f2_series(4).set_coeff(4, true), out_of_range);
}

TEST(f2_series, equality_and_agreement)
{
    EXPECT_NE(S({0, 1}, 4), S({0, 1}, 5));
    EXPECT_TRUE(agree(S({0, 1}, 4), S({0, 1, 4}, 8)));
    EXPECT_FALSE(agree(S({0, 1}, 4), S({0, 1, 3}, 8)));
}

TEST(f2_series, add)
{
    EXPECT_EQ(S({0, 1}, 4) + S({0, 1}, 4), f2_series(4));
    EXPECT_EQ(S({0, 1}, 4) + S({1, 2}, 4), S({0, 2}, 4));
    EXPECT_EQ(S({0}, 8) + S({1}, 3), S({0, 1}, 3));
}

TEST(f2_series, mul_examples)
{
    EXPECT_EQ(S({0, 1}, 4) * S({0, 1}, 4), S({0, 2}, 4));
    // (1+t)(1+t+t^2) = 1 + t^3, by the schoolbook oracle.
    const auto expect = oracle::schoolbook_mul(oracle::to_bits(S({0, 1}, 4)), oracle::to_bits(S({0, 1, 2}, 4)));
    EXPECT_EQ(oracle::from_bits(expect), S({0, 3}, 4));
    EXPECT_EQ(S({0, 1}, 4) * S({0, 1, 2}, 4), S({0, 3}, 4));

    std::mt19937_64 rng(1);
    const auto a = oracle::random_series(rng, 300, false);
    EXPECT_EQ(f2_series::one(300) * a, a);
}

TEST(f2_series, mul_matches_schoolbook)
{
    std::mt19937_64 rng(2);
    // Sizes straddle word boundaries and the Karatsuba threshold, including
    // unequal precisions.
    for (std::size_t pa : {1u, 63u, 64u, 65u, 700u, 1030u, 2100u}) {
        for (std::size_t pb : {1u, 64u, 129u, 1100u, 2100u}) {
            const auto a = oracle::random_series(rng, pa, false);
            const auto b = oracle::random_series(rng, pb, false);
            const auto want = oracle::schoolbook_mul(oracle::to_bits(a), oracle::to_bits(b));
            EXPECT_EQ(a * b, oracle::from_bits(want)) << pa << "x" << pb;
        }
    }
}

TEST(f2_series, ring_axioms)
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        const std::size_t p = 1 + rng() % 256;
        const auto a = oracle::random_series(rng, p, false);
        const auto b = oracle::random_series(rng, p, false);
        const auto c = oracle::random_series(rng, p, false);
        EXPECT_EQ(a + a, f2_series(p));
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        // Frobenius is additive.
        EXPECT_EQ(pow_int(a + b, 2), pow_int(a, 2) + pow_int(b, 2));
    }
}

TEST(f2_series, inv)
{
    EXPECT_EQ(inv(f2_series::one(7)), f2_series::one(7));
    EXPECT_EQ(inv(S({0, 1}, 5)), S({0, 1, 2, 3, 4}, 5));
    // Checked by multiplying back: (1+t+t^2)(1+t+t^3) = 1 mod t^4.
    EXPECT_EQ(oracle::from_bits(oracle::schoolbook_mul(oracle::to_bits(S({0, 1, 2}, 4)), oracle::to_bits(S({0, 1, 3}, 4)))),
              f2_series::one(4));
    EXPECT_EQ(inv(S({0, 1, 2}, 4)), S({0, 1, 3}, 4));
    EXPECT_THROW(inv(S({1}, 4)), not_a_unit);

    std::mt19937_64 rng(4);
    for (int i = 0; i < 40; ++i) {
        const auto a = oracle::random_series(rng, 1 + rng() % 3000, true);
        EXPECT_EQ(a * inv(a), f2_series::one(a.prec()));
    }
}

TEST(f2_series, sqrt)
{
    EXPECT_EQ(sqrt(S({0, 2}, 5)), S({0, 1}, 3));
    const auto r = sqrt(S({0, 2, 4}, 6));
    EXPECT_EQ(r, S({0, 1, 2}, 3));
    EXPECT_TRUE(agree(oracle::from_bits(oracle::naive_pow(oracle::to_bits(r), 2)), S({0, 2, 4}, 6)));
    EXPECT_THROW(sqrt(S({0, 1}, 4)), odd_support);
}

TEST(f2_series, pow_int)
{
    std::mt19937_64 rng(5);
    const auto a = oracle::random_series(rng, 40, false);
    EXPECT_EQ(pow_int(a, 0), f2_series::one(40));
    EXPECT_EQ(pow_int(S({0, 1}, 4), 2), S({0, 2}, 4));
    // C(5, j) mod 2 is 1 for j = 0, 1, 4, 5.
    EXPECT_EQ(pow_int(S({0, 1}, 6), 5), S({0, 1, 4, 5}, 6));
    for (std::uint64_t e : {1u, 3u, 6u, 17u, 33u}) {
        EXPECT_EQ(pow_int(a, e), oracle::from_bits(oracle::naive_pow(oracle::to_bits(a), e))) << e;
    }
}

TEST(f2_series, kth_root_odd_examples)
{
    std::mt19937_64 rng(6);
    const auto a = oracle::random_series(rng, 50, true);
    EXPECT_EQ(kth_root_odd(a, 1), a);

    const auto c = kth_root_odd(S({0, 1}, 3), 3);
    EXPECT_EQ(c, S({0, 1, 2}, 3));
    EXPECT_EQ(oracle::from_bits(oracle::naive_pow(oracle::to_bits(c), 3)), S({0, 1}, 3));

    const auto f = kth_root_odd(S({0, 1}, 3), 5);
    EXPECT_EQ(f, S({0, 1}, 3));
    EXPECT_EQ(oracle::from_bits(oracle::naive_pow(oracle::to_bits(f), 5)), S({0, 1}, 3));

    EXPECT_THROW(kth_root_odd(S({0, 1}, 3), 4), even_root);
    EXPECT_THROW(kth_root_odd(S({0, 1}, 3), 0), even_root);
    EXPECT_THROW(kth_root_odd(S({1}, 3), 3), not_a_unit);
}

TEST(f2_series, kth_root_odd_round_trips)
{
    std::mt19937_64 rng(7);
    for (std::uint64_t k = 3; k <= 49; k += 2) {
        const auto b = oracle::random_series(rng, 1 + rng() % 400, true);
        EXPECT_EQ(kth_root_odd(pow_int(b, k), k), b) << k;
        const auto a = oracle::random_series(rng, 1 + rng() % 400, true);
        EXPECT_EQ(pow_int(kth_root_odd(a, k), k), a) << k;
    }
}

TEST(f2_series, newton_matches_linear_lifting)
{
    std::mt19937_64 rng(8);
    for (int i = 0; i < 20; ++i) {
        const std::uint64_t k = 2 * (rng() % 25) + 1;
        const auto a = oracle::random_series(rng, 1 + rng() % 200, true);
        EXPECT_EQ(kth_root_odd(a, k), oracle::linear_lift_root(a, k)) << k;
    }
}

TEST(f2_series, spread_and_contract)
{
    const auto a = S({0, 1, 3}, 5);
    const auto s = spread(a, 3);
    EXPECT_EQ(s, S({0, 3, 9}, 15));
    EXPECT_EQ(contract(s, 3), a);
    // spread by 2 is the Frobenius, certified to twice the precision.
    EXPECT_TRUE(agree(spread(a, 2), pow_int(a, 2)));
    EXPECT_EQ(spread(a, 2).prec(), 10u);
}
