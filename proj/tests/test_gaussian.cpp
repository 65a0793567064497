#include "octet/errors.hpp"
#include "octet/gaussian.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace octet;

TEST(gaussian, arithmetic) {
    const gaussian a{2, 1}, b{1, -3};
    EXPECT_EQ(a * b, (gaussian{5, -5}));
    EXPECT_EQ(a + b, (gaussian{3, -2}));
    EXPECT_EQ(conj(a), (gaussian{2, -1}));
    EXPECT_EQ(norm(a), 5);
    EXPECT_TRUE(is_unit({0, -1}));
    EXPECT_FALSE(is_unit({1, 1}));
}

TEST(gaussian, canonical_associate_is_first_quadrant) {
    for (gaussian u : {gaussian{1, 0}, gaussian{0, 1}, gaussian{-1, 0}, gaussian{0, -1}}) {
        const gaussian c = canonical_associate(u * gaussian{3, 2});
        EXPECT_EQ(c, (gaussian{3, 2}));
    }
    EXPECT_EQ(canonical_associate({0, 0}), (gaussian{0, 0}));
    EXPECT_EQ(canonical_associate({0, 5}), (gaussian{5, 0}));
}

TEST(gaussian, gcd_of_known_factorisations) {
    // 5 = (2+i)(2-i), 13 = (3+2i)(3-2i)
    EXPECT_EQ(gaussian_gcd({5, 0}, {2, 1}), (gaussian{2, 1}));
    EXPECT_EQ(gaussian_gcd(gaussian{2, 1} * gaussian{3, 2}, gaussian{2, 1} * gaussian{3, -2}), (gaussian{2, 1}));
    EXPECT_TRUE(is_unit(gaussian_gcd({3, 0}, {2, 1})));
    EXPECT_EQ(gaussian_gcd({0, 0}, {0, 7}), (gaussian{7, 0}));
    EXPECT_THROW(gaussian_gcd({0, 0}, {0, 0}), invalid_input);
}

TEST(gaussian, xgcd_bezout_identity) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> d(-500, 500);
    for (int i = 0; i < 2000; ++i) {
        const gaussian a{d(rng), d(rng)}, b{d(rng), d(rng)};
        if (a.is_zero() && b.is_zero()) continue;
        const auto r = gaussian_xgcd(a, b);
        EXPECT_EQ(r.s * a + r.t * b, r.g);
        EXPECT_EQ(canonical_associate(r.g), gaussian_gcd(a, b));
        EXPECT_TRUE(exact_div(a, r.g).has_value());
        EXPECT_TRUE(exact_div(b, r.g).has_value());
    }
}

TEST(gaussian, division) {
    EXPECT_EQ(*exact_div({5, 0}, {2, 1}), (gaussian{2, -1}));
    EXPECT_FALSE(exact_div({3, 0}, {2, 1}));
    const gaussian a{17, -4}, b{3, 5};
    const gaussian r = a - round_div(a, b) * b;
    EXPECT_LE(2 * norm(r), norm(b));
}
