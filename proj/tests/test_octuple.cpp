#include "octet/errors.hpp"
#include "octet/octuple.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace octet;

namespace {

octuple random_word_image(const octuple& v, std::mt19937& rng, int max_len) {
    octuple u = v;
    const int len = static_cast<int>(rng() % static_cast<unsigned>(max_len + 1));
    for (int k = 0; k < len; ++k) u = apply_generator(static_cast<generator>(rng() % 5), u);
    return u;
}

}  // namespace

TEST(octuple, curvature_quadratic) {
    EXPECT_TRUE(satisfies_quadratic({0, 0, 1, 1, 1}));
    EXPECT_TRUE(satisfies_quadratic({2, 0, 1, 1, 3}));
    EXPECT_FALSE(satisfies_quadratic({1, 1, 1, 1, 1}));
    EXPECT_EQ(curvature_quadratic({1, 1, 1, 1, 1}), -2);
}

TEST(octuple, eight_curvatures) {
    const auto c = curvatures({0, 0, 1, 1, 1});
    const std::array<std::int64_t, 8> want{0, 0, 1, 1, 2, 2, 1, 1};
    EXPECT_EQ(c, want);
}

TEST(octuple, generators_are_involutions_and_preserve_quadratic) {
    const octuple v{-2, 4, 5, 5, 5};
    for (int g = 0; g < 5; ++g) {
        const auto gen = static_cast<generator>(g);
        EXPECT_EQ(apply_generator(gen, apply_generator(gen, v)), v);
        EXPECT_TRUE(satisfies_quadratic(apply_generator(gen, v)));
    }
    EXPECT_EQ(apply_generator(generator::A5, {0, 0, 1, 1, 1}), (octuple{0, 0, 1, 1, 1}));
    EXPECT_EQ(apply_generator(generator::A1, {0, 0, 1, 1, 1}), (octuple{2, 0, 1, 1, 1}));
}

TEST(octuple, solve_omega) {
    const auto r = solve_omega(0, 0, 1, 1);
    ASSERT_TRUE(r.is_rational);
    EXPECT_EQ(r.lo, make_rational(1));
    EXPECT_EQ(r.hi, make_rational(1));
    const auto s = solve_omega(2, 0, 1, 1);
    ASSERT_TRUE(s.is_rational);
    EXPECT_EQ(s.lo, make_rational(1));
    EXPECT_EQ(s.hi, make_rational(3));
    const auto t = solve_omega(1, 1, 1, 2);
    EXPECT_FALSE(t.is_rational);
    EXPECT_NEAR(t.lo_approx + t.hi_approx, 5.0, 1e-12);
    EXPECT_THROW(solve_omega(5, 0, 0, 0), invalid_input);
}

TEST(octuple, reduce_to_root_examples) {
    EXPECT_EQ(reduce_to_root({2, 0, 1, 1, 3}), (octuple{0, 0, 1, 1, 1}));
    EXPECT_EQ(reduce_to_root({0, 0, 1, 1, 1}), (octuple{0, 0, 1, 1, 1}));
    EXPECT_EQ(reduce_to_root({2, 1, 0, 1, 1}), (octuple{0, 0, 1, 1, 1}));
    EXPECT_TRUE(is_root({0, 0, 1, 1, 1}));
    EXPECT_FALSE(is_root({2, 0, 1, 1, 3}));
    EXPECT_THROW(reduce_to_root({1, 1, 1, 1, 1}), invalid_input);
}

TEST(octuple, random_words_reduce_back) {
    std::mt19937 rng(1);
    for (const octuple root : {octuple{0, 0, 1, 1, 1}, octuple{-1, 2, 2, 3, 3}, octuple{-3, 5, 8, 8, 9}}) {
        ASSERT_TRUE(is_root(root));
        for (int i = 0; i < 300; ++i) {
            const octuple v = random_word_image(root, rng, 20);
            std::size_t steps = 0;
            EXPECT_EQ(reduce_to_root(v, &steps), root);
            EXPECT_LE(steps, 60u);
        }
    }
}

TEST(octuple, seed_normalisation) {
    const seed_vector s = normalize_seed({0, 0, 1, 1, 1});
    EXPECT_EQ(s, (seed_vector{2, 1, 0, 1, 1}));
    const seed_vector t = normalize_seed({-1, 2, 2, 3, 3});
    EXPECT_EQ(t.a0 % 2, 0);
    EXPECT_NE(t.a0, 0);
    EXPECT_NE(t.b0 % 2, 0);
    EXPECT_GT(t.a0 + t.b0, 0);
    EXPECT_TRUE(satisfies_quadratic(t.as_octuple()));
    EXPECT_EQ(reduce_to_root(t.as_octuple()), (octuple{-1, 2, 2, 3, 3}));
}

TEST(octuple, parity_laws_hold_on_orbits) {
    std::mt19937 rng(2);
    for (const octuple root : {octuple{0, 0, 1, 1, 1}, octuple{-2, 4, 5, 5, 5}, octuple{-4, 7, 10, 11, 11}}) {
        const int residue = check_parity(root).odd_residue;
        for (int i = 0; i < 300; ++i) {
            const octuple v = random_word_image(root, rng, 15);
            const auto p = check_parity(v);
            EXPECT_TRUE(p.omega_odd);
            EXPECT_EQ(p.odd_residue, residue);
            EXPECT_EQ(content(v), content(root));
        }
    }
}

TEST(octuple, parity_tripwire_fires) {
    EXPECT_THROW(check_parity({1, 1, 1, 1, 1}), invariant_violation);
    EXPECT_THROW(check_parity({0, 0, 1, 1, 2}), invariant_violation);
    EXPECT_THROW(check_parity({0, 0, 1, 3, 1}), invariant_violation);
}

TEST(octuple, validation) {
    EXPECT_NO_THROW(validate_octuple({0, 0, 1, 1, 1}));
    EXPECT_THROW(validate_octuple({1, 1, 1, 1, 1}), invalid_input);
    EXPECT_EQ(content({0, 0, 2, 2, 2}), 2);
    EXPECT_FALSE(is_primitive({0, 0, 2, 2, 2}));
}
