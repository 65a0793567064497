#include "octet/errors.hpp"
#include "octet/local_global.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace octet;

namespace {

const octuple example_seed{2, 1, 0, 1, 1};

}  // namespace

TEST(local_global, admissibility_classes) {
    const auto cls = make_class({2, 1, 0, 1, 1});
    EXPECT_EQ(cls.residue, 1);
    EXPECT_EQ(cls.modulus, 2);
    EXPECT_EQ(is_admissible(5, cls), admissibility::admissible);
    EXPECT_EQ(is_admissible(3, cls), admissibility::inadmissible);
    EXPECT_EQ(is_admissible(6, cls), admissibility::unclassified);
}

TEST(local_global, example_report_is_consistent) {
    const auto r = verify_local_global(example_seed, 20000);
    EXPECT_EQ(r.inadmissible_found, 0u);
    EXPECT_EQ(r.found + r.missing.size(), r.admissible_total);
    EXPECT_TRUE(std::is_sorted(r.missing.begin(), r.missing.end()));
    if (!r.missing.empty()) {
        EXPECT_EQ(r.largest_missing, r.missing.back());
    } else {
        EXPECT_FALSE(r.largest_missing.has_value());
    }
    EXPECT_GE(static_cast<double>(r.curvatures_found) / 20000.0, r.density_lower_bound);
}

TEST(local_global, missing_lists_only_shrink) {
    for (const octuple root : {octuple{-1, 2, 2, 3, 3}, octuple{-3, 5, 8, 8, 9}}) {
        const auto small = verify_local_global(root, 4000);
        const auto large = verify_local_global(root, 8000);
        std::vector<std::int64_t> below;
        for (auto m : large.missing)
            if (m <= 4000) below.push_back(m);
        EXPECT_EQ(below, small.missing);
        EXPECT_EQ(large.inadmissible_found, 0u);
    }
}

TEST(local_global, inadmissible_values_are_counted) {
    const auto cls = make_class({2, 1, 0, 1, 1});
    curvature_table t(20, false);
    for (std::int64_t k : {1, 2, 3, 5}) t.insert(k);
    const auto r = make_exception_report(cls, t);
    EXPECT_EQ(r.inadmissible_found, 1u);
    EXPECT_EQ(r.admissible_total, 5u);  // 1, 5, 9, 13, 17
    EXPECT_EQ(r.found, 2u);
    EXPECT_EQ(r.missing, (std::vector<std::int64_t>{9, 13, 17}));
    EXPECT_EQ(r.unclassified_total, 10u);
    EXPECT_EQ(r.unclassified_found, 1u);
}

TEST(local_global, certificates_check_out) {
    const auto c1 = certify_representability(example_seed, 1);
    ASSERT_TRUE(c1.rep);
    EXPECT_EQ(c1.value, 3);
    EXPECT_EQ(*c1.rep, (std::array<std::int64_t, 4>{1, 0, 0, 0}));
    const auto c5 = certify_representability(example_seed, 5);
    ASSERT_TRUE(c5.rep);
    EXPECT_EQ(c5.value, 7);
    EXPECT_EQ(*c5.rep, (std::array<std::int64_t, 4>{1, 0, 1, 0}));
    const quad_form f = build_form({2, 1, 0, 1, 1});
    EXPECT_EQ(eval_form(f, 1, 0, 0, 0), 3);
    EXPECT_EQ(eval_form(f, 1, 0, 1, 0), 7);
    const auto table = enumerate_curvatures(example_seed, 2000);
    for (std::int64_t m = 1; m <= 2000; m += 4) {
        const auto c = certify_representability(example_seed, m);
        ASSERT_TRUE(c.rep) << m;
        const auto& r = *c.rep;
        EXPECT_EQ(eval_form(f, r[0], r[1], r[2], r[3]), m + 2);
        EXPECT_NE((r[0] - r[1]) % 2, 0);
        EXPECT_TRUE(c.orbit_vector_verified) << m;
        EXPECT_TRUE(table.contains(m)) << m;
    }
    EXPECT_THROW(certify_representability(example_seed, 3), invalid_input);
    EXPECT_THROW(certify_representability(example_seed, 6), invalid_input);
}
