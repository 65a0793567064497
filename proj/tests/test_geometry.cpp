#include "octet/errors.hpp"
#include "octet/geometry.hpp"
#include "octet/octuple.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace octet;

namespace {

rational q(std::int64_t n, std::int64_t d = 1) { return make_rational(n, d); }

vec3 v3(rational x, rational y, rational z) { return {x, y, z}; }

mat5 mul_t(const mat5& a, const mat5& b) { return a * b * transpose(a); }

bool preserves_w(const mobius_matrix& m) { return mul_t(m.m, w_matrix()) == w_matrix(); }

std::vector<mobius_matrix> sample_mobius() {
    return {mobius_scale(q(3, 2)),
            mobius_scale(q(-2)),
            mobius_rotate(0, q(3, 5), q(4, 5)),
            mobius_rotate(1, q(-5, 13), q(12, 13)),
            mobius_rotate(2, q(8, 17), q(-15, 17)),
            mobius_translate(v3(q(1, 2), q(-3), q(2, 7))),
            mobius_invert(),
            compose(mobius_translate(v3(q(1), q(0), q(1, 3))), mobius_invert())};
}

std::set<vec5> inscribed(const f_matrix& F) {
    std::set<vec5> out;
    const auto s = F.spheres();
    for (int k = 4; k < 8; ++k) out.insert(s[k].coords());
    return out;
}

}  // namespace

TEST(geometry, sphere_coordinates) {
    const sphere s = sphere_from_geometry(v3(q(1), q(-1), q(0)), q(1));
    EXPECT_EQ(s.curvature(), q(1));
    EXPECT_EQ(s.center(), v3(q(1), q(-1), q(0)));
    EXPECT_EQ(w_product(s.coords(), s.coords()), q(1));
    const sphere p = plane_from_geometry(v3(q(0), q(0), q(1)), q(1));
    EXPECT_TRUE(p.is_plane());
    EXPECT_EQ(p.normal(), v3(q(0), q(0), q(1)));
    EXPECT_EQ(p.offset(), q(1));
    EXPECT_THROW(p.center(), invalid_input);
    EXPECT_THROW(s.normal(), invalid_input);
    EXPECT_THROW(sphere::from_coords({q(1), q(1), q(0), q(0), q(0)}), invalid_input);
}

TEST(geometry, reference_quadruple_is_mutually_tangent) {
    const auto quad = reference_quadruple();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) EXPECT_EQ(inversive_product(quad[i], quad[j]), i == j ? q(1) : q(-1));
}

TEST(geometry, mobius_matrices_preserve_w) {
    for (const auto& m : sample_mobius()) EXPECT_TRUE(preserves_w(m));
    EXPECT_EQ(mobius_scale(q(1)).m, identity5());
    EXPECT_EQ(mobius_translate(v3(q(0), q(0), q(0))).m, identity5());
    EXPECT_EQ(compose(mobius_invert(), mobius_invert()).m, identity5());
    EXPECT_THROW(mobius_rotate(0, q(1), q(1)), invalid_input);
    EXPECT_THROW(mobius_scale(q(0)), invalid_input);
}

TEST(geometry, mobius_acts_on_geometry) {
    const sphere s = sphere_from_geometry(v3(q(1), q(2), q(3)), q(2));
    const sphere t = transform(s, mobius_translate(v3(q(1), q(0), q(-1))));
    EXPECT_EQ(t.center(), v3(q(2), q(2), q(2)));
    EXPECT_EQ(t.curvature(), q(2));
    // Inversion in the unit sphere maps the sphere at (2,0,0) of radius 1 to
    // the sphere at (2/3,0,0) of radius 1/3.
    const sphere u = sphere_from_geometry(v3(q(2), q(0), q(0)), q(1));
    const sphere v = transform(u, mobius_invert());
    EXPECT_EQ(v.curvature(), q(3));
    EXPECT_EQ(v.center(), v3(q(2, 3), q(0), q(0)));
}

TEST(geometry, fill_gap_reference_example) {
    const gap_fill g = fill_gap(reference_quadruple());
    ASSERT_TRUE(g.exact);
    const auto s = g.first->spheres();
    std::set<std::pair<rational, vec3>> got;
    for (int k = 4; k < 8; ++k) got.insert({s[k].curvature(), s[k].center()});
    const std::set<std::pair<rational, vec3>> want{{q(1), v3(q(1), q(1), q(0))},
                                                   {q(1), v3(q(1), q(-1), q(0))},
                                                   {q(2), v3(q(0), q(0), q(1, 2))},
                                                   {q(2), v3(q(0), q(0), q(-1, 2))}};
    EXPECT_EQ(got, want);
    EXPECT_EQ(g.first->curvature_column()[4], q(1));
}

TEST(geometry, fill_gap_pair_sum_and_partners) {
    const auto quad = reference_quadruple();
    const gap_fill g = fill_gap(quad);
    ASSERT_TRUE(g.exact);
    vec5 sum{};
    for (const auto& s : quad)
        for (int i = 0; i < 5; ++i) sum[i] += s.coords()[i];
    for (int i = 0; i < 5; ++i) EXPECT_EQ(g.first->w()[i] + g.second->w()[i], sum[i]);
    EXPECT_LE(g.first->w()[1], g.second->w()[1]);
    for (const auto* F : {&*g.first, &*g.second}) {
        EXPECT_EQ(mul_t(F->rows(), w_matrix()), k_matrix());
        const auto s = F->spheres();
        for (int k = 0; k < 4; ++k) EXPECT_EQ(inversive_product(s[k], s[k + 4]), q(-3));
    }
}

TEST(geometry, fill_gap_known_w_agrees) {
    const gap_fill g = fill_gap(reference_quadruple());
    const gap_fill h = fill_gap(reference_quadruple(), g.second->w());
    ASSERT_TRUE(h.exact);
    // Same branch order as without the hint.
    EXPECT_EQ(*h.first, *g.first);
    EXPECT_EQ(*h.second, *g.second);
    vec5 bad = g.first->w();
    bad[0] += 1;
    EXPECT_THROW(fill_gap(reference_quadruple(), bad), invalid_input);
}

TEST(geometry, fill_gap_rejects_non_tangent) {
    auto quad = reference_quadruple();
    quad[3] = sphere_from_geometry(v3(q(5), q(5), q(0)), q(1));
    EXPECT_THROW(fill_gap(quad), invalid_input);
}

TEST(geometry, fill_gap_is_mobius_equivariant) {
    const auto quad = reference_quadruple();
    const gap_fill g = fill_gap(quad);
    for (const auto& m : sample_mobius()) {
        std::array<sphere, 4> moved{transform(quad[0], m), transform(quad[1], m), transform(quad[2], m),
                                    transform(quad[3], m)};
        const gap_fill h = fill_gap(moved);
        ASSERT_TRUE(h.exact);
        const std::set<mat5> want{g.first->transformed(m).rows(), g.second->transformed(m).rows()};
        const std::set<mat5> got{h.first->rows(), h.second->rows()};
        EXPECT_EQ(got, want);
        EXPECT_EQ(inscribed(*h.first).size(), 4u);
    }
}

TEST(geometry, generator_action_matches_curvature_action) {
    const f_matrix F = *fill_gap(reference_quadruple()).first;
    octuple col{};
    for (int i = 0; i < 5; ++i) col[i] = to_int64(F.curvature_column()[i]);
    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        f_matrix G = F;
        octuple v = col;
        const int len = 1 + static_cast<int>(rng() % 8);
        for (int k = 0; k < len; ++k) {
            const auto g = static_cast<generator>(rng() % 5);
            G = G.acted(generator_matrix(g));
            v = apply_generator(g, v);
        }
        for (int i = 0; i < 5; ++i) EXPECT_EQ(G.curvature_column()[i], q(v[i]));
        EXPECT_EQ(mul_t(G.rows(), w_matrix()), k_matrix());
    }
}

TEST(geometry, realize_curvatures_hits_target_column) {
    const std::vector<octuple> targets{{0, 0, 1, 1, 1}, {2, 0, 1, 1, 3}, {-1, 2, 2, 3, 3}, {-2, 4, 5, 5, 5},
                                       {-3, 5, 8, 8, 9}, {1, 0, 0, 1, 1}, {0, 1, 1, 0, 1}};
    for (const auto& t : targets) {
        vec5 col;
        for (int i = 0; i < 5; ++i) col[i] = q(t[i]);
        const f_matrix F = realize_curvatures(col);
        EXPECT_EQ(F.curvature_column(), col);
        EXPECT_EQ(mul_t(F.rows(), w_matrix()), k_matrix());
    }
}
