#pragma once

#include "octet/rational.hpp"

#include <array>
#include <optional>
#include <string>

namespace octet {

using vec3 = std::array<rational, 3>;
using vec5 = std::array<rational, 5>;
using mat5 = std::array<vec5, 5>;

// W = [[0,-1/2],[-1/2,0]] (+) I3, the inversive bilinear form on abbc coordinates.
const mat5& w_matrix();
// K: diagonal (1,1,1,1,-1), off-diagonal -1. F.W.F^t = K for every octuple matrix.
const mat5& k_matrix();

mat5 identity5();
mat5 operator*(const mat5& a, const mat5& b);
vec5 operator*(const vec5& v, const mat5& m);  // row vector times matrix
mat5 transpose(const mat5& m);
std::optional<mat5> inverse(const mat5& m);
rational w_product(const vec5& u, const vec5& v);  // u.W.v^t

// A sphere or plane in abbc coordinates (bbar, b, b*x, b*y, b*z).
// Planes are (2h, 0, n) with unit normal n and signed offset h.
class sphere {
public:
    // Validates the self product u.W.u^t = 1.
    static sphere from_coords(const vec5& coords);

    const vec5& coords() const { return coords_; }
    bool is_plane() const { return coords_[1] == 0; }
    const rational& curvature() const { return coords_[1]; }
    vec3 center() const;  // throws invalid_input for planes
    vec3 normal() const;  // throws invalid_input for spheres
    rational offset() const;

    bool operator==(const sphere& other) const { return coords_ == other.coords_; }

private:
    explicit sphere(const vec5& c) : coords_(c) {}
    vec5 coords_;
};

sphere sphere_from_geometry(const vec3& center, const rational& curvature);
sphere plane_from_geometry(const vec3& normal, const rational& offset);
rational inversive_product(const sphere& s1, const sphere& s2);

enum class mobius_kind { scale, rotate, translate, invert, composite };

struct mobius_matrix {
    mat5 m;
    mobius_kind kind;
};

mobius_matrix mobius_scale(const rational& lambda);
// axis 0, 1, 2 = rotation about x, y, z. Requires c^2 + s^2 = 1.
mobius_matrix mobius_rotate(int axis, const rational& c, const rational& s);
mobius_matrix mobius_translate(const vec3& t);
mobius_matrix mobius_invert();
// Apply a first, then b.
mobius_matrix compose(const mobius_matrix& a, const mobius_matrix& b);
sphere transform(const sphere& s, const mobius_matrix& m);

// Rows 0-3: one sphere from each non-tangent pair; row 4: pair average w.
class f_matrix {
public:
    // Validates F.W.F^t = K.
    static f_matrix from_rows(const mat5& rows);

    const mat5& rows() const { return rows_; }
    const vec5& w() const { return rows_[4]; }
    // The eight spheres: rows 0-3, then their partners 2w - row.
    std::array<sphere, 8> spheres() const;
    // Column of curvatures (a, b, c, d, omega).
    vec5 curvature_column() const;

    f_matrix transformed(const mobius_matrix& m) const;
    // Left multiplication by an integer matrix of the octuple group.
    f_matrix acted(const std::array<std::array<int, 5>, 5>& g) const;

    bool operator==(const f_matrix& other) const { return rows_ == other.rows_; }

private:
    explicit f_matrix(const mat5& r) : rows_(r) {}
    mat5 rows_;
};

struct gap_fill {
    // True when w is rational; first/second are then set.
    bool exact = false;
    std::optional<f_matrix> first;
    std::optional<f_matrix> second;
    // Approximate pair averages, always filled. Only for geometry export.
    std::array<std::array<double, 5>, 2> numeric_w{};
};

// Both octuples whose first four rows are the given mutually tangent spheres.
// Ordered by the curvature entry of w, then lexicographically.
gap_fill fill_gap(const std::array<sphere, 4>& quad, const std::optional<vec5>& known_w = std::nullopt);

// Planes z = 1 and z = -1 with unit spheres at (-1,-1,0) and (-1,1,0).
std::array<sphere, 4> reference_quadruple();

// A rational octuple matrix whose curvature column equals the given vector.
// Obtained from the reference packing by a W-preserving reflection.
f_matrix realize_curvatures(const vec5& column);

std::string to_string(const vec5& v);

}  // namespace octet
