#include "octet/geometry.hpp"

#include "octet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace octet {

namespace {

mat5 zero5() {
    mat5 z;
    for (auto& row : z) row.fill(rational(0));
    return z;
}

rational dot3(const vec3& a, const vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// Null space basis of an r x 5 rational matrix by exact row reduction.
std::vector<vec5> null_space(std::vector<vec5> rows) {
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (int col = 0; col < 5 && r < rows.size(); ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        rational inv = 1 / rows[r][col];
        for (auto& x : rows[r]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col] == 0) continue;
            rational f = rows[i][col];
            for (int j = 0; j < 5; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivot_col.push_back(col);
        ++r;
    }
    std::vector<vec5> basis;
    for (int free = 0; free < 5; ++free) {
        if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) continue;
        vec5 v;
        v.fill(rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -rows[i][free];
        basis.push_back(v);
    }
    return basis;
}

bool lex_less(const vec5& a, const vec5& b) {
    for (int i = 0; i < 5; ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return false;
}

// Branch order: smaller curvature entry first, then lexicographic.
bool branch_less(const vec5& a, const vec5& b) {
    if (a[1] != b[1]) return a[1] < b[1];
    return lex_less(a, b);
}

mat5 rows_with_w(const std::array<sphere, 4>& quad, const vec5& w) {
    mat5 m;
    for (int i = 0; i < 4; ++i) m[i] = quad[i].coords();
    m[4] = w;
    return m;
}

// Bilinear form with matrix W^{-1} = [[0,-2],[-2,0]] (+) I3, acting on columns.
rational winv_product(const vec5& u, const vec5& v) {
    return -2 * (u[0] * v[1] + u[1] * v[0]) + u[2] * v[2] + u[3] * v[3] + u[4] * v[4];
}

// Column reflection v -> v - 2 B(u,v)/B(u,u) u, returned as a matrix acting on columns.
mat5 reflection(const vec5& u) {
    rational buu = winv_product(u, u);
    mat5 m = identity5();
    // M = I - (2/B(u,u)) u u^t W^{-1}
    vec5 uw;  // row u^t W^{-1}
    uw[0] = -2 * u[1];
    uw[1] = -2 * u[0];
    uw[2] = u[2];
    uw[3] = u[3];
    uw[4] = u[4];
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) m[i][j] -= 2 * u[i] * uw[j] / buu;
    return m;
}

}  // namespace

const mat5& w_matrix() {
    static const mat5 w = [] {
        mat5 m = zero5();
        m[0][1] = m[1][0] = make_rational(-1, 2);
        m[2][2] = m[3][3] = m[4][4] = 1;
        return m;
    }();
    return w;
}

const mat5& k_matrix() {
    static const mat5 k = [] {
        mat5 m;
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) m[i][j] = (i == j) ? 1 : -1;
        m[4][4] = -1;
        return m;
    }();
    return k;
}

mat5 identity5() {
    mat5 m = zero5();
    for (int i = 0; i < 5; ++i) m[i][i] = 1;
    return m;
}

mat5 operator*(const mat5& a, const mat5& b) {
    mat5 c = zero5();
    for (int i = 0; i < 5; ++i)
        for (int k = 0; k < 5; ++k) {
            if (a[i][k] == 0) continue;
            for (int j = 0; j < 5; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

vec5 operator*(const vec5& v, const mat5& m) {
    vec5 r;
    r.fill(rational(0));
    for (int k = 0; k < 5; ++k) {
        if (v[k] == 0) continue;
        for (int j = 0; j < 5; ++j) r[j] += v[k] * m[k][j];
    }
    return r;
}

mat5 transpose(const mat5& m) {
    mat5 t;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) t[i][j] = m[j][i];
    return t;
}

std::optional<mat5> inverse(const mat5& m) {
    mat5 a = m;
    mat5 inv = identity5();
    for (int col = 0; col < 5; ++col) {
        int piv = col;
        while (piv < 5 && a[piv][col] == 0) ++piv;
        if (piv == 5) return std::nullopt;
        std::swap(a[col], a[piv]);
        std::swap(inv[col], inv[piv]);
        rational f = 1 / a[col][col];
        for (int j = 0; j < 5; ++j) {
            a[col][j] *= f;
            inv[col][j] *= f;
        }
        for (int i = 0; i < 5; ++i) {
            if (i == col || a[i][col] == 0) continue;
            rational g = a[i][col];
            for (int j = 0; j < 5; ++j) {
                a[i][j] -= g * a[col][j];
                inv[i][j] -= g * inv[col][j];
            }
        }
    }
    return inv;
}

rational w_product(const vec5& u, const vec5& v) {
    return -(u[0] * v[1] + u[1] * v[0]) / 2 + u[2] * v[2] + u[3] * v[3] + u[4] * v[4];
}

sphere sphere::from_coords(const vec5& coords) {
    if (w_product(coords, coords) != 1)
        throw invalid_input("abbc vector " + to_string(coords) + " has self product != 1");
    return sphere(coords);
}

vec3 sphere::center() const {
    if (is_plane()) throw invalid_input("plane has no center");
    return {coords_[2] / coords_[1], coords_[3] / coords_[1], coords_[4] / coords_[1]};
}

vec3 sphere::normal() const {
    if (!is_plane()) throw invalid_input("sphere has no normal");
    return {coords_[2], coords_[3], coords_[4]};
}

rational sphere::offset() const {
    if (!is_plane()) throw invalid_input("sphere has no offset");
    return coords_[0] / 2;
}

sphere sphere_from_geometry(const vec3& center, const rational& curvature) {
    if (curvature == 0) throw invalid_input("zero curvature: use plane_from_geometry");
    const rational& b = curvature;
    vec5 c{b * dot3(center, center) - 1 / b, b, b * center[0], b * center[1], b * center[2]};
    return sphere::from_coords(c);
}

sphere plane_from_geometry(const vec3& normal, const rational& offset) {
    if (dot3(normal, normal) != 1) throw invalid_input("plane normal is not a unit vector");
    return sphere::from_coords({2 * offset, rational(0), normal[0], normal[1], normal[2]});
}

rational inversive_product(const sphere& s1, const sphere& s2) { return w_product(s1.coords(), s2.coords()); }

mobius_matrix mobius_scale(const rational& lambda) {
    if (lambda == 0) throw invalid_input("scale factor must be nonzero");
    mat5 m = identity5();
    m[0][0] = 1 / lambda;
    m[1][1] = lambda;
    return {m, mobius_kind::scale};
}

mobius_matrix mobius_rotate(int axis, const rational& c, const rational& s) {
    if (c * c + s * s != 1) throw invalid_input("rotation (cos, sin) is not a unit pair");
    mat5 m = identity5();
    int i = 0, j = 0;
    switch (axis) {
        case 0: i = 3; j = 4; break;
        case 1: i = 4; j = 2; break;
        case 2: i = 2; j = 3; break;
        default: throw invalid_input("rotation axis must be 0, 1 or 2");
    }
    m[i][i] = c;
    m[i][j] = -s;
    m[j][i] = s;
    m[j][j] = c;
    return {m, mobius_kind::rotate};
}

mobius_matrix mobius_translate(const vec3& t) {
    mat5 m = identity5();
    m[1][0] = dot3(t, t);
    for (int k = 0; k < 3; ++k) {
        m[1][2 + k] = t[k];
        m[2 + k][0] = 2 * t[k];
    }
    return {m, mobius_kind::translate};
}

mobius_matrix mobius_invert() {
    mat5 m = identity5();
    m[0][0] = m[1][1] = 0;
    m[0][1] = m[1][0] = 1;
    return {m, mobius_kind::invert};
}

mobius_matrix compose(const mobius_matrix& a, const mobius_matrix& b) { return {a.m * b.m, mobius_kind::composite}; }

sphere transform(const sphere& s, const mobius_matrix& m) { return sphere::from_coords(s.coords() * m.m); }

f_matrix f_matrix::from_rows(const mat5& rows) {
    if (rows * w_matrix() * transpose(rows) != k_matrix()) throw invalid_input("rows do not satisfy F.W.F^t = K");
    return f_matrix(rows);
}

std::array<sphere, 8> f_matrix::spheres() const {
    auto partner = [&](int i) {
        vec5 p;
        for (int k = 0; k < 5; ++k) p[k] = 2 * rows_[4][k] - rows_[i][k];
        return sphere::from_coords(p);
    };
    return {sphere::from_coords(rows_[0]), sphere::from_coords(rows_[1]), sphere::from_coords(rows_[2]),
            sphere::from_coords(rows_[3]), partner(0), partner(1), partner(2), partner(3)};
}

vec5 f_matrix::curvature_column() const {
    return {rows_[0][1], rows_[1][1], rows_[2][1], rows_[3][1], rows_[4][1]};
}

f_matrix f_matrix::transformed(const mobius_matrix& m) const { return from_rows(rows_ * m.m); }

f_matrix f_matrix::acted(const std::array<std::array<int, 5>, 5>& g) const {
    mat5 out = zero5();
    for (int i = 0; i < 5; ++i)
        for (int k = 0; k < 5; ++k) {
            if (g[i][k] == 0) continue;
            for (int j = 0; j < 5; ++j) out[i][j] += g[i][k] * rows_[k][j];
        }
    return from_rows(out);
}

gap_fill fill_gap(const std::array<sphere, 4>& quad, const std::optional<vec5>& known_w) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (inversive_product(quad[i], quad[j]) != -1)
                throw invalid_input("spheres " + std::to_string(i) + " and " + std::to_string(j) + " are not tangent");

    vec5 sigma;
    sigma.fill(rational(0));
    for (const auto& s : quad)
        for (int k = 0; k < 5; ++k) sigma[k] += s.coords()[k];

    gap_fill out;
    auto finish = [&](vec5 w1, vec5 w2) {
        if (branch_less(w2, w1)) std::swap(w1, w2);
        out.exact = true;
        out.first = f_matrix::from_rows(rows_with_w(quad, w1));
        out.second = f_matrix::from_rows(rows_with_w(quad, w2));
        for (int k = 0; k < 5; ++k) {
            out.numeric_w[0][k] = w1[k].get_d();
            out.numeric_w[1][k] = w2[k].get_d();
        }
        return out;
    };

    if (known_w) {
        const vec5& w = *known_w;
        for (const auto& s : quad)
            if (w_product(w, s.coords()) != -1) throw invalid_input("known w is not tangent to every input sphere");
        if (w_product(w, w) != -1) throw invalid_input("known w has w.W.w^t != -1");
        vec5 other;
        for (int k = 0; k < 5; ++k) other[k] = sigma[k] - w[k];
        return finish(w, other);
    }

    // w = sigma/2 + s n, with n spanning the W-orthogonal complement of the inputs.
    std::vector<vec5> constraints;
    for (const auto& s : quad) constraints.push_back(s.coords() * w_matrix());
    auto basis = null_space(constraints);
    if (basis.size() != 1) throw invalid_input("tangency system is degenerate");
    const vec5& n = basis[0];
    rational q = w_product(n, n);
    if (q == 0) throw invalid_input("tangency system is degenerate");
    rational s2 = (-1 - w_product(sigma, sigma) / 4) / q;

    if (auto s = rational_sqrt(s2)) {
        vec5 w1, w2;
        for (int k = 0; k < 5; ++k) {
            w1[k] = sigma[k] / 2 + *s * n[k];
            w2[k] = sigma[k] / 2 - *s * n[k];
        }
        return finish(w1, w2);
    }

    // Irrational branch: numeric w for display only.
    double s = std::sqrt(s2.get_d());
    std::array<double, 5> a{}, b{};
    for (int k = 0; k < 5; ++k) {
        a[k] = sigma[k].get_d() / 2 + s * n[k].get_d();
        b[k] = sigma[k].get_d() / 2 - s * n[k].get_d();
    }
    if (b[1] < a[1]) std::swap(a, b);
    out.exact = false;
    out.numeric_w = {a, b};
    return out;
}

std::array<sphere, 4> reference_quadruple() {
    return {plane_from_geometry({0, 0, 1}, 1), plane_from_geometry({0, 0, -1}, 1),
            sphere_from_geometry({-1, -1, 0}, 1), sphere_from_geometry({-1, 1, 0}, 1)};
}

f_matrix realize_curvatures(const vec5& column) {
    const f_matrix base = *fill_gap(reference_quadruple()).first;
    auto inv = inverse(base.rows());
    if (!inv) throw invariant_violation("reference octuple matrix is singular");
    // Column m with base.m = column.
    vec5 m;
    for (int i = 0; i < 5; ++i) {
        m[i] = 0;
        for (int k = 0; k < 5; ++k) m[i] += (*inv)[i][k] * column[k];
    }
    if (winv_product(m, m) != 0) throw invalid_input("vector " + to_string(column) + " is not an octuple curvature vector");

    vec5 e2{rational(0), rational(1), rational(0), rational(0), rational(0)};
    if (m == e2) return base;

    mat5 op;
    auto reflect_to = [](const vec5& from, const vec5& to) {
        vec5 u;
        for (int k = 0; k < 5; ++k) u[k] = from[k] - to[k];
        return reflection(u);
    };
    if (winv_product(e2, m) != 0) {
        op = reflect_to(e2, m);
    } else {
        // Go through an isotropic vector that pairs nontrivially with both.
        const std::array<vec5, 7> candidates{{
            {1, 0, 0, 0, 0}, {1, 1, 2, 0, 0}, {1, 1, 0, 2, 0}, {1, 1, 0, 0, 2},
            {1, 1, -2, 0, 0}, {1, 1, 0, -2, 0}, {1, 1, 0, 0, -2}}};
        std::optional<vec5> mid;
        for (const auto& p : candidates)
            if (winv_product(e2, p) != 0 && winv_product(p, m) != 0) {
                mid = p;
                break;
            }
        if (!mid) throw invariant_violation("no intermediate isotropic vector found");
        // Columns: e2 -> mid -> m.
        op = reflect_to(*mid, m) * reflect_to(e2, *mid);
    }
    return f_matrix::from_rows(base.rows() * op);
}

std::string to_string(const vec5& v) {
    std::string s = "(";
    for (int i = 0; i < 5; ++i) {
        if (i) s += ", ";
        s += v[i].get_str();
    }
    return s + ")";
}

}  // namespace octet
