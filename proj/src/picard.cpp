#include "octet/picard.hpp"

#include "octet/errors.hpp"

#include <deque>
#include <map>
#include <unordered_set>

namespace octet {

namespace {

zz8 g1() { return zeta_power(0); }
zz8 gi() { return zeta_power(2); }
zz8 gz(std::int64_t re, std::int64_t im) { return from_gaussian({re, im}); }

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw budget_exceeded("integer matrix overflow");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw budget_exceeded("integer matrix overflow");
    return r;
}

std::int64_t abs2(const zz8& a) { return integral_value(re(a * conj(a))); }

// Key for an element of PSL2(Z[i]): entries with the overall sign fixed.
std::array<std::int64_t, 8> projective_key(const cmat2& m) {
    std::array<std::int64_t, 8> k{};
    const zz8* e[4] = {&m.a, &m.b, &m.c, &m.d};
    for (int i = 0; i < 4; ++i) {
        gaussian g = e[i]->to_gaussian();
        k[2 * i] = g.re;
        k[2 * i + 1] = g.im;
    }
    for (auto x : k) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : k) y = -y;
        break;
    }
    return k;
}

struct key_hash {
    std::size_t operator()(const std::array<std::int64_t, 8>& k) const {
        std::size_t h = 1469598103934665603ULL;
        for (auto x : k) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ULL;
        return h;
    }
};

// Residue of a Gaussian integer mod 2, entries in {0, 1}.
gaussian mod2(gaussian a) { return {((a.re % 2) + 2) % 2, ((a.im % 2) + 2) % 2}; }

}  // namespace

int_mat4 mul4(const int_mat4& a, const int_mat4& b) {
    int_mat4 c{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            for (int j = 0; j < 4; ++j) c[i][j] = checked_add(c[i][j], checked_mul(a[i][k], b[k][j]));
    return c;
}

int_mat4 identity4() {
    int_mat4 m{};
    for (int i = 0; i < 4; ++i) m[i][i] = 1;
    return m;
}

int_mat4 rho(const cmat2& m) {
    const zz8 &al = m.a, &be = m.b, &ga = m.c, &de = m.d;
    const zz8 ba = be * conj(al);
    const zz8 ag = al * conj(ga);
    const zz8 mid = conj(al) * de - conj(be) * ga;
    const zz8 cross = al * conj(de) + be * conj(ga);
    const zz8 bd = be * conj(de);
    const zz8 dg = de * conj(ga);
    return {{{abs2(al), integral_value(im(ba), 2), integral_value(re(ba), 2), abs2(be)},
             {integral_value(im(ag)), integral_value(re(mid)), integral_value(im(cross)), integral_value(im(bd))},
             {integral_value(re(ag)), integral_value(im(mid)), integral_value(re(cross)), integral_value(re(bd))},
             {abs2(ga), integral_value(im(dg), 2), integral_value(re(dg), 2), abs2(de)}}};
}

const cmat2& named_matrix(int k) {
    static const std::array<cmat2, 6> mats = [] {
        const zz8 z1 = zeta_power(1), z3 = zeta_power(3);
        const zz8 i_sqrt2 = z1 + z3;  // i sqrt2
        return std::array<cmat2, 6>{{
            {g1(), gz(1, 1), gz(-1, 1), -g1()},
            {gi(), gz(-1, 1), zz8{}, -gi()},
            {z3, i_sqrt2, zz8{}, -z1},
            {gi(), zz8{}, gz(-1, -1), -gi()},
            {z3, zz8{}, -i_sqrt2, -z1},
            {z1, zz8{}, zz8{}, -z3},
        }};
    }();
    if (k < 1 || k > 6) throw invalid_input("named matrix index must be 1..6");
    return mats[k - 1];
}

const int_mat4& g_matrix(int k) {
    static const std::array<int_mat4, 4> g = {{
        {{{1, 2, 2, 2}, {0, 0, -1, -1}, {0, -1, 0, -1}, {0, 0, 0, 1}}},
        {{{1, 0, 0, 0}, {-1, 0, -1, 0}, {-1, -1, 0, 0}, {2, 2, 2, 1}}},
        {{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}},
        {{{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}},
    }};
    if (k < 2 || k > 5) throw invalid_input("g index must be 2..5");
    return g[k - 2];
}

std::pair<int, int> g_pair(int k) {
    static const std::array<std::pair<int, int>, 6> pairs{{{2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}}};
    if (k < 1 || k > 6) throw invalid_input("named matrix index must be 1..6");
    return pairs[k - 1];
}

const int_mat4& v_matrix() {
    static const int_mat4 v{{{1, 0, 0, 0}, {0, 0, 0, 1}, {1, 0, 2, 1}, {1, 1, 1, 1}}};
    return v;
}

const std::array<std::array<std::int64_t, 5>, 5>& u_matrix() {
    static const std::array<std::array<std::int64_t, 5>, 5> u{
        {{1, 0, 0, 0, 0}, {-1, 1, 0, 0, 0}, {-1, 0, 1, 0, 0}, {-1, 0, 0, 1, 0}, {-1, 0, 0, 0, 1}}};
    return u;
}

const int_mat4& gamma_generator(int k) {
    static const std::array<int_mat4, 4> m = {{
        {{{-1, 0, 0, 2}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}},
        {{{1, 0, 0, 0}, {0, -1, 0, 2}, {0, 0, 1, 0}, {0, 0, 0, 1}}},
        {{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 2}, {0, 0, 0, 1}}},
        {{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 1, 1, -1}}},
    }};
    if (k < 2 || k > 5) throw invalid_input("generator index must be 2..5");
    return m[k - 2];
}

cmat2 evaluate_word(const std::vector<int>& word) {
    cmat2 r = identity2();
    for (int letter : word) {
        const cmat2& m = named_matrix(letter > 0 ? letter : -letter);
        r = r * (letter > 0 ? m : inverse(m));
    }
    return r;
}

int_mat4 rho_via_g(const std::vector<int>& word) {
    int_mat4 r = identity4();
    for (int letter : word) {
        auto [a, b] = g_pair(letter > 0 ? letter : -letter);
        // The g's are involutions, so the inverse of g_a g_b is g_b g_a.
        if (letter < 0) std::swap(a, b);
        r = mul4(mul4(r, g_matrix(a)), g_matrix(b));
    }
    return r;
}

const std::vector<word_identity>& word_identities() {
    static const std::vector<word_identity> ids = {
        {"M6 M4 M2 M4 M6^-1 M2^-1 = [[1,2],[0,1]]", {6, 4, 2, 4, -6, -2},
         gaussian_matrix({1, 0}, {2, 0}, {0, 0}, {1, 0}), true},
        {"M5^-1 M4^-1 M6^-1 M5^-1 M6^-1 M4 = [[1,0],[2,1]]", {-5, -4, -6, -5, -6, 4},
         gaussian_matrix({1, 0}, {0, 0}, {2, 0}, {1, 0}), true},
        {"M4^-1 M6^-1 M5 = [[1,0],[2i,1]]", {-4, -6, 5}, gaussian_matrix({1, 0}, {0, 0}, {0, 2}, {1, 0}), true},
        {"M6^-1 M1 M5 M6 M5^-1 M7 = [[1,2i],[0,1]]", {-6, 1, 5, 6, -5},
         gaussian_matrix({1, 0}, {0, 2}, {0, 0}, {1, 0}), false},
        {"M2 M1 M5 M4^-1 M5 = [[i,0],[0,-i]]", {2, 1, 5, -4, 5}, gaussian_matrix({0, 1}, {0, 0}, {0, 0}, {0, -1}), true},
        {"M3^-1 M2 M6^-1 M4^-1 M3^-1 M5^-1 M4^-1 M6^-1 M5 = [[1+2i,2],[2,1-2i]]", {-3, 2, -6, -4, -3, -5, -4, -6, 5},
         gaussian_matrix({1, 2}, {2, 0}, {2, 0}, {1, -2}), true},
        {"M4^-1 M5 M6 M1^-1 M3^-1 M4^-1 M6^-1 M1^-1 M2^-1 M4 = [[1-2i,2i],[-2i,1+2i]]",
         {-4, 5, 6, -1, -3, -4, -6, -1, -2, 4}, gaussian_matrix({1, -2}, {0, 2}, {0, -2}, {1, 2}), true},
        {"M6^-1 M2^-1 M6^-1 M4^-1 M5^-1 M6^-1 M2^-1 = [[1+2i,2i],[-2i,1-2i]]", {-6, -2, -6, -4, -5, -6, -2},
         gaussian_matrix({1, 2}, {0, 2}, {0, -2}, {1, -2}), true},
    };
    return ids;
}

std::vector<identity_result> verify_word_identities() {
    std::vector<identity_result> out;
    for (const auto& id : word_identities()) {
        identity_result r{id.label, identity_status::unverifiable, std::nullopt, false, ""};
        if (!id.well_defined) {
            out.push_back(r);
            continue;
        }
        const cmat2 lhs = evaluate_word(id.word);
        r.lhs = lhs.str();
        r.unit_power = projective_ratio(lhs, id.rhs);
        r.status = r.unit_power ? identity_status::pass : identity_status::fail;
        r.rho_matches = (rho_via_g(id.word) == rho(id.rhs));
        out.push_back(r);
    }
    return out;
}

bool xi_membership(const cmat2& m) {
    for (const zz8* e : {&m.a, &m.b, &m.c, &m.d})
        if (!e->is_gaussian()) return false;
    if (det(m) != identity2().a) return false;
    const gaussian a = mod2(m.a.to_gaussian()), b = mod2(m.b.to_gaussian());
    const gaussian c = mod2(m.c.to_gaussian()), d = mod2(m.d.to_gaussian());
    const gaussian zero{0, 0}, one{1, 0}, i{0, 1};
    if (b != zero || c != zero) return false;
    // -m = m mod 2, so the sign ambiguity is harmless.
    return (a == one && d == one) || (a == i && d == i);
}

std::vector<cmat2> xi_generators() {
    std::vector<cmat2> gens;
    for (const auto& id : word_identities()) gens.push_back(id.rhs);
    const std::size_t n = gens.size();
    for (std::size_t k = 0; k < n; ++k) gens.push_back(inverse(gens[k]));
    return gens;
}

std::set<std::int64_t> explicit_subset(const seed_vector& seed, int L) {
    if (L < 0 || L > 10) throw invalid_input("word length must be in 0..10");
    const quad_form f = build_form(seed);
    const auto gens = xi_generators();
    std::unordered_set<std::array<std::int64_t, 8>, key_hash> seen;
    std::set<std::int64_t> values;
    std::vector<cmat2> level{identity2()};
    seen.insert(projective_key(identity2()));
    auto emit = [&](const cmat2& m) {
        const gaussian al = m.a.to_gaussian(), be = m.b.to_gaussian();
        if ((be.re % 2) != 0 || (be.im % 2) != 0) throw invariant_violation("Xi element with odd upper-right entry");
        values.insert(eval_form(f, al, gaussian{be.re / 2, be.im / 2}) - f.a0);
    };
    emit(identity2());
    for (int len = 1; len <= L; ++len) {
        std::vector<cmat2> next;
        for (const auto& m : level)
            for (const auto& g : gens) {
                cmat2 p = m * g;
                if (!seen.insert(projective_key(p)).second) continue;
                if (seen.size() > explicit_subset_budget)
                    throw budget_exceeded("explicit subset exceeds " + std::to_string(explicit_subset_budget) + " elements");
                emit(p);
                next.push_back(p);
            }
        level = std::move(next);
    }
    return values;
}

const int_mat4& delta_gram() {
    static const int_mat4 g{{{0, 0, 0, -1}, {0, 2, 0, 0}, {0, 0, 2, 0}, {-1, 0, 0, 0}}};
    return g;
}

bool preserves_delta(const int_mat4& r) {
    int_mat4 rt{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rt[i][j] = r[j][i];
    return mul4(mul4(rt, delta_gram()), r) == delta_gram();
}

std::int64_t det4(const int_mat4& m) {
    // Laplace expansion along the first row.
    auto det3 = [&](int skip) {
        int cols[3], n = 0;
        for (int j = 0; j < 4; ++j)
            if (j != skip) cols[n++] = j;
        const auto& a = m;
        return a[1][cols[0]] * (a[2][cols[1]] * a[3][cols[2]] - a[2][cols[2]] * a[3][cols[1]]) -
               a[1][cols[1]] * (a[2][cols[0]] * a[3][cols[2]] - a[2][cols[2]] * a[3][cols[0]]) +
               a[1][cols[2]] * (a[2][cols[0]] * a[3][cols[1]] - a[2][cols[1]] * a[3][cols[0]]);
    };
    std::int64_t d = 0;
    for (int j = 0; j < 4; ++j) d += (j % 2 == 0 ? 1 : -1) * m[0][j] * det3(j);
    return d;
}

std::optional<octuple> orbit_vector_from_pair(const octuple& anchor, gaussian alpha, gaussian beta_half) {
    if (norm(alpha) % 2 == 0) return std::nullopt;
    if (beta_half.is_zero()) {
        if (!is_unit(alpha)) return std::nullopt;
    } else if (!is_unit(gaussian_gcd(alpha, beta_half))) {
        return std::nullopt;
    }
    const gaussian beta = gaussian{2, 0} * beta_half;
    const auto bez = gaussian_xgcd(alpha, beta);  // s alpha + t beta = g, g a unit
    const gaussian ginv = conj(bez.g);
    gaussian delta = bez.s * ginv;
    gaussian gamma = -(bez.t * ginv);
    // Shift gamma into 2 Z[i]; alpha^-1 = alpha mod 2 for odd alpha.
    const gaussian k = mod2(gamma * mod2(alpha));
    gamma = gamma + k * alpha;
    delta = delta + k * beta;
    const cmat2 xi = gaussian_matrix(alpha, beta, gamma, delta);
    if (!xi_membership(xi)) throw invariant_violation("completed matrix is not in Xi");

    const quad_form f = form_from_vector(anchor);
    const int_mat4 r = rho(xi);
    const std::array<std::int64_t, 4> base{f.A0, f.B0, f.C0, f.D0};
    std::array<std::int64_t, 4> v{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) v[i] = checked_add(v[i], checked_mul(r[i][j], base[j]));
    const std::int64_t a = anchor[0];
    const auto [A, B, C, D] = v;
    return octuple{a, A - a, D - a, A + 2 * C + D - a, A + B + C + D - a};
}

}  // namespace octet
