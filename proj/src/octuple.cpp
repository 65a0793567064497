#include "octet/octuple.hpp"

#include "octet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

namespace octet {

namespace {

std::string show(const octuple& v) {
    std::string s = "(";
    for (int i = 0; i < 5; ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

std::int64_t mod4(std::int64_t x) { return ((x % 4) + 4) % 4; }

}  // namespace

__int128 curvature_quadratic(const octuple& v) {
    __int128 s = 0, q = 0;
    for (int i = 0; i < 4; ++i) {
        s += v[i];
        q += static_cast<__int128>(v[i]) * v[i];
    }
    __int128 w = v[4];
    return 2 * w * w - 2 * w * s + q;
}

bool satisfies_quadratic(const octuple& v) { return curvature_quadratic(v) == 0; }

std::array<std::int64_t, 8> curvatures(const octuple& v) {
    const std::int64_t w2 = 2 * v[4];
    return {v[0], v[1], v[2], v[3], w2 - v[0], w2 - v[1], w2 - v[2], w2 - v[3]};
}

const int_mat5& generator_matrix(generator g) {
    static const std::array<int_mat5, 5> mats = [] {
        std::array<int_mat5, 5> out{};
        for (int k = 0; k < 4; ++k) {
            int_mat5 m{};
            for (int i = 0; i < 5; ++i) m[i][i] = 1;
            m[k][k] = -1;
            m[k][4] = 2;
            out[k] = m;
        }
        int_mat5 a5{};
        for (int i = 0; i < 4; ++i) {
            a5[i][i] = 1;
            a5[4][i] = 1;
        }
        a5[4][4] = -1;
        out[4] = a5;
        return out;
    }();
    return mats[static_cast<int>(g)];
}

octuple apply_generator(generator g, const octuple& v) {
    octuple r = v;
    if (g == generator::A5) {
        r[4] = v[0] + v[1] + v[2] + v[3] - v[4];
    } else {
        int k = static_cast<int>(g);
        r[k] = 2 * v[4] - v[k];
    }
    return r;
}

octuple apply_word(const std::vector<generator>& word, const octuple& v) {
    octuple r = v;
    for (generator g : word) r = apply_generator(g, r);
    return r;
}

omega_roots solve_omega(std::int64_t b1, std::int64_t b2, std::int64_t b3, std::int64_t b4) {
    // w = (S +- sqrt(S^2 - 2 Q)) / 2
    bigint s = bigint(static_cast<long>(b1)) + b2 + b3 + b4;
    bigint q = bigint(static_cast<long>(b1)) * b1 + bigint(static_cast<long>(b2)) * b2 +
               bigint(static_cast<long>(b3)) * b3 + bigint(static_cast<long>(b4)) * b4;
    bigint disc = s * s - 2 * q;
    if (disc < 0) throw invalid_input("negative discriminant: not a tangent configuration");
    omega_roots out;
    double sq = std::sqrt(disc.get_d());
    out.lo_approx = (s.get_d() - sq) / 2;
    out.hi_approx = (s.get_d() + sq) / 2;
    if (mpz_perfect_square_p(disc.get_mpz_t())) {
        bigint r = sqrt(disc);
        out.is_rational = true;
        out.lo = rational(s - r, 2);
        out.hi = rational(s + r, 2);
        out.lo.canonicalize();
        out.hi.canonicalize();
    }
    return out;
}

std::int64_t content(const octuple& v) {
    std::int64_t g = 0;
    for (auto x : v) g = std::gcd(g, x);
    return g;
}

bool is_primitive(const octuple& v) { return content(v) == 1; }

parity_report check_parity(const octuple& v) {
    parity_report rep;
    for (int i = 0; i < 4; ++i) (v[i] % 2 == 0 ? rep.evens : rep.odds).push_back(v[i]);
    if (rep.evens.size() != 2)
        throw invariant_violation("two-even-two-odd law violated by " + show(v));
    if (mod4(rep.odds[0]) != mod4(rep.odds[1]))
        throw invariant_violation("odd curvatures not congruent mod 4 in " + show(v));
    rep.odd_residue = static_cast<int>(mod4(rep.odds[0]));
    rep.omega_odd = (v[4] % 2 != 0);
    if (!rep.omega_odd) throw invariant_violation("pair average is even in " + show(v));
    for (auto c : curvatures(v))
        if (c % 2 != 0 && mod4(c) != rep.odd_residue)
            throw invariant_violation("odd curvature residue mismatch in " + show(v));
    return rep;
}

void validate_octuple(const octuple& v) {
    if (!satisfies_quadratic(v)) throw invalid_input("octuple " + show(v) + " violates the curvature quadratic");
    int negatives = 0;
    for (auto c : curvatures(v)) negatives += (c < 0);
    if (negatives > 1) throw invalid_input("octuple " + show(v) + " has more than one negative curvature");
}

octuple reduce_to_root(const octuple& v, std::size_t* steps) {
    if (!satisfies_quadratic(v)) throw invalid_input("octuple " + show(v) + " violates the curvature quadratic");
    octuple r = v;
    std::size_t n = 0;
    for (;; ++n) {
        if (n >= reduction_step_cap) throw invalid_input("reduction did not terminate for " + show(v));
        const std::int64_t s = r[0] + r[1] + r[2] + r[3];
        if (2 * r[4] > s) {
            r[4] = s - r[4];
            continue;
        }
        int k = -1;
        for (int i = 0; i < 4; ++i)
            if (r[i] > r[4] && (k < 0 || r[i] > r[k])) k = i;
        if (k >= 0) {
            r[k] = 2 * r[4] - r[k];
            continue;
        }
        break;
    }
    std::sort(r.begin(), r.begin() + 4);
    if (steps) *steps = n;
    return r;
}

bool is_root(const octuple& v) {
    if (!satisfies_quadratic(v)) return false;
    if (!std::is_sorted(v.begin(), v.begin() + 4)) return false;
    if (v[3] > v[4]) return false;
    return 2 * v[4] <= v[0] + v[1] + v[2] + v[3];
}

seed_vector normalize_seed(const octuple& root) {
    if (!is_primitive(root)) throw invalid_input("seed normalization needs a primitive octuple");
    std::array<std::int64_t, 4> q{root[0], root[1], root[2], root[3]};
    std::sort(q.begin(), q.end());
    std::optional<seed_vector> best;
    do {
        if (q[0] % 2 != 0 || q[1] % 2 == 0) continue;
        seed_vector s{q[0] == 0 ? 2 * root[4] : q[0], q[1], q[2], q[3], root[4]};
        if (s.a0 == 0 || s.a0 + s.b0 <= 0) continue;
        auto key = [](const seed_vector& x) { return std::array<std::int64_t, 4>{x.a0, x.b0, x.c0, x.d0}; };
        if (!best || key(s) < key(*best)) best = s;
    } while (std::next_permutation(q.begin(), q.end()));
    if (!best) throw invariant_violation("no valid seed labeling for " + show(root));
    if (!satisfies_quadratic(best->as_octuple())) throw invariant_violation("seed violates the curvature quadratic");
    return *best;
}

}  // namespace octet
