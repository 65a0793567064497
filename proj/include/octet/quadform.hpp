#pragma once

#include "octet/gaussian.hpp"
#include "octet/octuple.hpp"
#include "octet/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace octet {

// f(x,y,z,t) = A0(x^2+y^2) + 4 D0 (z^2+t^2) + 4 B0 (x t - y z) + 4 C0 (x z + y t)
struct quad_form {
    std::int64_t A0, B0, C0, D0, a0;
    bool operator==(const quad_form&) const = default;
};

quad_form build_form(const seed_vector& seed);
// Same construction for any orbit vector (a, b, c, d, w) with a != 0 and a + b odd
// and positive; a plays the role of a0.
quad_form form_from_vector(const octuple& v);
std::int64_t eval_form(const quad_form& f, std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t t);
// Same form in Gaussian variables alpha = x + iy, beta = z + it.
std::int64_t eval_form(const quad_form& f, gaussian alpha, gaussian beta);

using int_mat4 = std::array<std::array<std::int64_t, 4>, 4>;
int_mat4 gram_matrix(const quad_form& f);  // f(v) = v^t G v
bigint gram_determinant(const quad_form& f);

// x^2 + y^2 <= alpha_norm and z^2 + t^2 <= beta_norm for every solution of f <= m.
struct search_box {
    std::int64_t alpha_norm;
    std::int64_t beta_norm;
};
search_box search_bounds(const quad_form& f, std::int64_t m);

// Per-value searches refuse when the estimated work exceeds this.
constexpr double default_search_budget = 4e9;

// Exact number of integer solutions of f = m.
std::uint64_t count_representations(const quad_form& f, std::int64_t m, double budget = default_search_budget);

// Counts for every value 0..M at once. The OpenMP kernel and its serial
// reference must agree exactly.
std::vector<std::uint64_t> representation_histogram(const quad_form& f, std::int64_t M, int threads = 0);
std::vector<std::uint64_t> representation_histogram_serial(const quad_form& f, std::int64_t M);

enum class primitive_method { direct, moebius };

// Primitive representations counted up to the four Gaussian units, so that
// 4 * sum over ideals of N_P(m / N(I)) = N(m).
std::uint64_t count_primitive(const quad_form& f, std::int64_t m, primitive_method method,
                              double budget = default_search_budget);

// Unit-class primitive counts for 0..M: direct gcd filtering.
std::vector<std::uint64_t> primitive_histogram_direct(const quad_form& f, std::int64_t M, int threads = 0);
// Unit-class primitive counts obtained from a representation histogram by inversion.
std::vector<std::uint64_t> primitive_from_histogram(const std::vector<std::uint64_t>& reps);

// Lexicographically greatest (x, y, z, t) with f = T, x and y of different
// parity and gcd(x + iy, z + it) a unit. Scans at most max_steps (x, y, z)
// triples; complete is false when the scan stopped early.
struct representation_search {
    std::optional<std::array<std::int64_t, 4>> rep;
    bool complete = false;
    std::uint64_t steps = 0;
};
representation_search find_primitive_representation(const quad_form& f, std::int64_t T, double max_steps);

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t m);

// Squarefree ideals of Z[i] with norm dividing m, grouped by norm.
struct ideal_term {
    std::int64_t norm;
    int mu;
    int multiplicity;
    bool operator==(const ideal_term&) const = default;
};
std::vector<ideal_term> moebius_ideals(std::int64_t m);

// Number of x in (Z/qZ)^4 with f(x) = m mod q.
std::uint64_t count_mod(const quad_form& f, std::int64_t m, std::int64_t q);

rational local_density(const quad_form& f, std::int64_t m, std::int64_t p);

// S(m) = ratio * prod_p (1 - p^-2) = ratio * 6/pi^2.
struct singular_series_value {
    rational ratio;
    double value;
};
singular_series_value singular_series(const quad_form& f, std::int64_t m);

// Product of the primitive-count correction factors at primes dividing m.
rational primitive_correction(std::int64_t m);

// Predicted unit-class primitive count; exact is m-linear rational with pi cancelled.
struct main_term_value {
    rational exact;
    double value;
};
main_term_value main_term(const quad_form& f, std::int64_t m);

struct density_report {
    std::int64_t m;
    std::map<std::int64_t, rational> deltas;
    singular_series_value series;
    std::optional<main_term_value> main;  // only when gcd(m, disc) = 1
    std::uint64_t representation_count;
    std::uint64_t primitive_count;
};
density_report make_density_report(const quad_form& f, std::int64_t m);

}  // namespace octet
