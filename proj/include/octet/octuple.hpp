#pragma once

#include "octet/rational.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace octet {

// (a, b, c, d, omega): four curvatures and the pair average.
using octuple = std::array<std::int64_t, 5>;

enum class generator { A1 = 0, A2, A3, A4, A5 };

using int_mat5 = std::array<std::array<int, 5>, 5>;

// 2w^2 - 2w(a+b+c+d) + a^2 + b^2 + c^2 + d^2, computed without overflow.
__int128 curvature_quadratic(const octuple& v);
bool satisfies_quadratic(const octuple& v);

// {a, b, c, d, 2w-a, 2w-b, 2w-c, 2w-d}
std::array<std::int64_t, 8> curvatures(const octuple& v);

const int_mat5& generator_matrix(generator g);
octuple apply_generator(generator g, const octuple& v);
octuple apply_word(const std::vector<generator>& word, const octuple& v);

struct omega_roots {
    bool is_rational = false;
    rational lo, hi;  // set when is_rational
    double lo_approx = 0, hi_approx = 0;
};

// Roots of 2w^2 - 2w.S + sum b_i^2 = 0, smaller first.
omega_roots solve_omega(std::int64_t b1, std::int64_t b2, std::int64_t b3, std::int64_t b4);

std::int64_t content(const octuple& v);  // gcd of all five entries
bool is_primitive(const octuple& v);

struct parity_report {
    std::vector<std::int64_t> evens;
    std::vector<std::int64_t> odds;
    int odd_residue = 0;  // common residue of the odd curvatures mod 4
    bool omega_odd = false;
};

// Throws invariant_violation naming the broken parity law.
parity_report check_parity(const octuple& v);

// Throws invalid_input unless the quadratic holds and at most one of the
// eight curvatures is negative.
void validate_octuple(const octuple& v);

constexpr std::size_t reduction_step_cap = 1'000'000;

// Orbit representative with a <= b <= c <= d <= w and 2w <= a+b+c+d.
octuple reduce_to_root(const octuple& v, std::size_t* steps = nullptr);
bool is_root(const octuple& v);

struct seed_vector {
    std::int64_t a0, b0, c0, d0, omega0;
    bool operator==(const seed_vector&) const = default;
    octuple as_octuple() const { return {a0, b0, c0, d0, omega0}; }
};

// Relabels a primitive root so a0 is even and nonzero, b0 odd, a0+b0 > 0.
seed_vector normalize_seed(const octuple& root);

}  // namespace octet
