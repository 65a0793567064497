#pragma once

#include "octet/cyclotomic.hpp"
#include "octet/octuple.hpp"
#include "octet/quadform.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace octet {


int_mat4 mul4(const int_mat4& a, const int_mat4& b);
int_mat4 identity4();

// 4x4 integer image acting on columns (A, B, C, D). Throws invalid_input
// when an entry is not a rational integer.
int_mat4 rho(const cmat2& m);

// M1..M6 (index 1..6).
const cmat2& named_matrix(int k);
// g2..g5 (index 2..5).
const int_mat4& g_matrix(int k);
// The pair (a, b) with rho(M_k) = g_a g_b.
std::pair<int, int> g_pair(int k);
// The matrices V and U of the two changes of variables, and the four 4x4
// generators (index 2..5) acting on (b+a, c+a, d+a, w+a).
const int_mat4& v_matrix();
const std::array<std::array<std::int64_t, 5>, 5>& u_matrix();
const int_mat4& gamma_generator(int k);

// Word letters: +k is M_k, -k its inverse.
cmat2 evaluate_word(const std::vector<int>& word);
// rho of a word computed through the g-products.
int_mat4 rho_via_g(const std::vector<int>& word);

struct word_identity {
    std::string label;
    std::vector<int> word;
    cmat2 rhs;
    bool well_defined;  // false when the word uses an undefined letter
};
const std::vector<word_identity>& word_identities();

enum class identity_status { pass, fail, unverifiable };

struct identity_result {
    std::string label;
    identity_status status;
    std::optional<int> unit_power;  // lhs = z^k rhs
    bool rho_matches = false;       // rho(rhs) equals the g-product of the word
    std::string lhs;
};
std::vector<identity_result> verify_word_identities();

// m = I mod 2, or diag(-i, i) m = I mod 2; requires Gaussian entries and det 1.
bool xi_membership(const cmat2& m);

// The eight Xi generators and their inverses, as used by explicit_subset.
std::vector<cmat2> xi_generators();

constexpr std::size_t explicit_subset_budget = 5'000'000;
// Values f(alpha, beta) - a0 over distinct group elements from words of length <= L.
std::set<std::int64_t> explicit_subset(const seed_vector& seed, int L);

// Gram matrix of 2*Delta, Delta(A,B,C,D) = B^2 + C^2 - AD.
const int_mat4& delta_gram();
bool preserves_delta(const int_mat4& r);
std::int64_t det4(const int_mat4& m);

// Completes (alpha, 2*beta_half) to an element of Xi and maps the anchor
// vector through it. The anchor's first entry is fixed; its form is
// form_from_vector(anchor). nullopt when alpha is even or the pair is not coprime.
std::optional<octuple> orbit_vector_from_pair(const octuple& anchor, gaussian alpha, gaussian beta_half);

}  // namespace octet
