#pragma once

#include "octet/octuple.hpp"
#include "octet/orbit.hpp"
#include "octet/quadform.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace octet {

enum class admissibility { admissible, inadmissible, unclassified };

struct admissibility_class {
    seed_vector seed;
    int residue;           // b0 mod 4, odd
    std::int64_t modulus;  // a0
};

admissibility_class make_class(const seed_vector& seed);
// Unclassified when gcd(m, a0) > 1; otherwise admissible iff m = b0 mod 4.
admissibility is_admissible(std::int64_t m, const admissibility_class& cls);

struct exception_report {
    std::int64_t bound = 0;
    int residue = 0;
    std::int64_t modulus = 0;
    std::uint64_t admissible_total = 0;
    std::uint64_t found = 0;  // admissible values present
    std::uint64_t inadmissible_found = 0;
    std::vector<std::int64_t> missing;  // admissible values absent, ascending
    std::optional<std::int64_t> largest_missing;
    std::uint64_t unclassified_total = 0;
    std::uint64_t unclassified_found = 0;
    std::map<int, std::uint64_t> unclassified_found_mod4;
    std::map<std::int64_t, std::uint64_t> unclassified_found_by_gcd;  // keyed by gcd(m, a0)
    std::uint64_t curvatures_found = 0;  // all distinct positive curvatures <= bound
    double density_lower_bound = 0;      // (1/4) prod over odd p | a0 of (1 - 1/p)
    enumeration_stats stats;
};

// Throws invariant_violation if an inadmissible value is present.
exception_report verify_local_global(const octuple& seed, std::int64_t N, const enumerate_options& opts = {});
exception_report make_exception_report(const admissibility_class& cls, const curvature_table& table);

struct representability_certificate {
    std::int64_t m = 0;
    std::optional<std::array<std::int64_t, 4>> rep;  // (x, y, z, t)
    std::int64_t value = 0;                          // f(x, y, z, t) = m + a0
    std::optional<octuple> orbit_vector;             // vector of the packing containing m
    bool orbit_vector_verified = false;              // reduces to the packing's root
    std::string note;                                // set when no representation was found
};

representability_certificate certify_representability(const octuple& seed, std::int64_t m,
                                                      double max_steps = 1e9);

}  // namespace octet
