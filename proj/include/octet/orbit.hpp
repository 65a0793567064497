#pragma once

#include "octet/octuple.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace octet {

// Membership over 1..N as a bitmap, non-positive curvatures kept apart,
// optional saturating multiplicities.
class curvature_table {
public:
    curvature_table(std::int64_t bound, bool with_multiplicity);

    std::int64_t bound() const { return bound_; }
    bool has_multiplicity() const { return !mult_.empty(); }

    void insert(std::int64_t k, std::uint64_t count = 1);
    bool contains(std::int64_t k) const;
    std::uint64_t multiplicity(std::int64_t k) const;
    void merge(const curvature_table& other);
    void clear_multiplicity();

    std::vector<std::int64_t> values() const;  // ascending, non-positive first
    std::size_t positive_count() const;
    const std::set<std::int64_t>& nonpositive() const { return nonpositive_; }
    const std::vector<std::uint64_t>& bits() const { return bits_; }  // bit k = curvature k, k >= 1

    bool operator==(const curvature_table& other) const;

    // Bytes needed for a table with this bound.
    static std::size_t footprint(std::int64_t bound, bool with_multiplicity);

private:
    std::int64_t bound_;
    std::vector<std::uint64_t> bits_;
    std::vector<std::uint64_t> mult_;
    std::set<std::int64_t> nonpositive_;
    std::map<std::int64_t, std::uint64_t> nonpositive_mult_;
};

enum class enumeration_mode {
    // Full orbit traversal to the bound. Exact, with multiplicities.
    traversal,
    // Traversal to a smaller bound, then reduction-checked witnesses for the
    // remaining values, with traversal as the fallback. Exact, membership only.
    certified,
};

struct enumerate_options {
    enumeration_mode mode = enumeration_mode::certified;
    int threads = 0;       // 0: OpenMP default
    int dedup_depth = 4;   // levels expanded serially before the parallel split
    std::int64_t traversal_bound = 2048;  // certified mode only
    bool multiplicity = true;             // traversal mode only
    std::size_t memory_budget_mb = 1024;
    std::uint64_t node_budget = 4'000'000'000ULL;
    double witness_effort = 2e6;  // per value and anchor
};

struct enumeration_stats {
    std::uint64_t nodes = 0;
    std::int64_t traversal_bound = 0;
    std::uint64_t witness_values = 0;
    std::uint64_t fallback_values = 0;
};

// Exactly the curvatures <= N of the packing generated by the seed.
curvature_table enumerate_curvatures(const octuple& seed, std::int64_t N, const enumerate_options& opts = {},
                                     enumeration_stats* stats = nullptr);

// Single-threaded traversal to N: the reference for the parallel kernel.
curvature_table enumerate_curvatures_serial(const octuple& seed, std::int64_t N, bool multiplicity = true);

// Distinct vectors, keyed with sorted curvatures, reachable by words of
// length <= depth. depth <= 8.
std::set<octuple> enumerate_exhaustive(const octuple& seed, int depth);

// Curvatures <= N by breadth-first search over the raw generators with a
// visited set and a cap on w that doubles until nothing new appears.
std::set<std::int64_t> exhaustive_curvatures(const octuple& seed, std::int64_t N);

// The vectors used as witness anchors for a primitive root.
std::vector<octuple> witness_anchors(const octuple& root);

}  // namespace octet
