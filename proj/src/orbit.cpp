#include "octet/orbit.hpp"

#include "octet/errors.hpp"
#include "octet/picard.hpp"
#include "octet/quadform.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_set>

namespace octet {

// ---------------------------------------------------------------- table

curvature_table::curvature_table(std::int64_t bound, bool with_multiplicity) : bound_(bound) {
    if (bound < 1) throw invalid_input("bound must be at least 1");
    bits_.assign(static_cast<std::size_t>(bound / 64 + 1), 0);
    if (with_multiplicity) mult_.assign(static_cast<std::size_t>(bound) + 1, 0);
}

void curvature_table::insert(std::int64_t k, std::uint64_t count) {
    if (k > bound_) return;
    auto sat_add = [](std::uint64_t& a, std::uint64_t b) {
        a = (a > std::numeric_limits<std::uint64_t>::max() - b) ? std::numeric_limits<std::uint64_t>::max() : a + b;
    };
    if (k <= 0) {
        nonpositive_.insert(k);
        if (has_multiplicity()) sat_add(nonpositive_mult_[k], count);
        return;
    }
    const auto u = static_cast<std::uint64_t>(k);
    bits_[u >> 6] |= (1ULL << (u & 63));
    if (has_multiplicity()) sat_add(mult_[u], count);
}

bool curvature_table::contains(std::int64_t k) const {
    if (k > bound_) return false;
    if (k <= 0) return nonpositive_.count(k) != 0;
    const auto u = static_cast<std::uint64_t>(k);
    return (bits_[u >> 6] >> (u & 63)) & 1ULL;
}

std::uint64_t curvature_table::multiplicity(std::int64_t k) const {
    if (!has_multiplicity() || k > bound_) return 0;
    if (k <= 0) {
        auto it = nonpositive_mult_.find(k);
        return it == nonpositive_mult_.end() ? 0 : it->second;
    }
    return mult_[static_cast<std::size_t>(k)];
}

void curvature_table::merge(const curvature_table& other) {
    if (other.bound_ != bound_) throw invariant_violation("merging tables with different bounds");
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
    for (auto k : other.nonpositive_) nonpositive_.insert(k);
    if (has_multiplicity() && other.has_multiplicity()) {
        for (std::size_t i = 0; i < mult_.size(); ++i) {
            const std::uint64_t b = other.mult_[i];
            mult_[i] = (mult_[i] > std::numeric_limits<std::uint64_t>::max() - b) ? std::numeric_limits<std::uint64_t>::max()
                                                                                   : mult_[i] + b;
        }
        for (auto [k, c] : other.nonpositive_mult_) nonpositive_mult_[k] += c;
    }
}

void curvature_table::clear_multiplicity() {
    mult_.clear();
    mult_.shrink_to_fit();
    nonpositive_mult_.clear();
}

std::vector<std::int64_t> curvature_table::values() const {
    std::vector<std::int64_t> out(nonpositive_.begin(), nonpositive_.end());
    for (std::size_t w = 0; w < bits_.size(); ++w) {
        std::uint64_t word = bits_[w];
        while (word) {
            const int b = __builtin_ctzll(word);
            out.push_back(static_cast<std::int64_t>(w * 64 + static_cast<std::size_t>(b)));
            word &= word - 1;
        }
    }
    return out;
}

std::size_t curvature_table::positive_count() const {
    std::size_t n = 0;
    for (auto w : bits_) n += static_cast<std::size_t>(__builtin_popcountll(w));
    return n;
}

bool curvature_table::operator==(const curvature_table& other) const {
    return bound_ == other.bound_ && bits_ == other.bits_ && mult_ == other.mult_ &&
           nonpositive_ == other.nonpositive_ && nonpositive_mult_ == other.nonpositive_mult_;
}

std::size_t curvature_table::footprint(std::int64_t bound, bool with_multiplicity) {
    const auto n = static_cast<std::size_t>(bound) + 1;
    return n / 8 + 8 + (with_multiplicity ? 8 * n : 0);
}

// ---------------------------------------------------------------- traversal

namespace {

// Canonical form of an octuple vector: the smaller member of each pair,
// sorted, plus w. Every vector of the orbit except the root has a unique
// parent, reached by reflecting across the face of its four smaller members;
// that parent has smaller w. Walking only parent-to-child edges visits each
// canonical vector once.
struct node {
    std::array<std::int64_t, 4> lows;
    std::int64_t w;
    bool operator==(const node&) const = default;
};

node canonical(const octuple& v) {
    node n{{}, v[4]};
    for (int i = 0; i < 4; ++i) n.lows[i] = std::min(v[i], 2 * v[4] - v[i]);
    std::sort(n.lows.begin(), n.lows.end());
    return n;
}

struct node_hash {
    std::size_t operator()(const node& n) const {
        std::size_t h = static_cast<std::size_t>(n.w) * 0x9E3779B97F4A7C15ULL;
        for (auto x : n.lows) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001B3ULL;
        return h;
    }
};

template <class Out>
void children(const node& v, std::int64_t cap, Out& out) {
    out.clear();
    for (int mask = 0; mask < 16; ++mask) {
        std::array<std::int64_t, 4> face;
        std::int64_t s = 0;
        for (int j = 0; j < 4; ++j) {
            face[j] = ((mask >> j) & 1) ? 2 * v.w - v.lows[j] : v.lows[j];
            s += face[j];
        }
        const std::int64_t w2 = s - v.w;
        if (w2 <= v.w || w2 > cap) continue;
        node c{{}, w2};
        std::int64_t cs = 0;
        for (int j = 0; j < 4; ++j) {
            c.lows[j] = std::min(face[j], 2 * w2 - face[j]);
            cs += c.lows[j];
        }
        std::sort(c.lows.begin(), c.lows.end());
        // Accept only if v is the canonical parent of c.
        const std::int64_t wp = cs - w2;
        if (wp != v.w) continue;
        std::array<std::int64_t, 4> pl;
        for (int j = 0; j < 4; ++j) pl[j] = std::min(c.lows[j], 2 * wp - c.lows[j]);
        std::sort(pl.begin(), pl.end());
        if (pl != v.lows) continue;
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
}

void emit(const node& v, curvature_table& t) {
    for (int j = 0; j < 4; ++j) {
        t.insert(v.lows[j]);
        t.insert(2 * v.w - v.lows[j]);
    }
}

// Depth-first traversal of the subtree below (and including) start.
std::uint64_t traverse_subtree(const node& start, std::int64_t cap, curvature_table& t, std::uint64_t budget,
                               const std::atomic<bool>* abort) {
    std::vector<node> stack{start};
    std::vector<node> kids;
    kids.reserve(16);
    std::uint64_t visited = 0;
    while (!stack.empty()) {
        const node v = stack.back();
        stack.pop_back();
        emit(v, t);
        if (++visited > budget) return visited;
        if (abort && (visited & 0xFFFF) == 0 && abort->load(std::memory_order_relaxed)) return visited;
        children(v, cap, kids);
        for (const auto& c : kids) stack.push_back(c);
    }
    return visited;
}

void check_memory(std::int64_t bound, bool mult, int copies, std::size_t budget_mb) {
    const double need = static_cast<double>(curvature_table::footprint(bound, mult)) * copies;
    const double have = static_cast<double>(budget_mb) * 1024 * 1024;
    if (need > have)
        throw budget_exceeded("bound " + std::to_string(bound) + " needs about " +
                              std::to_string(static_cast<long long>(need / (1024 * 1024)) + 1) +
                              " MB of tables; budget is " + std::to_string(budget_mb) + " MB");
}

curvature_table traverse_parallel(const octuple& root, std::int64_t cap, std::int64_t table_bound, bool mult,
                                  const enumerate_options& opts, std::uint64_t& nodes) {
    const int nt = opts.threads > 0 ? opts.threads : omp_get_max_threads();
    check_memory(table_bound, mult, nt + 1, opts.memory_budget_mb);
    curvature_table table(table_bound, mult);

    // Serial breadth-first expansion near the root. The visited set is a
    // tripwire: the parent rule must never produce a vector twice.
    std::unordered_set<node, node_hash> seen;
    std::vector<node> level{canonical(root)};
    seen.insert(level[0]);
    std::vector<node> kids;
    nodes = 0;
    for (int d = 0; d < opts.dedup_depth && !level.empty(); ++d) {
        std::vector<node> next;
        for (const auto& v : level) {
            emit(v, table);
            ++nodes;
            children(v, cap, kids);
            for (const auto& c : kids) {
                if (!seen.insert(c).second) throw invariant_violation("orbit traversal reached a vector twice");
                next.push_back(c);
            }
        }
        level = std::move(next);
    }
    if (nodes > opts.node_budget) throw budget_exceeded("orbit traversal exceeded the node budget");

    // Independent subtrees, one task each; tables merge by union and addition.
    std::atomic<bool> abort{false};
    std::atomic<std::uint64_t> total{nodes};
    const auto n = static_cast<std::int64_t>(level.size());
#pragma omp parallel num_threads(nt)
    {
        curvature_table local(table_bound, mult);
#pragma omp for schedule(dynamic, 1) nowait
        for (std::int64_t i = 0; i < n; ++i) {
            if (abort.load(std::memory_order_relaxed)) continue;
            const std::uint64_t used = traverse_subtree(level[static_cast<std::size_t>(i)], cap, local,
                                                        opts.node_budget, &abort);
            if (total.fetch_add(used) + used > opts.node_budget) abort.store(true);
        }
#pragma omp critical
        table.merge(local);
    }
    nodes = total.load();
    if (abort.load()) throw budget_exceeded("orbit traversal exceeded the node budget");
    return table;
}

int odd_residue(const octuple& root) {
    for (int i = 0; i < 4; ++i)
        if (root[i] % 2 != 0) return static_cast<int>(((root[i] % 4) + 4) % 4);
    throw invariant_violation("primitive root without odd entries");
}

void odd_residue_tripwire(const curvature_table& t, int residue) {
    for (auto k : t.values())
        if (k % 2 != 0 && ((k % 4) + 4) % 4 != residue)
            throw invariant_violation("odd curvature " + std::to_string(k) + " breaks the common residue mod 4");
}

octuple sorted_root(const octuple& seed) {
    validate_octuple(seed);
    return reduce_to_root(seed);
}

curvature_table scaled(const curvature_table& t, std::int64_t g, std::int64_t N) {
    curvature_table out(N, t.has_multiplicity());
    for (auto k : t.values()) out.insert(k * g, t.has_multiplicity() ? t.multiplicity(k) : 1);
    if (!t.has_multiplicity()) out.clear_multiplicity();
    return out;
}

// Residues mod q taken by the form with x + y odd. A value outside them has
// no witness representation, so its search can be skipped.
struct local_filter {
    std::int64_t q;
    std::vector<bool> hit;
    bool allows(std::int64_t T) const { return hit[static_cast<std::size_t>(T % q)]; }
};

local_filter make_local_filter(const quad_form& f) {
    std::int64_t q = 16;
    for (auto [p, e] : factorize(std::abs(f.a0)))
        if (p != 2 && q * p <= 48) q *= p;
    local_filter out{q, std::vector<bool>(static_cast<std::size_t>(q), false)};
    for (std::int64_t x = 0; x < q; ++x)
        for (std::int64_t y = 0; y < q; ++y) {
            if (((x + y) & 1) == 0) continue;
            for (std::int64_t z = 0; z < q; ++z)
                for (std::int64_t t = 0; t < q; ++t) {
                    const std::int64_t v = eval_form(f, x, y, z, t) % q;
                    out.hit[static_cast<std::size_t>((v + q) % q)] = true;
                }
        }
    return out;
}

bool certify(const octuple& v, const octuple& root) {
    if (!satisfies_quadratic(v)) return false;
    try {
        return reduce_to_root(v) == root;
    } catch (const invalid_input&) {
        return false;
    }
}

curvature_table certified_enumeration(const octuple& root, std::int64_t N, const enumerate_options& opts,
                                      enumeration_stats& stats) {
    const int nt = opts.threads > 0 ? opts.threads : omp_get_max_threads();
    const std::int64_t B = std::min<std::int64_t>(N, std::max<std::int64_t>(opts.traversal_bound, root[4]));
    check_memory(N, false, 2, opts.memory_budget_mb);
    enumerate_options inner = opts;
    std::uint64_t nodes = 0;
    curvature_table table(N, false);
    table.merge(traverse_parallel(root, B, N, false, inner, nodes));
    stats.nodes = nodes;
    stats.traversal_bound = B;
    if (B == N) return table;

    const int residue = odd_residue(root);
    auto excluded = [&](std::int64_t m) { return m % 2 != 0 && m % 4 != residue; };
    const auto anchors = witness_anchors(root);
    std::vector<quad_form> forms;
    std::vector<local_filter> filters;
    for (const auto& a : anchors) {
        forms.push_back(form_from_vector(a));
        filters.push_back(make_local_filter(forms.back()));
    }

    // Ascending chunks: a chunk only skips values settled by earlier chunks,
    // so the outcome does not depend on scheduling.
    const std::int64_t chunk = 4096;
    std::vector<std::int64_t> unresolved;
    for (std::int64_t lo = B + 1; lo <= N; lo += chunk) {
        const std::int64_t hi = std::min(N, lo + chunk - 1);
        std::vector<std::int64_t> todo;
        for (std::int64_t m = lo; m <= hi; ++m)
            if (!excluded(m) && !table.contains(m)) todo.push_back(m);
        const auto n = static_cast<std::int64_t>(todo.size());
        std::vector<std::vector<octuple>> found(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 8) num_threads(nt)
        for (std::int64_t i = 0; i < n; ++i) {
            const std::int64_t m = todo[static_cast<std::size_t>(i)];
            for (std::size_t k = 0; k < anchors.size(); ++k) {
                const std::int64_t a = anchors[k][0];
                if (((m + a) & 1) == 0 || m + a <= 0 || !filters[k].allows(m + a)) continue;
                const auto search = find_primitive_representation(forms[k], m + a, opts.witness_effort);
                if (!search.rep) continue;
                const auto& r = *search.rep;
                const auto v = orbit_vector_from_pair(anchors[k], {r[0], r[1]}, {r[2], r[3]});
                if (v && (*v)[1] == m && certify(*v, root)) {
                    found[static_cast<std::size_t>(i)].push_back(*v);
                    break;
                }
            }
        }
        for (std::int64_t i = 0; i < n; ++i) {
            if (found[static_cast<std::size_t>(i)].empty()) {
                unresolved.push_back(todo[static_cast<std::size_t>(i)]);
                continue;
            }
            ++stats.witness_values;
            for (const auto& v : found[static_cast<std::size_t>(i)])
                for (auto c : curvatures(v)) table.insert(c);
        }
    }
    // A value left open here may still have been settled by a later witness.
    std::erase_if(unresolved, [&](std::int64_t m) { return table.contains(m); });
    if (!unresolved.empty()) {
        // Every curvature m first appears in an octuple with w <= m, so a
        // traversal to the largest open value settles all of them.
        const std::int64_t cap = unresolved.back();
        stats.fallback_values = unresolved.size();
        curvature_table extra = traverse_parallel(root, cap, N, false, inner, nodes);
        stats.nodes += nodes;
        table.merge(extra);
    }
    return table;
}

}  // namespace

std::vector<octuple> witness_anchors(const octuple& root) {
    std::vector<octuple> out;
    std::set<std::array<std::int64_t, 5>> seen;  // (a, A0, B0, C0, D0)
    std::array<int, 4> idx{0, 1, 2, 3};
    const std::int64_t w = root[4];
    do {
        for (int mask = 0; mask < 16; ++mask) {
            octuple v{};
            for (int j = 0; j < 4; ++j) {
                const std::int64_t x = root[idx[j]];
                v[j] = ((mask >> j) & 1) ? 2 * w - x : x;
            }
            v[4] = w;
            if (v[0] == 0 || v[0] + v[1] <= 0 || (v[0] + v[1]) % 2 == 0) continue;
            const quad_form f = form_from_vector(v);
            if (!seen.insert({f.a0, f.A0, f.B0, f.C0, f.D0}).second) continue;
            out.push_back(v);
        }
    } while (std::next_permutation(idx.begin(), idx.end()));
    // Cheaper searches first: smaller box volume.
    std::stable_sort(out.begin(), out.end(), [](const octuple& x, const octuple& y) {
        const quad_form fx = form_from_vector(x), fy = form_from_vector(y);
        return fx.A0 * fx.D0 < fy.A0 * fy.D0;
    });
    return out;
}

curvature_table enumerate_curvatures(const octuple& seed, std::int64_t N, const enumerate_options& opts,
                                     enumeration_stats* stats) {
    if (N < 1) throw invalid_input("bound must be at least 1");
    if (opts.dedup_depth < 0) throw invalid_input("dedup depth must be non-negative");
    const octuple root = sorted_root(seed);
    const std::int64_t g = content(root);
    enumeration_stats local_stats;
    enumeration_stats& st = stats ? *stats : local_stats;
    st = {};
    if (g != 1) {
        octuple prim = root;
        for (auto& x : prim) x /= g;
        return scaled(enumerate_curvatures(prim, std::max<std::int64_t>(N / g, 1), opts, &st), g, N);
    }
    curvature_table table(N, false);
    if (opts.mode == enumeration_mode::traversal) {
        std::uint64_t nodes = 0;
        table = traverse_parallel(root, N, N, opts.multiplicity, opts, nodes);
        st.nodes = nodes;
        st.traversal_bound = N;
    } else {
        table = certified_enumeration(root, N, opts, st);
    }
    odd_residue_tripwire(table, odd_residue(root));
    return table;
}

curvature_table enumerate_curvatures_serial(const octuple& seed, std::int64_t N, bool multiplicity) {
    if (N < 1) throw invalid_input("bound must be at least 1");
    const octuple root = sorted_root(seed);
    const std::int64_t g = content(root);
    if (g != 1) {
        octuple prim = root;
        for (auto& x : prim) x /= g;
        return scaled(enumerate_curvatures_serial(prim, std::max<std::int64_t>(N / g, 1), multiplicity), g, N);
    }
    curvature_table table(N, multiplicity);
    traverse_subtree(canonical(root), N, table, std::numeric_limits<std::uint64_t>::max(), nullptr);
    return table;
}

std::set<octuple> enumerate_exhaustive(const octuple& seed, int depth) {
    if (depth < 0 || depth > 8) throw invalid_input("exhaustive depth must be in 0..8");
    validate_octuple(seed);
    auto key = [](octuple v) {
        std::sort(v.begin(), v.begin() + 4);
        return v;
    };
    std::set<octuple> seen{key(seed)};
    std::vector<octuple> level{key(seed)};
    for (int d = 0; d < depth; ++d) {
        std::vector<octuple> next;
        for (const auto& v : level)
            for (int g = 0; g < 5; ++g) {
                const octuple u = key(apply_generator(static_cast<generator>(g), v));
                if (seen.insert(u).second) next.push_back(u);
            }
        level = std::move(next);
    }
    return seen;
}

std::set<std::int64_t> exhaustive_curvatures(const octuple& seed, std::int64_t N) {
    if (N < 1) throw invalid_input("bound must be at least 1");
    validate_octuple(seed);
    auto key = [](octuple v) {
        std::sort(v.begin(), v.begin() + 4);
        return v;
    };
    auto pass = [&](std::int64_t cap) {
        std::set<octuple> seen{key(seed)};
        std::vector<octuple> frontier{key(seed)};
        std::set<std::int64_t> out;
        while (!frontier.empty()) {
            const octuple v = frontier.back();
            frontier.pop_back();
            for (auto c : curvatures(v))
                if (c <= N) out.insert(c);
            for (int g = 0; g < 5; ++g) {
                const octuple u = key(apply_generator(static_cast<generator>(g), v));
                if (u[4] > cap) continue;
                if (seen.insert(u).second) frontier.push_back(u);
            }
        }
        return out;
    };
    std::int64_t cap = std::max(N, seed[4]);
    auto prev = pass(cap);
    for (int round = 0; round < 6; ++round) {
        cap *= 2;
        auto cur = pass(cap);
        if (cur == prev) return cur;
        prev = std::move(cur);
    }
    throw budget_exceeded("exhaustive search did not stabilise");
}

}  // namespace octet
