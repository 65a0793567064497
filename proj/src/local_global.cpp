#include "octet/local_global.hpp"

#include "octet/errors.hpp"
#include "octet/picard.hpp"

#include <numeric>

namespace octet {

namespace {

int mod4(std::int64_t x) { return static_cast<int>(((x % 4) + 4) % 4); }

seed_vector seed_of(const octuple& v) {
    validate_octuple(v);
    const octuple root = reduce_to_root(v);
    if (!is_primitive(root)) throw invalid_input("the local-global check needs a primitive packing");
    return normalize_seed(root);
}

}  // namespace

admissibility_class make_class(const seed_vector& seed) {
    if (seed.b0 % 2 == 0) throw invalid_input("seed b0 must be odd");
    return {seed, mod4(seed.b0), seed.a0 < 0 ? -seed.a0 : seed.a0};
}

admissibility is_admissible(std::int64_t m, const admissibility_class& cls) {
    if (m < 1) throw invalid_input("admissibility is defined for m >= 1");
    if (std::gcd(m, cls.modulus) > 1) return admissibility::unclassified;
    return mod4(m) == cls.residue ? admissibility::admissible : admissibility::inadmissible;
}

exception_report make_exception_report(const admissibility_class& cls, const curvature_table& table) {
    exception_report r;
    r.bound = table.bound();
    r.residue = cls.residue;
    r.modulus = cls.modulus;
    for (std::int64_t m = 1; m <= table.bound(); ++m) {
        const bool present = table.contains(m);
        r.curvatures_found += present;
        switch (is_admissible(m, cls)) {
            case admissibility::admissible:
                ++r.admissible_total;
                if (present) ++r.found;
                else r.missing.push_back(m);
                break;
            case admissibility::inadmissible:
                if (present) ++r.inadmissible_found;
                break;
            case admissibility::unclassified:
                ++r.unclassified_total;
                if (present) {
                    ++r.unclassified_found;
                    ++r.unclassified_found_mod4[mod4(m)];
                    ++r.unclassified_found_by_gcd[std::gcd(m, cls.modulus)];
                }
                break;
        }
    }
    if (!r.missing.empty()) r.largest_missing = r.missing.back();
    double lb = 0.25;
    for (auto [p, e] : factorize(cls.modulus))
        if (p != 2) lb *= 1.0 - 1.0 / static_cast<double>(p);
    r.density_lower_bound = lb;
    return r;
}

exception_report verify_local_global(const octuple& seed, std::int64_t N, const enumerate_options& opts) {
    const admissibility_class cls = make_class(seed_of(seed));
    enumeration_stats stats;
    const curvature_table table = enumerate_curvatures(seed, N, opts, &stats);
    exception_report r = make_exception_report(cls, table);
    r.stats = stats;
    if (r.inadmissible_found > 0)
        throw invariant_violation(std::to_string(r.inadmissible_found) + " inadmissible curvatures present below " +
                                  std::to_string(N));
    return r;
}

representability_certificate certify_representability(const octuple& seed, std::int64_t m, double max_steps) {
    const seed_vector s = seed_of(seed);
    const admissibility_class cls = make_class(s);
    if (m < 1 || is_admissible(m, cls) != admissibility::admissible)
        throw invalid_input(std::to_string(m) + " is not admissible");
    if (std::gcd(m + s.a0, 2 * s.a0) != 1) throw invalid_input("m + a0 shares a factor with the discriminant");
    const quad_form f = build_form(s);
    representability_certificate c;
    c.m = m;
    const auto search = find_primitive_representation(f, m + s.a0, max_steps);
    if (!search.rep) {
        c.note = search.complete ? "no primitive representation of " + std::to_string(m + s.a0) +
                                       "; m may still be a curvature through other orbit coordinates"
                                 : "search budget exhausted before a representation was found";
        return c;
    }
    const auto& r = *search.rep;
    c.rep = r;
    c.value = eval_form(f, r[0], r[1], r[2], r[3]);
    if (c.value != m + s.a0) throw invariant_violation("certificate does not evaluate to m + a0");
    c.orbit_vector = orbit_vector_from_pair(s.as_octuple(), {r[0], r[1]}, {r[2], r[3]});
    if (c.orbit_vector) {
        const octuple root = reduce_to_root(s.as_octuple());
        c.orbit_vector_verified = satisfies_quadratic(*c.orbit_vector) && reduce_to_root(*c.orbit_vector) == root;
    }
    return c;
}

}  // namespace octet
