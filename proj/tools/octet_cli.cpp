#include "octet/errors.hpp"
#include "octet/geometry.hpp"
#include "octet/io.hpp"
#include "octet/local_global.hpp"
#include "octet/octuple.hpp"
#include "octet/orbit.hpp"
#include "octet/picard.hpp"
#include "octet/quadform.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>

namespace {

using namespace octet;

constexpr int max_geometry_depth = 6;
constexpr std::size_t geometry_budget = 200'000;

// Flags shared by the subcommands; unset values fall back to the config file.
struct run_flags {
    std::string octuple_text;
    std::string seed_file;
    std::string config_file;
    std::string out;
    std::string format;
    std::string mode;
    std::string quad_file;
    std::optional<std::int64_t> bound;
    std::optional<int> threads;
    std::optional<int> dedup_depth;
    std::optional<std::int64_t> m;
    std::optional<int> depth;
    std::optional<std::size_t> memory_mb;
};

struct run_config {
    std::optional<octuple> seed;
    std::int64_t bound = 0;
    enumerate_options opts;
    std::string out;
    std::string format = "json";
    std::optional<std::int64_t> m;
    int depth = 1;
    std::string quad_file;
};

octuple read_seed_file(const std::string& path) {
    const std::string text = read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            return octuple_from_json(json::parse(text));
        } catch (const json::exception& e) {
            throw invalid_input(std::string("bad seed file: ") + e.what());
        }
    }
    return parse_octuple_list(text);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return static_cast<T>(v);
    } catch (const std::exception&) {
        throw invalid_input("bad value for " + key + ": " + value);
    }
}

enumeration_mode parse_mode(const std::string& s) {
    if (s == "certified") return enumeration_mode::certified;
    if (s == "traversal") return enumeration_mode::traversal;
    throw invalid_input("mode must be certified or traversal");
}

run_config resolve(const run_flags& f) {
    std::map<std::string, std::string> cfg;
    if (!f.config_file.empty()) cfg = parse_config(read_file(f.config_file));
    static const std::set<std::string> known{"octuple", "seed_file",  "bound", "threads", "dedup_depth", "mode",
                                             "format",  "out",        "m",     "depth",   "memory_budget_mb",
                                             "quad_file"};
    for (const auto& [k, v] : cfg)
        if (!known.count(k)) throw invalid_input("unknown config key " + k);

    run_config rc;
    if (const char* env = std::getenv("OCTET_MEM_BUDGET_MB"))
        rc.opts.memory_budget_mb = parse_number<std::size_t>("OCTET_MEM_BUDGET_MB", env);
    if (cfg.count("memory_budget_mb")) rc.opts.memory_budget_mb = parse_number<std::size_t>("memory_budget_mb", cfg["memory_budget_mb"]);
    if (f.memory_mb) rc.opts.memory_budget_mb = *f.memory_mb;
    if (rc.opts.memory_budget_mb == 0) throw invalid_input("memory budget must be positive");

    if (!f.octuple_text.empty()) rc.seed = parse_octuple_list(f.octuple_text);
    else if (!f.seed_file.empty()) rc.seed = read_seed_file(f.seed_file);
    else if (cfg.count("octuple")) rc.seed = parse_octuple_list(cfg["octuple"]);
    else if (cfg.count("seed_file")) rc.seed = read_seed_file(cfg["seed_file"]);

    if (f.bound) rc.bound = *f.bound;
    else if (cfg.count("bound")) rc.bound = parse_number<std::int64_t>("bound", cfg["bound"]);
    if (f.threads) rc.opts.threads = *f.threads;
    else if (cfg.count("threads")) rc.opts.threads = parse_number<int>("threads", cfg["threads"]);
    if (f.dedup_depth) rc.opts.dedup_depth = *f.dedup_depth;
    else if (cfg.count("dedup_depth")) rc.opts.dedup_depth = parse_number<int>("dedup_depth", cfg["dedup_depth"]);
    if (!f.mode.empty()) rc.opts.mode = parse_mode(f.mode);
    else if (cfg.count("mode")) rc.opts.mode = parse_mode(cfg["mode"]);
    if (!f.format.empty()) rc.format = f.format;
    else if (cfg.count("format")) rc.format = cfg["format"];
    rc.out = !f.out.empty() ? f.out : (cfg.count("out") ? cfg["out"] : "");
    if (f.m) rc.m = *f.m;
    else if (cfg.count("m")) rc.m = parse_number<std::int64_t>("m", cfg["m"]);
    if (f.depth) rc.depth = *f.depth;
    else if (cfg.count("depth")) rc.depth = parse_number<int>("depth", cfg["depth"]);
    rc.quad_file = !f.quad_file.empty() ? f.quad_file : (cfg.count("quad_file") ? cfg["quad_file"] : "");

    if (rc.opts.threads < 0) throw invalid_input("threads must be non-negative");
    if (rc.opts.dedup_depth < 0) throw invalid_input("dedup depth must be non-negative");
    if (rc.format != "json" && rc.format != "csv" && rc.format != "bitmap") throw invalid_input("format must be json, csv or bitmap");
    return rc;
}

const octuple& need_seed(const run_config& rc) {
    if (!rc.seed) throw invalid_input("no seed given; use --octuple, --seed-file or --config");
    validate_octuple(*rc.seed);
    return *rc.seed;
}

std::int64_t need_bound(const run_config& rc) {
    if (rc.bound < 1) throw invalid_input("bound must be at least 1");
    return rc.bound;
}

void emit(const run_config& rc, const std::string& data) {
    if (rc.out.empty()) std::cout << data << std::flush;
    else write_file(rc.out, data);
}

seed_vector primitive_seed(const octuple& v) {
    const octuple root = reduce_to_root(v);
    if (!is_primitive(root)) throw invalid_input("packing is not primitive; divide by gcd " + std::to_string(content(root)));
    return normalize_seed(root);
}

int cmd_root(const run_config& rc) {
    const octuple& v = need_seed(rc);
    const octuple root = reduce_to_root(v);
    json out{{"root", json::array({root[0], root[1], root[2], root[3], root[4]})}};
    if (is_primitive(root)) {
        out["seed"] = seed_to_json(normalize_seed(root));
    } else {
        out["seed"] = nullptr;
        out["gcd"] = content(root);
    }
    emit(rc, out.dump() + "\n");
    return 0;
}

int cmd_enumerate(const run_config& rc) {
    const octuple& v = need_seed(rc);
    enumeration_stats stats;
    const auto table = enumerate_curvatures(v, need_bound(rc), rc.opts, &stats);
    if (rc.format == "bitmap") emit(rc, table_to_bitmap(table));
    else if (rc.format == "csv") emit(rc, table_to_csv(table));
    else emit(rc, table_to_json(table).dump() + "\n");
    return 0;
}

int cmd_verify(const run_config& rc, const std::string& missing_path) {
    const octuple& v = need_seed(rc);
    const auto report = verify_local_global(v, need_bound(rc), rc.opts);
    if (!missing_path.empty()) write_file(missing_path, missing_csv(report));
    if (rc.format == "csv") emit(rc, missing_csv(report));
    else emit(rc, exception_report_to_json(report).dump(2) + "\n");
    return 0;
}

int cmd_reps(const run_config& rc) {
    const seed_vector seed = primitive_seed(need_seed(rc));
    if (!rc.m || *rc.m < 1) throw invalid_input("reps needs --m >= 1");
    const quad_form f = build_form(seed);
    json out = density_report_to_json(make_density_report(f, *rc.m));
    out["form"] = form_to_json(f);
    emit(rc, out.dump(2) + "\n");
    return 0;
}

int cmd_form(const run_config& rc) {
    const seed_vector seed = primitive_seed(need_seed(rc));
    emit(rc, form_to_json(build_form(seed)).dump() + "\n");
    return 0;
}

std::array<sphere, 4> read_quadruple(const std::string& path) {
    if (path.empty()) return reference_quadruple();
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw invalid_input(std::string("bad quadruple file: ") + e.what());
    }
    if (!j.is_array() || j.size() != 4) throw invalid_input("quadruple file must hold an array of four spheres");
    return {sphere_from_json(j[0]), sphere_from_json(j[1]), sphere_from_json(j[2]), sphere_from_json(j[3])};
}

int cmd_geometry(const run_config& rc) {
    if (rc.depth < 0 || rc.depth > max_geometry_depth)
        throw invalid_input("geometry depth must be between 0 and " + std::to_string(max_geometry_depth));
    const auto quad = read_quadruple(rc.quad_file);
    json out{{"depth", rc.depth}};
    std::set<vec5> spheres;
    for (const auto& s : quad) spheres.insert(s.coords());
    std::size_t octuples = 0;
    if (rc.depth >= 1) {
        const gap_fill fill = fill_gap(quad);
        if (!fill.exact) {
            // Only approximate pair averages exist; no exact spheres to expand.
            json ws = json::array();
            for (const auto& w : fill.numeric_w) ws.push_back(w);
            out["exact"] = false;
            out["numeric_w"] = ws;
        } else {
            out["exact"] = true;
            std::set<vec5> seen{fill.first->w()};
            std::vector<f_matrix> level{*fill.first};
            for (int d = 1; d <= rc.depth && !level.empty(); ++d) {
                std::vector<f_matrix> next;
                for (const auto& F : level) {
                    ++octuples;
                    for (const auto& s : F.spheres()) spheres.insert(s.coords());
                    if (d == rc.depth) continue;
                    for (int g = 0; g < 5; ++g) {
                        f_matrix G = F.acted(generator_matrix(static_cast<generator>(g)));
                        if (seen.insert(G.w()).second) next.push_back(G);
                    }
                }
                if (seen.size() > geometry_budget) throw budget_exceeded("geometry expansion exceeds its octuple budget");
                level = std::move(next);
            }
        }
    }
    json list = json::array();
    for (const auto& c : spheres) list.push_back(sphere_to_json(sphere::from_coords(c)));
    out["octuples"] = octuples;
    out["spheres"] = list;
    emit(rc, out.dump(2) + "\n");
    return 0;
}

int cmd_picard_check(const run_config& rc) {
    std::string table;
    int required = 0, passed = 0;
    for (const auto& r : verify_word_identities()) {
        std::string status = "UNVERIFIABLE";
        if (r.status != identity_status::unverifiable) {
            ++required;
            if (r.status == identity_status::pass) ++passed;
            status = r.status == identity_status::pass ? "PASS" : "FAIL";
        }
        table += status + "  " + r.label;
        if (r.status == identity_status::fail) table += "  (left side " + r.lhs + ")";
        table += "\n";
    }
    table += std::to_string(passed) + "/" + std::to_string(required) + " identities verified\n";
    emit(rc, table);
    return passed == required ? 0 : 4;
}

void add_seed_flags(CLI::App* sub, run_flags& f) {
    sub->add_option("--octuple", f.octuple_text, "curvature vector a,b,c,d,omega");
    sub->add_option("--seed-file", f.seed_file, "file holding an octuple (JSON or a,b,c,d,omega)");
    sub->add_option("--config", f.config_file, "key=value configuration file");
    sub->add_option("--out", f.out, "output path (default stdout)");
}

void add_run_flags(CLI::App* sub, run_flags& f) {
    sub->add_option("--bound", f.bound, "largest curvature N");
    sub->add_option("--threads", f.threads, "OpenMP threads (0: default)");
    sub->add_option("--dedup-depth", f.dedup_depth, "levels expanded serially before the parallel split");
    sub->add_option("--mode", f.mode, "certified or traversal");
    sub->add_option("--memory-mb", f.memory_mb, "table memory budget in MB");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Curvatures of octahedral sphere packings"};
    app.require_subcommand(1);
    run_flags f;
    std::string missing_path;

    auto* root = app.add_subcommand("root", "reduce an octuple to its root and seed vector");
    add_seed_flags(root, f);
    auto* enumerate = app.add_subcommand("enumerate", "curvatures up to a bound");
    add_seed_flags(enumerate, f);
    add_run_flags(enumerate, f);
    enumerate->add_option("--format", f.format, "json, csv or bitmap");
    auto* verify = app.add_subcommand("verify", "admissible values present and missing up to a bound");
    add_seed_flags(verify, f);
    add_run_flags(verify, f);
    verify->add_option("--format", f.format, "json, or csv for the missing values");
    verify->add_option("--missing-csv", missing_path, "also write the missing values as CSV");
    auto* reps = app.add_subcommand("reps", "representation counts and local densities at m");
    add_seed_flags(reps, f);
    reps->add_option("--m", f.m, "value to represent");
    auto* form = app.add_subcommand("form", "quadratic form of a seed");
    add_seed_flags(form, f);
    auto* geometry = app.add_subcommand("geometry", "spheres reached from a tangent quadruple");
    geometry->add_option("--quad-file", f.quad_file, "JSON array of four spheres (default: reference quadruple)");
    geometry->add_option("--depth", f.depth, "expansion depth, 0 to 6");
    geometry->add_option("--config", f.config_file, "key=value configuration file");
    geometry->add_option("--out", f.out, "output path (default stdout)");
    auto* picard = app.add_subcommand("picard-check", "verify the matrix word identities");
    picard->add_option("--out", f.out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const run_config rc = resolve(f);
        if (*root) return cmd_root(rc);
        if (*enumerate) return cmd_enumerate(rc);
        if (*verify) return cmd_verify(rc, missing_path);
        if (*reps) return cmd_reps(rc);
        if (*form) return cmd_form(rc);
        if (*geometry) return cmd_geometry(rc);
        if (*picard) return cmd_picard_check(rc);
    } catch (const invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const budget_exceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const invariant_violation& e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return 4;
    }
    return 2;
}
