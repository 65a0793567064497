#include "octet/io.hpp"

#include "octet/errors.hpp"

#include <fstream>
#include <sstream>

namespace octet {

namespace {

std::int64_t get_int(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number_integer()) throw invalid_input(std::string("missing integer field ") + key);
    return j.at(key).get<std::int64_t>();
}

json rational_json(const rational& q) { return to_fraction_string(q); }

rational rational_from(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return make_rational(j.get<std::int64_t>());
    throw invalid_input("expected a rational as a \"num/den\" string");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

json octuple_to_json(const octuple& v) {
    return json{{"a", v[0]}, {"b", v[1]}, {"c", v[2]}, {"d", v[3]}, {"omega", v[4]}};
}

octuple octuple_from_json(const json& j) {
    if (!j.is_object()) throw invalid_input("octuple JSON must be an object");
    return {get_int(j, "a"), get_int(j, "b"), get_int(j, "c"), get_int(j, "d"), get_int(j, "omega")};
}

octuple parse_octuple_list(const std::string& s) {
    octuple v{};
    std::stringstream ss(s);
    std::string item;
    int n = 0;
    while (std::getline(ss, item, ',')) {
        if (n == 5) throw invalid_input("octuple needs exactly five integers");
        std::size_t used = 0;
        try {
            v[n] = std::stoll(trim(item), &used);
        } catch (const std::exception&) {
            throw invalid_input("bad integer in octuple: " + item);
        }
        if (used != trim(item).size()) throw invalid_input("bad integer in octuple: " + item);
        ++n;
    }
    if (n != 5) throw invalid_input("octuple needs exactly five integers");
    return v;
}

json seed_to_json(const seed_vector& s) { return json::array({s.a0, s.b0, s.c0, s.d0, s.omega0}); }

json form_to_json(const quad_form& f) {
    return json{{"A0", f.A0}, {"B0", f.B0}, {"C0", f.C0}, {"D0", f.D0}, {"a0", f.a0}};
}

quad_form form_from_json(const json& j) {
    return {get_int(j, "A0"), get_int(j, "B0"), get_int(j, "C0"), get_int(j, "D0"), get_int(j, "a0")};
}

json sphere_to_json(const sphere& s) {
    if (s.is_plane()) {
        json n = json::array();
        for (const auto& x : s.normal()) n.push_back(rational_json(x));
        return json{{"type", "plane"}, {"normal", n}, {"offset", rational_json(s.offset())}};
    }
    json c = json::array();
    for (const auto& x : s.center()) c.push_back(rational_json(x));
    return json{{"type", "sphere"}, {"curvature", rational_json(s.curvature())}, {"center", c}};
}

sphere sphere_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type")) throw invalid_input("geometry entry needs a type");
    auto vec = [&](const char* key) {
        if (!j.contains(key) || !j.at(key).is_array() || j.at(key).size() != 3)
            throw invalid_input(std::string("geometry field ") + key + " must be a 3-vector");
        return vec3{rational_from(j.at(key)[0]), rational_from(j.at(key)[1]), rational_from(j.at(key)[2])};
    };
    const std::string type = j.at("type").get<std::string>();
    if (type == "sphere") return sphere_from_geometry(vec("center"), rational_from(j.at("curvature")));
    if (type == "plane") return plane_from_geometry(vec("normal"), rational_from(j.at("offset")));
    throw invalid_input("unknown geometry type " + type);
}

json density_report_to_json(const density_report& r) {
    json deltas = json::object();
    for (const auto& [p, d] : r.deltas) deltas[std::to_string(p)] = rational_json(d);
    json out{{"m", r.m},
             {"deltas", deltas},
             {"singular_series", {{"ratio_to_6_over_pi2", rational_json(r.series.ratio)}, {"value", r.series.value}}}};
    if (r.main) {
        out["main_term"] = r.main->value;
        out["main_term_exact"] = rational_json(r.main->exact);
    } else {
        out["main_term"] = nullptr;
        out["main_term_exact"] = nullptr;
    }
    out["representation_count"] = r.representation_count;
    out["primitive_count"] = r.primitive_count;
    return out;
}

json exception_report_to_json(const exception_report& r) {
    json mod4 = json::object();
    for (auto [k, v] : r.unclassified_found_mod4) mod4[std::to_string(k)] = v;
    json by_gcd = json::object();
    for (auto [k, v] : r.unclassified_found_by_gcd) by_gcd[std::to_string(k)] = v;
    return json{{"bound", r.bound},
                {"residue", r.residue},
                {"modulus", r.modulus},
                {"counts",
                 {{"admissible_total", r.admissible_total},
                  {"found", r.found},
                  {"missing", r.missing.size()},
                  {"inadmissible_found", r.inadmissible_found},
                  {"curvatures_found", r.curvatures_found}}},
                {"missing", r.missing},
                {"largest_missing", r.largest_missing ? json(*r.largest_missing) : json(nullptr)},
                {"unclassified_summary",
                 {{"total", r.unclassified_total},
                  {"found", r.unclassified_found},
                  {"found_by_residue_mod4", mod4},
                  {"found_by_gcd_with_modulus", by_gcd}}},
                {"density",
                 {{"found_fraction", r.bound ? static_cast<double>(r.curvatures_found) / static_cast<double>(r.bound) : 0.0},
                  {"lower_bound", r.density_lower_bound}}}};
}

std::string missing_csv(const exception_report& r) {
    std::string out = "missing\n";
    for (auto m : r.missing) out += std::to_string(m) + "\n";
    return out;
}

json certificate_to_json(const representability_certificate& c) {
    json out{{"m", c.m}};
    if (c.rep) {
        out["certificate"] = *c.rep;
        out["value"] = c.value;
        out["orbit_vector"] = c.orbit_vector ? octuple_to_json(*c.orbit_vector) : json(nullptr);
        out["orbit_vector_verified"] = c.orbit_vector_verified;
    } else {
        out["certificate"] = nullptr;
        out["note"] = c.note;
    }
    return out;
}

std::string table_to_bitmap(const curvature_table& t) {
    std::string out = "OCT8PACK";
    auto b = static_cast<std::uint64_t>(t.bound());
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((b >> (8 * i)) & 0xFF));
    const std::size_t nbytes = static_cast<std::size_t>(t.bound()) / 8 + 1;
    std::string bits(nbytes, '\0');
    for (std::size_t k = 1; k <= static_cast<std::size_t>(t.bound()); ++k)
        if ((t.bits()[k >> 6] >> (k & 63)) & 1ULL) bits[k >> 3] = static_cast<char>(bits[k >> 3] | (1 << (k & 7)));
    return out + bits;
}

curvature_table table_from_bitmap(const std::string& bytes) {
    if (bytes.size() < 16 || bytes.compare(0, 8, "OCT8PACK") != 0) throw invalid_input("not an OCT8PACK bitmap");
    std::uint64_t b = 0;
    for (int i = 0; i < 8; ++i) b |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[8 + i])) << (8 * i);
    if (b < 1 || bytes.size() != 16 + b / 8 + 1) throw invalid_input("bitmap length does not match its bound");
    if (bytes[16] & 1) throw invalid_input("bitmap bit 0 must be clear");
    curvature_table t(static_cast<std::int64_t>(b), false);
    for (std::uint64_t k = 1; k <= b; ++k)
        if ((static_cast<unsigned char>(bytes[16 + (k >> 3)]) >> (k & 7)) & 1) t.insert(static_cast<std::int64_t>(k));
    return t;
}

std::string table_to_csv(const curvature_table& t) {
    std::string out = "curvature,present,multiplicity\n";
    auto row = [&](std::int64_t k) {
        const bool p = t.contains(k);
        out += std::to_string(k) + "," + (p ? "1" : "0") + ",";
        if (t.has_multiplicity()) out += std::to_string(t.multiplicity(k));
        out += "\n";
    };
    for (auto k : t.nonpositive()) row(k);
    for (std::int64_t k = 1; k <= t.bound(); ++k) row(k);
    return out;
}

json table_to_json(const curvature_table& t) {
    json out{{"bound", t.bound()}, {"curvatures", t.values()}};
    if (t.has_multiplicity()) {
        json mult = json::array();
        for (auto k : t.values()) mult.push_back(t.multiplicity(k));
        out["multiplicity"] = mult;
    }
    return out;
}

std::map<std::string, std::string> parse_config(const std::string& text) {
    std::map<std::string, std::string> out;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw invalid_input("config line " + std::to_string(lineno) + " lacks '='");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw invalid_input("config line " + std::to_string(lineno) + " has an empty key");
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_input("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("cannot write " + path);
    out << data;
}

}  // namespace octet
