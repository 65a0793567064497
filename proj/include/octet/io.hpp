#pragma once

#include "octet/geometry.hpp"
#include "octet/local_global.hpp"
#include "octet/octuple.hpp"
#include "octet/orbit.hpp"
#include "octet/quadform.hpp"

#include <json.hpp>

#include <map>
#include <string>

namespace octet {

using json = nlohmann::ordered_json;

json octuple_to_json(const octuple& v);
octuple octuple_from_json(const json& j);
// "a,b,c,d,omega"
octuple parse_octuple_list(const std::string& s);

json seed_to_json(const seed_vector& s);
json form_to_json(const quad_form& f);
quad_form form_from_json(const json& j);

json sphere_to_json(const sphere& s);
sphere sphere_from_json(const json& j);

json density_report_to_json(const density_report& r);
json exception_report_to_json(const exception_report& r);
std::string missing_csv(const exception_report& r);
json certificate_to_json(const representability_certificate& c);

// "OCT8PACK", u64 little-endian bound, then bit k (LSB first) = curvature k for
// k = 1..bound. Bit 0 stays clear; non-positive curvatures go to CSV and JSON.
std::string table_to_bitmap(const curvature_table& t);
curvature_table table_from_bitmap(const std::string& bytes);
// "curvature,present,multiplicity": non-positive entries, then every k in 1..bound.
std::string table_to_csv(const curvature_table& t);
json table_to_json(const curvature_table& t);

// Flat key=value lines; '#' starts a comment.
std::map<std::string, std::string> parse_config(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& data);

}  // namespace octet
