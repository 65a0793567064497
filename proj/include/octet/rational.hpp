#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace octet {

using rational = mpq_class;
using bigint = mpz_class;

// Always "num/den", also for integers ("3/1"), so the format is uniform.
std::string to_fraction_string(const rational& q);

// Accepts "p/q", "p" or a JSON-style integer. Throws invalid_input.
rational parse_rational(const std::string& s);

// Exact square root when q is the square of a rational.
std::optional<rational> rational_sqrt(const rational& q);

rational make_rational(std::int64_t num, std::int64_t den = 1);

// Throws invariant_violation when q is not an integer in int64 range.
std::int64_t to_int64(const rational& q);

}  // namespace octet
