#pragma once

#include <cstdint>
#include <optional>

namespace octet {

// re + i*im
struct gaussian {
    std::int64_t re = 0;
    std::int64_t im = 0;

    bool operator==(const gaussian&) const = default;
    bool is_zero() const { return re == 0 && im == 0; }
};

gaussian operator+(gaussian a, gaussian b);
gaussian operator-(gaussian a, gaussian b);
gaussian operator-(gaussian a);
gaussian operator*(gaussian a, gaussian b);
gaussian conj(gaussian a);
std::int64_t norm(gaussian a);
bool is_unit(gaussian a);

// Associate with re > 0, im >= 0 (zero maps to zero).
gaussian canonical_associate(gaussian a);

// Quotient rounded to the nearest lattice point, and the matching remainder.
gaussian round_div(gaussian a, gaussian b);
std::optional<gaussian> exact_div(gaussian a, gaussian b);

// Canonical gcd. Throws invalid_input when both are zero.
gaussian gaussian_gcd(gaussian a, gaussian b);

// s*a + t*b = g with g a (not necessarily canonical) gcd.
struct gaussian_bezout {
    gaussian g, s, t;
};
gaussian_bezout gaussian_xgcd(gaussian a, gaussian b);

}  // namespace octet
