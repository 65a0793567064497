#pragma once

#include "octet/gaussian.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace octet {

// c0 + c1 z + c2 z^2 + c3 z^3 with z = exp(i pi/4), so z^4 = -1 and z^2 = i.
// Arithmetic is overflow-checked.
struct zz8 {
    std::array<std::int64_t, 4> c{};

    bool operator==(const zz8&) const = default;
    bool is_zero() const { return c == std::array<std::int64_t, 4>{}; }
    bool is_gaussian() const { return c[1] == 0 && c[3] == 0; }
    gaussian to_gaussian() const;  // throws invalid_input unless is_gaussian()
    std::string str() const;
};

zz8 from_gaussian(gaussian g);
zz8 zeta_power(int k);  // z^k, any integer k
zz8 operator+(const zz8& a, const zz8& b);
zz8 operator-(const zz8& a, const zz8& b);
zz8 operator-(const zz8& a);
zz8 operator*(const zz8& a, const zz8& b);
zz8 conj(const zz8& a);

// (p + q sqrt2) / 2, the form taken by real and imaginary parts.
struct real_q2 {
    std::int64_t p2 = 0;
    std::int64_t q2 = 0;
    bool operator==(const real_q2&) const = default;
};
real_q2 re(const zz8& a);
real_q2 im(const zz8& a);
// k * x as an integer; throws invalid_input if irrational or non-integral.
std::int64_t integral_value(const real_q2& x, std::int64_t k = 1);

struct cmat2 {
    zz8 a, b, c, d;  // [[a, b], [c, d]]
    bool operator==(const cmat2&) const = default;
    std::string str() const;
};

cmat2 operator*(const cmat2& x, const cmat2& y);
cmat2 scale(const zz8& u, const cmat2& m);
zz8 det(const cmat2& m);
cmat2 identity2();
// Requires det(m) to be a root of unity.
cmat2 inverse(const cmat2& m);
// The root of unity u with x = u y, if one exists.
std::optional<int> projective_ratio(const cmat2& x, const cmat2& y);
bool projectively_equal(const cmat2& x, const cmat2& y);
cmat2 gaussian_matrix(gaussian a, gaussian b, gaussian c, gaussian d);

}  // namespace octet
