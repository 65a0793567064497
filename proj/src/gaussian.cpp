#include "octet/gaussian.hpp"

#include "octet/errors.hpp"

namespace octet {

namespace {

// Nearest integer to p/q for q > 0, ties rounded down.
std::int64_t round_quot(__int128 p, __int128 q) {
    __int128 f = p >= 0 ? p / q : -((-p + q - 1) / q);  // floor
    __int128 r = p - f * q;
    if (2 * r > q) ++f;
    return static_cast<std::int64_t>(f);
}

}  // namespace

gaussian operator+(gaussian a, gaussian b) { return {a.re + b.re, a.im + b.im}; }
gaussian operator-(gaussian a, gaussian b) { return {a.re - b.re, a.im - b.im}; }
gaussian operator-(gaussian a) { return {-a.re, -a.im}; }
gaussian operator*(gaussian a, gaussian b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
gaussian conj(gaussian a) { return {a.re, -a.im}; }
std::int64_t norm(gaussian a) { return a.re * a.re + a.im * a.im; }
bool is_unit(gaussian a) { return norm(a) == 1; }

gaussian canonical_associate(gaussian a) {
    if (a.is_zero()) return a;
    for (int k = 0; k < 4; ++k) {
        if (a.re > 0 && a.im >= 0) return a;
        a = gaussian{-a.im, a.re};  // multiply by i
    }
    return a;
}

gaussian round_div(gaussian a, gaussian b) {
    if (b.is_zero()) throw invalid_input("division by zero Gaussian integer");
    // a * conj(b) / N(b)
    __int128 n = static_cast<__int128>(b.re) * b.re + static_cast<__int128>(b.im) * b.im;
    __int128 pr = static_cast<__int128>(a.re) * b.re + static_cast<__int128>(a.im) * b.im;
    __int128 pi = static_cast<__int128>(a.im) * b.re - static_cast<__int128>(a.re) * b.im;
    return {round_quot(pr, n), round_quot(pi, n)};
}

std::optional<gaussian> exact_div(gaussian a, gaussian b) {
    gaussian q = round_div(a, b);
    if (q * b == a) return q;
    return std::nullopt;
}

gaussian gaussian_gcd(gaussian a, gaussian b) {
    if (a.is_zero() && b.is_zero()) throw invalid_input("gcd of two zeros");
    while (!b.is_zero()) {
        gaussian r = a - round_div(a, b) * b;
        a = b;
        b = r;
    }
    return canonical_associate(a);
}

gaussian_bezout gaussian_xgcd(gaussian a, gaussian b) {
    if (a.is_zero() && b.is_zero()) throw invalid_input("gcd of two zeros");
    gaussian r0 = a, r1 = b;
    gaussian s0{1, 0}, s1{0, 0};
    gaussian t0{0, 0}, t1{1, 0};
    while (!r1.is_zero()) {
        gaussian q = round_div(r0, r1);
        gaussian r2 = r0 - q * r1;
        gaussian s2 = s0 - q * s1;
        gaussian t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    return {r0, s0, t0};
}

}  // namespace octet
