#include "octet/cyclotomic.hpp"

#include "octet/errors.hpp"

namespace octet {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw budget_exceeded("cyclotomic arithmetic overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw budget_exceeded("cyclotomic arithmetic overflow");
    return r;
}

}  // namespace

gaussian zz8::to_gaussian() const {
    if (!is_gaussian()) throw invalid_input("element " + str() + " is not a Gaussian integer");
    return {c[0], c[2]};
}

std::string zz8::str() const {
    return "(" + std::to_string(c[0]) + "," + std::to_string(c[1]) + "," + std::to_string(c[2]) + "," +
           std::to_string(c[3]) + ")";
}

zz8 from_gaussian(gaussian g) { return zz8{{g.re, 0, g.im, 0}}; }

zz8 zeta_power(int k) {
    k = ((k % 8) + 8) % 8;
    zz8 r;
    r.c[k % 4] = k < 4 ? 1 : -1;
    return r;
}

zz8 operator+(const zz8& a, const zz8& b) {
    zz8 r;
    for (int i = 0; i < 4; ++i) r.c[i] = checked_add(a.c[i], b.c[i]);
    return r;
}

zz8 operator-(const zz8& a) {
    zz8 r;
    for (int i = 0; i < 4; ++i) r.c[i] = checked_mul(a.c[i], -1);
    return r;
}

zz8 operator-(const zz8& a, const zz8& b) { return a + (-b); }

zz8 operator*(const zz8& a, const zz8& b) {
    zz8 r;
    for (int i = 0; i < 4; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; j < 4; ++j) {
            std::int64_t p = checked_mul(a.c[i], b.c[j]);
            int k = i + j;
            if (k >= 4) {
                k -= 4;
                p = checked_mul(p, -1);
            }
            r.c[k] = checked_add(r.c[k], p);
        }
    }
    return r;
}

// conj(z) = z^7 = -z^3, conj(z^2) = -z^2, conj(z^3) = -z
zz8 conj(const zz8& a) { return zz8{{a.c[0], -a.c[3], -a.c[2], -a.c[1]}}; }

// z = (1+i)/sqrt2, z^3 = (-1+i)/sqrt2
real_q2 re(const zz8& a) { return {2 * a.c[0], a.c[1] - a.c[3]}; }
real_q2 im(const zz8& a) { return {2 * a.c[2], a.c[1] + a.c[3]}; }

std::int64_t integral_value(const real_q2& x, std::int64_t k) {
    if (x.q2 != 0) throw invalid_input("entry is irrational");
    std::int64_t v = checked_mul(x.p2, k);
    if (v % 2 != 0) throw invalid_input("entry is not an integer");
    return v / 2;
}

std::string cmat2::str() const { return "[[" + a.str() + ", " + b.str() + "], [" + c.str() + ", " + d.str() + "]]"; }

cmat2 operator*(const cmat2& x, const cmat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

cmat2 scale(const zz8& u, const cmat2& m) { return {u * m.a, u * m.b, u * m.c, u * m.d}; }

zz8 det(const cmat2& m) { return m.a * m.d - m.b * m.c; }

cmat2 identity2() { return {zeta_power(0), zz8{}, zz8{}, zeta_power(0)}; }

cmat2 inverse(const cmat2& m) {
    const zz8 d = det(m);
    for (int k = 0; k < 8; ++k)
        if (d == zeta_power(k)) {
            cmat2 adj{m.d, -m.b, -m.c, m.a};
            return scale(zeta_power(-k), adj);
        }
    throw invalid_input("matrix determinant is not a root of unity");
}

std::optional<int> projective_ratio(const cmat2& x, const cmat2& y) {
    for (int k = 0; k < 8; ++k)
        if (x == scale(zeta_power(k), y)) return k;
    return std::nullopt;
}

bool projectively_equal(const cmat2& x, const cmat2& y) { return projective_ratio(x, y).has_value(); }

cmat2 gaussian_matrix(gaussian a, gaussian b, gaussian c, gaussian d) {
    return {from_gaussian(a), from_gaussian(b), from_gaussian(c), from_gaussian(d)};
}

}  // namespace octet
