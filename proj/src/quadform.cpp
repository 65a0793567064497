#include "octet/quadform.hpp"

#include "octet/errors.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace octet {

namespace {

std::int64_t isqrt(std::int64_t n) {
    if (n <= 0) return 0;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

__int128 isqrt128(__int128 n) {
    if (n <= 0) return 0;
    auto r = static_cast<__int128>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// A D - B^2 - C^2; equals a0^2 for forms built from a seed.
std::int64_t inner_det(const quad_form& f) { return f.A0 * f.D0 - f.B0 * f.B0 - f.C0 * f.C0; }

void require_definite(const quad_form& f) {
    if (f.A0 <= 0 || inner_det(f) <= 0) throw invalid_input("form is not positive definite");
}

std::vector<gaussian> lattice_disk(std::int64_t r2) {
    std::vector<gaussian> pts;
    std::int64_t r = isqrt(r2);
    for (std::int64_t x = -r; x <= r; ++x) {
        std::int64_t ym = isqrt(r2 - x * x);
        for (std::int64_t y = -ym; y <= ym; ++y) pts.push_back({x, y});
    }
    return pts;
}

bool both_divisible_by_one_plus_i(gaussian a, gaussian b) {
    return ((a.re + a.im) % 2 == 0) && ((b.re + b.im) % 2 == 0);
}

bool coprime_pair(gaussian a, gaussian b) {
    if (both_divisible_by_one_plus_i(a, b)) return false;
    return is_unit(gaussian_gcd(a, b));
}

std::set<std::int64_t> prime_set(std::int64_t n) {
    std::set<std::int64_t> ps;
    for (auto [p, e] : factorize(n)) ps.insert(p);
    return ps;
}

int valuation(std::int64_t m, std::int64_t p) {
    int v = 0;
    while (m != 0 && m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

rational inv_pow(std::int64_t p, int k) {
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
    return rational(mpz_class(1), d);
}

// 1 + 1/p + ... + 1/p^v
rational geometric_sum(std::int64_t p, int v) {
    rational s = 0;
    for (int k = 0; k <= v; ++k) s += inv_pow(p, k);
    return s;
}

std::int64_t floor_div(__int128 a, __int128 b) {
    __int128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return static_cast<std::int64_t>(q);
}

std::int64_t ceil_div(__int128 a, __int128 b) { return -floor_div(-a, b); }

// For fixed alpha = x + iy, f = T is the circle (2Dz + P)^2 + (2Dt + Q)^2 = r2
// with P = Cx - By, Q = Bx + Cy and r2 = D T - |alpha|^2 (AD - B^2 - C^2).
struct slice {
    __int128 r2, P, Q, D2;
    std::int64_t zlo, zhi;
};

std::optional<slice> alpha_slice(const quad_form& f, std::int64_t T, std::int64_t x, std::int64_t y) {
    slice s;
    s.r2 = static_cast<__int128>(f.D0) * T - static_cast<__int128>(x * x + y * y) * inner_det(f);
    if (s.r2 < 0) return std::nullopt;
    s.P = static_cast<__int128>(f.C0) * x - static_cast<__int128>(f.B0) * y;
    s.Q = static_cast<__int128>(f.B0) * x + static_cast<__int128>(f.C0) * y;
    s.D2 = 2 * static_cast<__int128>(f.D0);
    const __int128 r = isqrt128(s.r2);
    s.zlo = ceil_div(-r - s.P, s.D2);
    s.zhi = floor_div(r - s.P, s.D2);
    if (s.zlo > s.zhi) return std::nullopt;
    return s;
}

// The t values on the slice at z, larger first; returns how many were written.
int slice_solutions(const slice& s, std::int64_t z, std::int64_t out[2]) {
    const __int128 u = s.D2 * z + s.P;
    const __int128 rem = s.r2 - u * u;
    if (rem < 0) return 0;
    const __int128 r = isqrt128(rem);
    if (r * r != rem) return 0;
    int n = 0;
    for (int sign = 1; sign >= -1; sign -= 2) {
        if (sign == -1 && r == 0) break;
        const __int128 num = sign * r - s.Q;
        if (num % s.D2 == 0) out[n++] = static_cast<std::int64_t>(num / s.D2);
    }
    return n;
}

// Single-value search: loop over x, y and the z band of the slice, solve for t.
// visit(x, y, z, t) is called for each solution.
template <class Visit>
void for_each_solution(const quad_form& f, std::int64_t m, double budget, Visit&& visit) {
    require_definite(f);
    if (m < 0) return;
    const search_box box = search_bounds(f, m);
    const double ra = std::sqrt(static_cast<double>(box.alpha_norm));
    const double rz = std::sqrt(static_cast<double>(m) / static_cast<double>(f.D0));
    const double work = (M_PI * box.alpha_norm + 4 * ra + 1) * (rz + 1);
    if (work > budget)
        throw budget_exceeded("search for m = " + std::to_string(m) + " needs about " + std::to_string(work) +
                              " steps, budget " + std::to_string(budget));
    const std::int64_t xm = isqrt(box.alpha_norm);
    for (std::int64_t x = -xm; x <= xm; ++x) {
        const std::int64_t ym = isqrt(box.alpha_norm - x * x);
        for (std::int64_t y = -ym; y <= ym; ++y) {
            const auto s = alpha_slice(f, m, x, y);
            if (!s) continue;
            for (std::int64_t z = s->zlo; z <= s->zhi; ++z) {
                std::int64_t ts[2];
                const int k = slice_solutions(*s, z, ts);
                for (int i = 0; i < k; ++i) visit(x, y, z, ts[i]);
            }
        }
    }
}

template <class Filter>
std::vector<std::uint64_t> histogram_kernel(const quad_form& f, std::int64_t M, int threads, bool parallel, Filter&& keep) {
    require_definite(f);
    if (M < 0) throw invalid_input("histogram bound must be non-negative");
    const search_box box = search_bounds(f, M);
    const auto alphas = lattice_disk(box.alpha_norm);
    const auto betas = lattice_disk(box.beta_norm);
    std::vector<std::uint64_t> hist(static_cast<std::size_t>(M) + 1, 0);
    const std::int64_t A = f.A0, B4 = 4 * f.B0, C4 = 4 * f.C0, D4 = 4 * f.D0;
    auto row = [&](gaussian al, std::vector<std::uint64_t>& h) {
        const std::int64_t base = A * norm(al);
        for (const gaussian& be : betas) {
            const std::int64_t v = base + D4 * norm(be) + B4 * (al.re * be.im - al.im * be.re) +
                                   C4 * (al.re * be.re + al.im * be.im);
            if (v <= M && keep(al, be)) ++h[static_cast<std::size_t>(v)];
        }
    };
    const auto n = static_cast<std::int64_t>(alphas.size());
    if (!parallel) {
        for (std::int64_t i = 0; i < n; ++i) row(alphas[i], hist);
        return hist;
    }
    const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(nt)
    {
        std::vector<std::uint64_t> local(hist.size(), 0);
#pragma omp for schedule(dynamic, 16) nowait
        for (std::int64_t i = 0; i < n; ++i) row(alphas[i], local);
#pragma omp critical
        for (std::size_t k = 0; k < hist.size(); ++k) hist[k] += local[k];
    }
    return hist;
}

}  // namespace

quad_form form_from_vector(const octuple& v) {
    const std::int64_t a = v[0], b = v[1], c = v[2], d = v[3], w = v[4];
    if (a == 0 || a + b <= 0 || (a + b) % 2 == 0) throw invalid_input("vector cannot anchor a form");
    const std::int64_t b_num = a + b + c + d - 2 * w;
    const std::int64_t c_num = a + b + c - d;
    if (b_num % 2 != 0 || c_num % 2 != 0) throw invariant_violation("parity makes the form non-integral");
    quad_form f{a + b, -b_num / 2, -c_num / 2, a + c, a};
    if (f.B0 * f.B0 + f.C0 * f.C0 - f.A0 * f.D0 != -f.a0 * f.a0)
        throw invariant_violation("form discriminant differs from -a0^2");
    require_definite(f);
    return f;
}

quad_form build_form(const seed_vector& s) {
    if (s.a0 % 2 != 0 || s.b0 % 2 == 0) throw invariant_violation("seed parity violated");
    return form_from_vector(s.as_octuple());
}

std::int64_t eval_form(const quad_form& f, std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t t) {
    return f.A0 * x * x + f.A0 * y * y + 4 * f.D0 * z * z + 4 * f.D0 * t * t + 4 * f.B0 * x * t - 4 * f.B0 * y * z +
           4 * f.C0 * x * z + 4 * f.C0 * y * t;
}

std::int64_t eval_form(const quad_form& f, gaussian alpha, gaussian beta) {
    return eval_form(f, alpha.re, alpha.im, beta.re, beta.im);
}

int_mat4 gram_matrix(const quad_form& f) {
    int_mat4 g{};
    g[0][0] = g[1][1] = f.A0;
    g[2][2] = g[3][3] = 4 * f.D0;
    g[0][3] = g[3][0] = 2 * f.B0;
    g[1][2] = g[2][1] = -2 * f.B0;
    g[0][2] = g[2][0] = 2 * f.C0;
    g[1][3] = g[3][1] = 2 * f.C0;
    return g;
}

bigint gram_determinant(const quad_form& f) {
    // Fraction-free elimination.
    std::array<std::array<bigint, 4>, 4> a;
    const auto g = gram_matrix(f);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a[i][j] = static_cast<long>(g[i][j]);
    bigint prev = 1;
    int sign = 1;
    for (int k = 0; k < 3; ++k) {
        if (a[k][k] == 0) {
            int r = k + 1;
            while (r < 4 && a[r][k] == 0) ++r;
            if (r == 4) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (int i = k + 1; i < 4; ++i)
            for (int j = k + 1; j < 4; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[3][3];
}

search_box search_bounds(const quad_form& f, std::int64_t m) {
    require_definite(f);
    // f >= det/D |alpha|^2 and f >= 4 det/A |beta|^2 with det = A D - B^2 - C^2.
    const __int128 det = inner_det(f);
    const __int128 mm = m < 0 ? 0 : m;
    return {static_cast<std::int64_t>(mm * f.D0 / det), static_cast<std::int64_t>(mm * f.A0 / (4 * det))};
}

std::uint64_t count_representations(const quad_form& f, std::int64_t m, double budget) {
    if (m < 1) throw invalid_input("count_representations needs m >= 1");
    std::uint64_t n = 0;
    for_each_solution(f, m, budget, [&](auto, auto, auto, auto) { ++n; });
    return n;
}

std::vector<std::uint64_t> representation_histogram(const quad_form& f, std::int64_t M, int threads) {
    return histogram_kernel(f, M, threads, true, [](gaussian, gaussian) { return true; });
}

std::vector<std::uint64_t> representation_histogram_serial(const quad_form& f, std::int64_t M) {
    return histogram_kernel(f, M, 1, false, [](gaussian, gaussian) { return true; });
}

std::uint64_t count_primitive(const quad_form& f, std::int64_t m, primitive_method method, double budget) {
    if (m < 1) throw invalid_input("count_primitive needs m >= 1");
    if (method == primitive_method::direct) {
        std::uint64_t n = 0;
        for_each_solution(f, m, budget, [&](std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t t) {
            if (coprime_pair({x, y}, {z, t})) ++n;
        });
        if (n % 4 != 0) throw invariant_violation("primitive solutions are not a union of unit orbits");
        return n / 4;
    }
    std::int64_t total = 0;
    for (const auto& term : moebius_ideals(m))
        total += term.mu * term.multiplicity * static_cast<std::int64_t>(count_representations(f, m / term.norm, budget));
    if (total < 0 || total % 4 != 0) throw invariant_violation("inverted count is not a non-negative multiple of 4");
    return static_cast<std::uint64_t>(total / 4);
}

std::vector<std::uint64_t> primitive_histogram_direct(const quad_form& f, std::int64_t M, int threads) {
    auto h = histogram_kernel(f, M, threads, true, [](gaussian a, gaussian b) { return coprime_pair(a, b); });
    for (auto& x : h) {
        if (x % 4 != 0) throw invariant_violation("primitive solutions are not a union of unit orbits");
        x /= 4;
    }
    return h;
}

std::vector<std::uint64_t> primitive_from_histogram(const std::vector<std::uint64_t>& reps) {
    std::vector<std::uint64_t> out(reps.size(), 0);
    for (std::size_t m = 1; m < reps.size(); ++m) {
        std::int64_t total = 0;
        for (const auto& term : moebius_ideals(static_cast<std::int64_t>(m)))
            total += term.mu * term.multiplicity * static_cast<std::int64_t>(reps[m / term.norm]);
        if (total < 0 || total % 4 != 0) throw invariant_violation("inverted count is not a non-negative multiple of 4");
        out[m] = static_cast<std::uint64_t>(total / 4);
    }
    return out;
}

representation_search find_primitive_representation(const quad_form& f, std::int64_t T, double max_steps) {
    require_definite(f);
    representation_search out;
    if (T < 1) {
        out.complete = true;
        return out;
    }
    const search_box box = search_bounds(f, T);
    const std::int64_t xm = isqrt(box.alpha_norm);
    for (std::int64_t x = xm; x >= -xm; --x) {
        const std::int64_t ym = isqrt(box.alpha_norm - x * x);
        for (std::int64_t y = ym; y >= -ym; --y) {
            if (((x + y) & 1) == 0) continue;
            const auto s = alpha_slice(f, T, x, y);
            if (!s) continue;
            for (std::int64_t z = s->zhi; z >= s->zlo; --z) {
                if (static_cast<double>(++out.steps) > max_steps) return out;
                std::int64_t ts[2];
                const int k = slice_solutions(*s, z, ts);
                for (int i = 0; i < k; ++i) {
                    if (coprime_pair({x, y}, {z, ts[i]})) {
                        out.rep = std::array<std::int64_t, 4>{x, y, z, ts[i]};
                        out.complete = true;
                        return out;
                    }
                }
            }
        }
    }
    out.complete = true;
    return out;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t m) {
    if (m < 1) throw invalid_input("factorize needs m >= 1");
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p != 0) continue;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (m > 1) out.emplace_back(m, 1);
    return out;
}

std::vector<ideal_term> moebius_ideals(std::int64_t m) {
    std::vector<ideal_term> terms{{1, 1, 1}};
    for (auto [p, e] : factorize(m)) {
        std::vector<ideal_term> local{{1, 1, 1}};
        if (p == 2) {
            local.push_back({2, -1, 1});
        } else if (p % 4 == 1) {
            local.push_back({p, -1, 2});
            if (e >= 2) local.push_back({p * p, 1, 1});
        } else if (e >= 2) {
            local.push_back({p * p, -1, 1});
        }
        std::vector<ideal_term> next;
        for (const auto& a : terms)
            for (const auto& b : local) next.push_back({a.norm * b.norm, a.mu * b.mu, a.multiplicity * b.multiplicity});
        terms = std::move(next);
    }
    std::sort(terms.begin(), terms.end(), [](const ideal_term& a, const ideal_term& b) { return a.norm < b.norm; });
    return terms;
}

std::uint64_t count_mod(const quad_form& f, std::int64_t m, std::int64_t q) {
    if (q < 1) throw invalid_input("modulus must be positive");
    if (static_cast<double>(q) * q * q * q > 2e9) throw budget_exceeded("residue count mod " + std::to_string(q) + " too large");
    const std::int64_t target = ((m % q) + q) % q;
    std::uint64_t n = 0;
    for (std::int64_t x = 0; x < q; ++x)
        for (std::int64_t y = 0; y < q; ++y)
            for (std::int64_t z = 0; z < q; ++z)
                for (std::int64_t t = 0; t < q; ++t) {
                    std::int64_t v = eval_form(f, x, y, z, t) % q;
                    if (v < 0) v += q;
                    n += (v == target);
                }
    return n;
}

rational local_density(const quad_form& f, std::int64_t m, std::int64_t p) {
    require_definite(f);
    if (p < 2 || factorize(p).size() != 1 || factorize(p)[0].second != 1) throw invalid_input("p must be prime");
    const bool divides_disc = (p == 2) || inner_det(f) % p == 0;
    if (!divides_disc) return (1 - inv_pow(p, 2)) * geometric_sum(p, valuation(m, p));
    if (m == 0) throw invalid_input("local density needs m != 0");
    const int_mat4 g = gram_matrix(f);
    // Lift solutions mod p^j one digit at a time. A class whose gradient 2 G x has
    // valuation s with j >= 2 s + 1 lifts uniformly and contributes p^(-3 j).
    struct level_state {
        std::array<std::int64_t, 4> x;
        int j;
        std::int64_t pj;
    };
    auto value_mod = [&](const std::array<std::int64_t, 4>& x, std::int64_t mod) {
        __int128 v = 0;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) v += static_cast<__int128>(g[a][b]) * x[a] % mod * x[b] % mod;
        v %= mod;
        return static_cast<std::int64_t>(v < 0 ? v + mod : v);
    };
    auto gradient_valuation = [&](const std::array<std::int64_t, 4>& x, int j, std::int64_t pj) {
        int s = j;
        for (int a = 0; a < 4; ++a) {
            __int128 d = 0;
            for (int b = 0; b < 4; ++b) d += 2 * static_cast<__int128>(g[a][b]) * x[b];
            d %= pj;
            if (d == 0) continue;
            int v = 0;
            while (d % p == 0) d /= p, ++v;
            s = std::min(s, v);
        }
        return s;
    };
    constexpr int max_level = 40;
    rational density = 0;
    std::vector<level_state> stack{{{0, 0, 0, 0}, 0, 1}};
    while (!stack.empty()) {
        const level_state cur = stack.back();
        stack.pop_back();
        if (cur.j > 0) {
            const int s = gradient_valuation(cur.x, cur.j, cur.pj);
            if (s < cur.j && cur.j >= 2 * s + 1) {
                density += inv_pow(p, 3 * cur.j);
                continue;
            }
        }
        if (cur.j == max_level || cur.pj > (std::int64_t{1} << 40) / p) throw budget_exceeded("local density did not stabilise");
        const std::int64_t next = cur.pj * p;
        const std::int64_t target = ((m % next) + next) % next;
        for (std::int64_t c = 0; c < p * p * p * p; ++c) {
            std::array<std::int64_t, 4> x = cur.x;
            std::int64_t digits = c;
            for (int a = 0; a < 4; ++a) {
                x[a] += (digits % p) * cur.pj;
                digits /= p;
            }
            if (value_mod(x, next) == target) stack.push_back({x, cur.j + 1, next});
        }
    }
    density.canonicalize();
    return density;
}

singular_series_value singular_series(const quad_form& f, std::int64_t m) {
    if (m < 1) throw invalid_input("singular series needs m >= 1");
    std::set<std::int64_t> bad = prime_set(inner_det(f));
    bad.insert(2);
    rational ratio = 1;
    for (auto [p, e] : factorize(m))
        if (!bad.count(p)) ratio *= geometric_sum(p, e);
    for (auto p : bad) ratio *= local_density(f, m, p) / (1 - inv_pow(p, 2));
    return {ratio, ratio.get_d() * 6.0 / (M_PI * M_PI)};
}

rational primitive_correction(std::int64_t m) {
    rational c = 1;
    for (auto [p, e] : factorize(m)) {
        if (p % 4 == 1) {
            rational a = 1 - inv_pow(p, 1);
            rational b = 1 - inv_pow(p, e + 1);
            c *= a * a / (b * b);
        } else if (p % 4 == 3 && e >= 2) {
            c *= (1 - inv_pow(p, 2)) / (1 - inv_pow(p, e + 1));
        }
    }
    return c;
}

main_term_value main_term(const quad_form& f, std::int64_t m) {
    if (m < 1) throw invalid_input("main term needs m >= 1");
    if (std::gcd(m, 2 * inner_det(f)) != 1) throw invalid_input("main term needs m coprime to the discriminant");
    const bigint det = gram_determinant(f);
    if (mpz_perfect_square_p(det.get_mpz_t()) == 0) throw invariant_violation("Gram determinant is not a square");
    const bigint root = sqrt(det);
    // pi^2/(4 sqrt(det G)) * m * S(m) * correction, with S(m) = ratio * 6/pi^2.
    rational exact = rational(3) * rational(mpz_class(static_cast<long>(m))) * singular_series(f, m).ratio *
                     primitive_correction(m) / (2 * rational(root));
    exact.canonicalize();
    return {exact, exact.get_d()};
}

density_report make_density_report(const quad_form& f, std::int64_t m) {
    density_report r;
    r.m = m;
    std::set<std::int64_t> primes = prime_set(inner_det(f));
    primes.insert(2);
    for (auto [p, e] : factorize(m)) primes.insert(p);
    for (auto p : primes) r.deltas[p] = local_density(f, m, p);
    r.series = singular_series(f, m);
    if (std::gcd(m, 2 * inner_det(f)) == 1) r.main = main_term(f, m);
    r.representation_count = count_representations(f, m);
    r.primitive_count = count_primitive(f, m, primitive_method::moebius);
    return r;
}

}  // namespace octet
