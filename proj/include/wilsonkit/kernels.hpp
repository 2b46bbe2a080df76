#pragma once

// Scalar special-function kernels: complex log-gamma, Pochhammer symbols,
// q-shifted factorials, the Jacobi theta function, and the hypergeometric /
// basic hypergeometric series engines everything else is built from.

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <vector>

#include "wilsonkit/common.hpp"
#include "wilsonkit/dd.hpp"

namespace wilsonkit {

// ---------------------------------------------------------------------------
// log Gamma
// ---------------------------------------------------------------------------

namespace detail {

// Branch-stable log(sin z); keeps the imaginary part bounded for large |Im z|.
inline cplx sinln(cplx x) {
    const cplx i(0.0, 1.0);
    const cplx base(-std::log(2.0), -pi / 2.0);
    if (x.imag() > 0.0)
        return base - i * x + std::log(std::exp(2.0 * i * x) - 1.0);
    return base + i * x + std::log(1.0 - std::exp(-2.0 * i * x));
}

// Godfrey's Lanczos coefficients, g = 607/128.
inline constexpr double lanczos_g = 4.7421875;
inline constexpr std::array<double, 15> lanczos_c = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   3.3994649984811888699e-5,
    4.6523628927048575665e-5,   -9.8374475304879564677e-5, 1.5808870322491248884e-4,
    -2.1026444172410488319e-4,  2.1743961811521264320e-4,  -1.6431810653676389022e-4,
    8.4418223983852743293e-5,   -2.6190838401581408670e-5, 3.6899182659531622704e-6};

inline cplx lgamma_main(cplx z) {
    // valid for Re(z) >= 0.5
    cplx A(lanczos_c[0]);
    for (int k = 1; k < 15; ++k) A += lanczos_c[k] / (z - 1.0 + static_cast<double>(k));
    cplx t = z + (lanczos_g - 0.5);
    return 0.5 * std::log(2.0 * pi) + (z - 0.5) * std::log(t) - t + std::log(A);
}

}  // namespace detail

// Principal-branch-compatible log Gamma: the Lanczos branch on Re(z) >= 0.5,
// continued by the reflection formula elsewhere (matches SciPy's loggamma on
// the reflection strip up to the shared sinln convention).
inline cplx log_gamma(cplx z) {
    if (is_nonpositive_integer(z)) throw pole_error("log_gamma at non-positive integer");
    if (z.real() >= 0.5) return detail::lgamma_main(z);
    return std::log(pi) - detail::sinln(pi * z) - detail::lgamma_main(1.0 - z);
}

// Entire reciprocal 1/Gamma. Near the poles of Gamma this is the safe route.
inline cplx rec_gamma(cplx z) {
    if (z.real() < 0.5)
        return std::sin(pi * z) / pi * std::exp(detail::lgamma_main(1.0 - z));
    return std::exp(-detail::lgamma_main(z));
}

inline cplx gamma_fn(cplx z) { return std::exp(log_gamma(z)); }

// Gamma(a+b) * Gamma(a-b); the paper's f(a +- b) convention.
inline cplx gamma_pm(cplx a, cplx b) {
    return std::exp(log_gamma(a + b) + log_gamma(a - b));
}

// exp( sum lgamma(num) - sum lgamma(den) ) with pole bookkeeping:
// a denominator pole contributes a zero, a numerator pole raises.
inline cplx gamma_ratio(std::initializer_list<cplx> num, std::initializer_list<cplx> den) {
    cplx expo = 0.0;
    int zero_order = 0;
    for (cplx z : num) {
        if (is_nonpositive_integer(z)) throw pole_error("gamma_ratio: numerator pole");
        expo += log_gamma(z);
    }
    for (cplx z : den) {
        if (is_nonpositive_integer(z)) {
            ++zero_order;
            continue;
        }
        expo -= log_gamma(z);
    }
    if (zero_order > 0) return 0.0;
    return std::exp(expo);
}

// ---------------------------------------------------------------------------
// Pochhammer symbols
// ---------------------------------------------------------------------------

inline cplx pochhammer(cplx a, int n) {
    if (n < 0) throw domain_error("pochhammer: negative index");
    if (n <= 30) {
        cplx r = 1.0;
        for (int k = 0; k < n; ++k) r *= a + static_cast<double>(k);
        return r;
    }
    // gamma-ratio form for long products, unless a zero factor lurks in range
    double ar = std::round(a.real());
    bool risky = std::abs(a.imag()) < 1e-9 && std::abs(a.real() - ar) < 1e-9 &&
                 ar <= 0.0 && ar > -static_cast<double>(n);
    if (risky) {
        cplx r = 1.0;
        for (int k = 0; k < n; ++k) r *= a + static_cast<double>(k);
        return r;
    }
    return std::exp(log_gamma(a + static_cast<double>(n)) - log_gamma(a));
}

// (a+b)_n (a-b)_n
inline cplx pochhammer_pm(cplx a, cplx b, int n) {
    return pochhammer(a + b, n) * pochhammer(a - b, n);
}

// ---------------------------------------------------------------------------
// q-shifted factorials and theta
// ---------------------------------------------------------------------------

inline constexpr int q_infinity = -1;

inline cplx q_pochhammer(cplx a, double q, int n,
                         const SeriesConfig& cfg = SeriesConfig{}) {
    if (!(q > 0.0 && q < 1.0)) throw domain_error("q_pochhammer: q must be in (0,1)");
    if (n == q_infinity) {
        cplx r = 1.0;
        cplx t = a;
        for (int k = 0; k < cfg.max_terms; ++k) {
            r *= (1.0 - t);
            t *= q;
            if (std::abs(t) / (1.0 - q) < 1e-18 || std::abs(t) < cfg.abs_floor) {
                // first-order tail of the remaining product
                r *= (1.0 - t / (1.0 - q));
                return r;
            }
        }
        throw non_convergence_error("q_pochhammer: infinite product did not converge");
    }
    if (n < 0) throw domain_error("q_pochhammer: negative index");
    cplx r = 1.0;
    cplx t = a;
    for (int k = 0; k < n; ++k) {
        r *= (1.0 - t);
        t *= q;
    }
    return r;
}

inline cplx q_pochhammer_multi(std::initializer_list<cplx> as, double q, int n) {
    cplx r = 1.0;
    for (cplx a : as) r *= q_pochhammer(a, q, n);
    return r;
}

// log|.| with sign for real arguments; overflow-safe for |a| >> 1 factors.
struct LogSigned {
    double log_abs = 0.0;
    double sign = 1.0;
    double value() const { return sign * std::exp(log_abs); }
};

inline LogSigned q_pochhammer_log(double a, double q, int n,
                                  const SeriesConfig& cfg = SeriesConfig{}) {
    LogSigned out;
    double t = a;
    int k = 0;
    while (true) {
        if (n != q_infinity && k >= n) break;
        double f = 1.0 - t;
        if (f == 0.0) {
            out.log_abs = -std::numeric_limits<double>::infinity();
            return out;
        }
        out.log_abs += std::log(std::abs(f));
        if (f < 0.0) out.sign = -out.sign;
        t *= q;
        ++k;
        if (n == q_infinity && std::abs(t) / (1.0 - q) < 1e-18) {
            out.log_abs += std::log1p(-t / (1.0 - q));
            break;
        }
        if (k > cfg.max_terms) throw non_convergence_error("q_pochhammer_log");
    }
    return out;
}

// theta(y;q) = (y;q)_inf (q/y;q)_inf
inline cplx jacobi_theta(cplx y, double q) {
    if (y == cplx(0.0)) throw domain_error("jacobi_theta: y = 0");
    return q_pochhammer(y, q, q_infinity) * q_pochhammer(q / y, q, q_infinity);
}

inline LogSigned jacobi_theta_log(double y, double q) {
    if (y == 0.0) throw domain_error("jacobi_theta_log: y = 0");
    LogSigned a = q_pochhammer_log(y, q, q_infinity);
    LogSigned b = q_pochhammer_log(q / y, q, q_infinity);
    return {a.log_abs + b.log_abs, a.sign * b.sign};
}

// ---------------------------------------------------------------------------
// Terminating pFq at unit argument
// ---------------------------------------------------------------------------

// Sum of the n+1 terms; n = the smallest non-positive-integer numerator
// parameter. Terms by ratio recurrence, Neumaier accumulation.
inline cplx hyp_pfq_terminating(const std::vector<cplx>& num, const std::vector<cplx>& den,
                                cplx arg = 1.0) {
    int nterm = -1;
    for (cplx a : num) {
        if (is_nonpositive_integer(a)) {
            int cand = static_cast<int>(std::lround(-a.real()));
            if (nterm < 0 || cand < nterm) nterm = cand;
        }
    }
    if (nterm < 0) throw domain_error("hyp_pfq_terminating: no terminating parameter");
    for (cplx b : den) {
        if (is_nonpositive_integer(b)) {
            int nb = static_cast<int>(std::lround(-b.real()));
            if (nb < nterm)
                throw pole_error("hyp_pfq_terminating: denominator pole before termination");
        }
    }
    CompensatedSum s;
    cplx t = 1.0;
    for (int k = 0; k <= nterm; ++k) {
        s.add(t);
        if (k == nterm) break;
        cplx r = arg;
        for (cplx a : num) r *= a + static_cast<double>(k);
        for (cplx b : den) r /= b + static_cast<double>(k);
        r /= static_cast<double>(k + 1);
        t *= r;
    }
    return s.value();
}

// ---------------------------------------------------------------------------
// Nonterminating series at unit argument with asymptotic tail correction
// ---------------------------------------------------------------------------
//
// Terms are defined by t_0 and the rational ratio
//   t_{n+1}/t_n = prod_i (u_i + n) / prod_j (v_j + n),  |u| = |v|,
// so the remainder R_N = t_N * psi(N) where psi solves
//   psi(N) = 1 + r(N) psi(N+1)
// as an asymptotic series psi(N) ~ sum_k c_k N^{1-k}. Convergence requires
// Re(rho1) < -1 where rho1 = sum(u) - sum(v).

namespace detail {

template <class C>
double abs_est(const C& z) {
    if constexpr (std::is_same_v<C, cplx>)
        return std::abs(z);
    else
        return abs_estimate(z);
}

template <class C>
std::vector<C> poly_coeffs_from_roots(const std::vector<C>& roots, std::size_t m) {
    // prod (1 + r x) truncated to order m-1 in x
    std::vector<C> p(m, C(0.0));
    p[0] = C(1.0);
    for (const C& r : roots) {
        for (std::size_t k = m - 1; k >= 1; --k) p[k] = p[k] + r * p[k - 1];
    }
    return p;
}

template <class C>
std::vector<C> series_div(const std::vector<C>& p, const std::vector<C>& q) {
    std::size_t m = p.size();
    std::vector<C> out(m, C(0.0));
    std::vector<C> acc = p;
    for (std::size_t k = 0; k < m; ++k) {
        out[k] = acc[k] / q[0];
        for (std::size_t j = k; j < m; ++j) acc[j] = acc[j] - out[k] * q[j - k];
    }
    return out;
}

inline double binom_gen_real(int alpha, int j) {
    double r = 1.0;
    for (int i = 0; i < j; ++i) r *= static_cast<double>(alpha - i) / (i + 1);
    return r;
}

// psi(N) for the remainder; throws when the leading balance degenerates.
template <class C>
C tail_psi(const std::vector<C>& num_roots, const std::vector<C>& den_roots, int N,
           std::size_t m = 12) {
    if (num_roots.size() != den_roots.size())
        throw domain_error("tail_psi: ratio must tend to 1");
    std::vector<C> P = poly_coeffs_from_roots(num_roots, m);
    std::vector<C> Q = poly_coeffs_from_roots(den_roots, m);
    std::vector<C> rho = series_div(P, Q);
    if (abs_est(rho[1] + C(1.0)) < 1e-8)
        throw non_convergence_error("tail_psi: series at the convergence boundary");
    std::vector<C> c(m, C(0.0));
    for (std::size_t K = 1; K < m; ++K) {
        C s(0.0), coef(0.0);
        for (std::size_t i = 0; i <= K; ++i) {
            for (std::size_t k = 0; k + i <= K; ++k) {
                std::size_t j = K - i - k;
                if (k == K && i == 0 && j == 0) continue;
                C w = rho[i] * C(binom_gen_real(1 - static_cast<int>(k), static_cast<int>(j)));
                if (k == K - 1)
                    coef = coef + w;
                else if (k + 1 < K)
                    s = s + w * c[k];
            }
        }
        C rhs = (K == 1) ? C(1.0) : C(0.0);
        if (abs_est(coef) < 1e-10)
            throw non_convergence_error("tail_psi: resonant exponent");
        c[K - 1] = (C(0.0) - (rhs + s)) / coef;
    }
    C psi(0.0);
    double Npow = static_cast<double>(N);
    // psi = sum c_k N^{1-k}
    C npow(Npow);
    psi = c[0] * npow;
    C inv = C(1.0) / C(Npow);
    C cur(1.0);
    for (std::size_t k = 1; k < m; ++k) {
        cur = cur * inv;
        psi = psi + c[k] * (npow * cur);
    }
    return psi;
}

template <class C>
struct UnitSeriesResult {
    C value{};
    double kappa = 1.0;  // max partial magnitude / |value|: cancellation monitor
    int terms = 0;
};

template <class C>
UnitSeriesResult<C> sum_unit_series(const std::vector<C>& num_roots,
                                    const std::vector<C>& den_roots, C t0, int N,
                                    std::size_t tail_order = 12) {
    UnitSeriesResult<C> out;
    C s(0.0), t = t0;
    double peak = 0.0;
    for (int n = 0; n < N; ++n) {
        s = s + t;
        peak = std::max(peak, std::max(abs_est(s), abs_est(t)));
        C r(1.0);
        for (const C& u : num_roots) r = r * (u + C(static_cast<double>(n)));
        for (const C& v : den_roots) r = r / (v + C(static_cast<double>(n)));
        t = t * r;
    }
    C tail = t * tail_psi(num_roots, den_roots, N, tail_order);
    out.value = s + tail;
    double av = abs_est(out.value);
    out.kappa = av > 0 ? peak / av : std::numeric_limits<double>::infinity();
    out.terms = N;
    return out;
}

// pick a summation depth that reaches the asymptotic regime of the ratio
template <class C>
int unit_series_depth(const std::vector<C>& roots_a, const std::vector<C>& roots_b) {
    double biggest = 1.0;
    for (const C& r : roots_a) biggest = std::max(biggest, abs_est(r));
    for (const C& r : roots_b) biggest = std::max(biggest, abs_est(r));
    return std::min(2000, std::max(64, static_cast<int>(4.0 * biggest)));
}

}  // namespace detail

// Nonterminating pFq at unit argument (p = q+1), tail-corrected.
// Returns the value; `kappa_out`, when given, receives the cancellation ratio.
inline cplx hyp_pfq_unit(const std::vector<cplx>& num, const std::vector<cplx>& den,
                         const SeriesConfig& cfg = SeriesConfig{},
                         double* kappa_out = nullptr) {
    if (num.size() != den.size() + 1)
        throw domain_error("hyp_pfq_unit: needs p = q+1 at unit argument");
    std::vector<cplx> u = num;
    std::vector<cplx> v = den;
    v.push_back(1.0);
    int N = detail::unit_series_depth(u, v);
    N = std::min(N, cfg.max_terms);
    auto res = detail::sum_unit_series<cplx>(u, v, 1.0, N);
    if (kappa_out) *kappa_out = res.kappa;
    return res.value;
}

// Very-well-poised 7F6 at unit argument, Bailey W(a; b,c,d,e,f) normalization.
inline cplx hyp_7f6_vwp(cplx a, cplx b, cplx c, cplx d, cplx e, cplx f,
                        const SeriesConfig& cfg = SeriesConfig{},
                        double* kappa_out = nullptr) {
    // term_n = ((a+2n)/a) (a)_n (b..f)_n / (n! (1+a-b)_n ... (1+a-f)_n)
    std::vector<cplx> u = {a, b, c, d, e, f, a / 2.0 + 1.0};
    std::vector<cplx> v = {1.0 + a - b, 1.0 + a - c, 1.0 + a - d,
                           1.0 + a - e, 1.0 + a - f, 1.0,        a / 2.0};
    // convergence: Re(sum u - sum v) < -1
    cplx rho1 = 0.0;
    for (cplx z : u) rho1 += z;
    for (cplx z : v) rho1 -= z;
    bool terminating = false;
    for (cplx z : {b, c, d, e, f})
        if (is_nonpositive_integer(z)) terminating = true;
    if (!terminating && rho1.real() >= -1.0)
        throw non_convergence_error("hyp_7f6_vwp: outside the convergence domain");
    if (terminating) {
        int nterm = cfg.max_terms;
        for (cplx z : {b, c, d, e, f})
            if (is_nonpositive_integer(z))
                nterm = std::min(nterm, static_cast<int>(std::lround(-z.real())));
        CompensatedSum s;
        cplx t = 1.0;
        for (int n = 0; n <= nterm; ++n) {
            s.add(t * ((a + 2.0 * n) / a));
            if (n == nterm) break;
            double nn = n;
            cplx r = (a + nn) * (b + nn) * (c + nn) * (d + nn) * (e + nn) * (f + nn);
            r /= (nn + 1.0) * (1.0 + a - b + nn) * (1.0 + a - c + nn) *
                 (1.0 + a - d + nn) * (1.0 + a - e + nn) * (1.0 + a - f + nn);
            t *= r;
        }
        if (kappa_out) *kappa_out = 1.0;
        return s.value();
    }
    int N = std::min(detail::unit_series_depth(u, v), cfg.max_terms);
    auto res = detail::sum_unit_series<cplx>(u, v, 1.0, N);
    if (kappa_out) *kappa_out = res.kappa;
    return res.value;
}

// ---------------------------------------------------------------------------
// Basic hypergeometric series (Gasper-Rahman convention)
// ---------------------------------------------------------------------------

// r phi s: sum (a1..ar;q)_n / ((q;q)_n (b1..bs;q)_n) [(-1)^n q^(n(n-1)/2)]^{1+s-r} z^n
inline cplx basic_hyp_rphis(const std::vector<cplx>& num, const std::vector<cplx>& den,
                            double q, cplx arg, const SeriesConfig& cfg = SeriesConfig{}) {
    if (!(q > 0.0 && q < 1.0)) throw domain_error("basic_hyp_rphis: q in (0,1)");
    int extra = 1 + static_cast<int>(den.size()) - static_cast<int>(num.size());
    // termination: numerator parameter equal to q^{-n}
    int nterm = -1;
    for (cplx a : num) {
        if (std::abs(a.imag()) < 1e-13 && a.real() > 1.0 - 1e-13) {
            double n = std::log(a.real()) / std::log(1.0 / q);
            double rn = std::round(n);
            if (std::abs(n - rn) < 1e-10) {
                int cand = static_cast<int>(rn);
                if (nterm < 0 || cand < nterm) nterm = cand;
            }
        }
    }
    if (nterm < 0 && std::abs(arg) >= 1.0 && extra == 0)
        throw non_convergence_error("basic_hyp_rphis: |arg| >= 1 and nonterminating");
    CompensatedSum s;
    cplx t = 1.0;
    int small_streak = 0;
    for (int n = 0;; ++n) {
        s.add(t);
        if (nterm >= 0 && n == nterm) break;
        if (n + 1 >= cfg.max_terms)
            throw non_convergence_error("basic_hyp_rphis: max_terms exhausted");
        double qn = std::pow(q, n);
        cplx r = arg;
        for (cplx a : num) r *= (1.0 - a * qn);
        for (cplx b : den) {
            cplx fb = 1.0 - b * qn;
            if (std::abs(fb) < 1e-300)
                throw pole_error("basic_hyp_rphis: forbidden denominator parameter");
            r /= fb;
        }
        r /= (1.0 - q * qn);
        if (extra != 0) {
            cplx g = -qn;  // (-1) q^n ; accumulated gives (-1)^n q^(n(n-1)/2) per step
            for (int i = 0; i < std::abs(extra); ++i) r = extra > 0 ? r * g : r / g;
        }
        t *= r;
        if (nterm < 0) {
            if (std::abs(t) < cfg.rel_tol * std::max(1.0, std::abs(s.value())))
                ++small_streak;
            else
                small_streak = 0;
            if (small_streak >= 3) break;
        }
    }
    return s.value();
}

// Very-well-poised 8W7(a; b,c,d,e,f; q, z).
inline cplx hyp_8w7(cplx a, cplx b, cplx c, cplx d, cplx e, cplx f, double q, cplx arg,
                    const SeriesConfig& cfg = SeriesConfig{}) {
    if (!(q > 0.0 && q < 1.0)) throw domain_error("hyp_8w7: q in (0,1)");
    bool terminating = false;
    int nterm = cfg.max_terms;
    for (cplx z : {b, c, d, e, f}) {
        if (std::abs(z.imag()) < 1e-13 && z.real() > 1.0 - 1e-13) {
            double n = std::log(std::abs(z.real())) / std::log(1.0 / q);
            double rn = std::round(n);
            if (std::abs(n - rn) < 1e-10) {
                terminating = true;
                nterm = std::min(nterm, static_cast<int>(rn));
            }
        }
    }
    if (!terminating && std::abs(arg) >= 1.0)
        throw non_convergence_error("hyp_8w7: |arg| >= 1 and nonterminating");
    CompensatedSum s;
    cplx t = 1.0;
    int small_streak = 0;
    for (int n = 0;; ++n) {
        double q2n = std::pow(q, 2 * n);
        s.add(t * (1.0 - a * q2n) / (1.0 - a));
        if (terminating && n == nterm) break;
        if (n + 1 >= cfg.max_terms) throw non_convergence_error("hyp_8w7: max_terms");
        double qn = std::pow(q, n);
        cplx r = arg;
        for (cplx z : {a, b, c, d, e, f}) r *= (1.0 - z * qn);
        for (cplx z : {cplx(q), a * q / b, a * q / c, a * q / d, a * q / e, a * q / f}) {
            cplx fb = 1.0 - z * qn;
            if (std::abs(fb) < 1e-300) throw pole_error("hyp_8w7: forbidden denominator");
            r /= fb;
        }
        t *= r;
        if (!terminating) {
            if (std::abs(t) < cfg.rel_tol * std::max(1.0, std::abs(s.value())))
                ++small_streak;
            else
                small_streak = 0;
            if (small_streak >= 3) break;
        }
    }
    return s.value();
}

}  // namespace wilsonkit
