#pragma once

// Double-double arithmetic (~31 significant digits). Used two ways:
//  * the cancellation-escalation path of the Wilson/Askey-Wilson function
//    evaluators, where the two balanced-series terms nearly cancel;
//  * the slow high-precision gamma oracle in the test suite.
// Algorithms follow the classic error-free transformation toolkit
// (two_sum / two_prod with fma), as in the QD library.

#include <cmath>
#include <cstdint>

#include "wilsonkit/common.hpp"

namespace wilsonkit {

struct dd {
    double hi = 0.0;
    double lo = 0.0;
    dd() = default;
    constexpr dd(double h) : hi(h), lo(0.0) {}
    constexpr dd(double h, double l) : hi(h), lo(l) {}
    explicit operator double() const { return hi + lo; }
};

namespace detail {
inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}
inline dd two_sum(double a, double b) {
    double s = a + b;
    double v = s - a;
    return {s, (a - (s - v)) + (b - v)};
}
inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}
}  // namespace detail

inline dd operator+(dd a, dd b) {
    dd s = detail::two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return detail::quick_two_sum(s.hi, s.lo);
}
inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }
inline dd operator*(dd a, dd b) {
    dd p = detail::two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return detail::quick_two_sum(p.hi, p.lo);
}
inline dd operator/(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = a - b * dd(q1);
    double q2 = r.hi / b.hi;
    r = r - b * dd(q2);
    double q3 = r.hi / b.hi;
    dd q = detail::quick_two_sum(q1, q2);
    return q + dd(q3);
}
inline dd& operator+=(dd& a, dd b) { a = a + b; return a; }
inline dd& operator-=(dd& a, dd b) { a = a - b; return a; }
inline dd& operator*=(dd& a, dd b) { a = a * b; return a; }
inline dd& operator/=(dd& a, dd b) { a = a / b; return a; }
inline bool operator<(dd a, dd b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(dd a, dd b) { return b < a; }
inline dd dd_abs(dd a) { return a.hi < 0 ? -a : a; }

inline constexpr dd dd_pi{3.141592653589793116e+00, 1.224646799147353207e-16};
inline constexpr dd dd_2pi{6.283185307179586232e+00, 2.449293598294706414e-16};
inline constexpr dd dd_pi_2{1.570796326794896558e+00, 6.123233995736766036e-17};
inline constexpr dd dd_ln2{6.931471805599452862e-01, 2.319046813846299558e-17};

inline dd dd_sqrt(dd a) {
    if (a.hi == 0.0) return dd(0.0);
    double x = 1.0 / std::sqrt(a.hi);
    double ax = a.hi * x;
    return dd(ax) + (a - dd(ax) * dd(ax)) * dd(x * 0.5);
}

inline dd dd_exp(dd a) {
    if (a.hi > 709.0) throw numerical_error("dd_exp overflow");
    if (a.hi < -709.0) return dd(0.0);
    double k = std::round(a.hi / dd_ln2.hi);
    dd r = a - dd_ln2 * dd(k);
    // |r| <= ln2/2; plain Taylor keeps the rounding error unamplified
    dd sum(1.0), term(1.0);
    for (int i = 1; i <= 30; ++i) {
        term = term * r / dd(static_cast<double>(i));
        sum += term;
        if (std::abs(term.hi) < 1e-35 * std::abs(sum.hi)) break;
    }
    return sum * dd(std::ldexp(1.0, static_cast<int>(k)));
}

inline dd dd_log(dd a) {
    if (!(a.hi > 0.0)) throw domain_error("dd_log of non-positive value");
    dd y(std::log(a.hi));
    y = y + a * dd_exp(-y) - dd(1.0);
    y = y + a * dd_exp(-y) - dd(1.0);
    return y;
}

inline void dd_sincos(dd a, dd& s, dd& c) {
    double k = std::round((a.hi + a.lo) / dd_pi_2.hi);
    dd r = a - dd_pi_2 * dd(k);
    // Taylor on |r| <= pi/4
    dd r2 = r * r, ts = r, tc(1.0), sn = r, cs(1.0);
    for (int i = 1; i <= 16; ++i) {
        ts = ts * r2 / dd(static_cast<double>(2 * i) * (2 * i + 1));
        sn += (i % 2 ? -ts : ts);
        tc = tc * r2 / dd(static_cast<double>(2 * i) * (2 * i - 1));
        cs += (i % 2 ? -tc : tc);
    }
    long kk = static_cast<long>(k) & 3L;
    if (kk < 0) kk += 4;
    switch (kk) {
        case 0: s = sn; c = cs; break;
        case 1: s = cs; c = -sn; break;
        case 2: s = -sn; c = -cs; break;
        default: s = -cs; c = sn; break;
    }
}

inline dd dd_atan(dd t) {
    bool neg = t.hi < 0;
    if (neg) t = -t;
    int halvings = 0;
    while (t.hi > 0.05) {
        t = t / (dd(1.0) + dd_sqrt(dd(1.0) + t * t));
        ++halvings;
    }
    dd t2 = t * t, term = t, sum = t;
    for (int i = 1; i <= 16; ++i) {
        term = term * t2;
        dd contrib = term / dd(static_cast<double>(2 * i + 1));
        sum += (i % 2 ? -contrib : contrib);
    }
    sum = sum * dd(std::ldexp(1.0, halvings));
    return neg ? -sum : sum;
}

inline dd dd_atan2(dd y, dd x) {
    if (x.hi > 0.0) return dd_atan(y / x);
    if (x.hi < 0.0) {
        dd base = dd_atan(y / x);
        return y.hi >= 0 ? base + dd_pi : base - dd_pi;
    }
    return y.hi >= 0 ? dd_pi_2 : -dd_pi_2;
}

struct ddcplx {
    dd re, im;
    ddcplx() = default;
    ddcplx(dd r) : re(r), im(0.0) {}
    ddcplx(dd r, dd i) : re(r), im(i) {}
    ddcplx(double r) : re(r), im(0.0) {}
    ddcplx(cplx z) : re(z.real()), im(z.imag()) {}
    cplx to_cplx() const { return {double(re), double(im)}; }
};

inline ddcplx operator+(ddcplx a, ddcplx b) { return {a.re + b.re, a.im + b.im}; }
inline ddcplx operator-(ddcplx a, ddcplx b) { return {a.re - b.re, a.im - b.im}; }
inline ddcplx operator-(ddcplx a) { return {-a.re, -a.im}; }
inline ddcplx operator*(ddcplx a, ddcplx b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline ddcplx operator/(ddcplx a, ddcplx b) {
    dd n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
inline ddcplx& operator+=(ddcplx& a, ddcplx b) { a = a + b; return a; }
inline ddcplx& operator-=(ddcplx& a, ddcplx b) { a = a - b; return a; }
inline ddcplx& operator*=(ddcplx& a, ddcplx b) { a = a * b; return a; }
inline ddcplx& operator/=(ddcplx& a, ddcplx b) { a = a / b; return a; }
inline double abs_estimate(ddcplx a) { return std::hypot(a.re.hi, a.im.hi); }

inline ddcplx dd_exp(ddcplx z) {
    dd s, c;
    dd_sincos(z.im, s, c);
    dd e = dd_exp(z.re);
    return {e * c, e * s};
}

inline ddcplx dd_log(ddcplx z) {
    dd n = z.re * z.re + z.im * z.im;
    return {dd_log(n) * dd(0.5), dd_atan2(z.im, z.re)};
}

inline ddcplx dd_sqrt_c(ddcplx z) {
    return dd_exp(dd_log(z) * ddcplx(dd(0.5)));
}

// log Gamma in double-double: argument shift into |Re| >= 40, Stirling tail
// with exact Bernoulli coefficients, reflection for Re(z) < 0.5.
inline ddcplx dd_log_sin_pi(ddcplx z);

inline ddcplx dd_lgamma(ddcplx z) {
    if (z.re.hi < 0.5) {
        // log(pi) - log sin(pi z) - lgamma(1-z)
        dd logpi = dd_log(dd_pi);
        return ddcplx(logpi) - dd_log_sin_pi(z) - dd_lgamma(ddcplx(dd(1.0)) - z);
    }
    static const double bnum[16] = {1, -1, 1, -1, 5, -691, 7, -3617, 43867, -174611,
                                    854513, -236364091, 8553103, -23749461029.0,
                                    8615841276005.0, -7709321041217.0};
    static const double bden[16] = {6, 30, 42, 30, 66, 2730, 6, 510, 798, 330,
                                    138, 2730, 6, 870, 14322, 510};
    int m = 0;
    while (z.re.hi + m < 40.0) ++m;
    ddcplx w = z + ddcplx(dd(static_cast<double>(m)));
    ddcplx lw = dd_log(w);
    static const dd half_log_2pi = dd_log(dd_2pi) * dd(0.5);
    ddcplx res = (w - ddcplx(dd(0.5))) * lw - w + ddcplx(half_log_2pi);
    ddcplx winv = ddcplx(dd(1.0)) / w;
    ddcplx w2inv = winv * winv;
    ddcplx p = winv;
    for (int k = 1; k <= 16; ++k) {
        dd coef = dd(bnum[k - 1]) / (dd(bden[k - 1]) * dd(2.0 * k) * dd(2.0 * k - 1.0));
        res += p * ddcplx(coef);
        p = p * w2inv;
    }
    for (int j = 0; j < m; ++j) res -= dd_log(z + ddcplx(dd(static_cast<double>(j))));
    return res;
}

// Branch-stable log(sin z) for complex z (large |Im z| safe).
inline ddcplx dd_log_sin_pi(ddcplx z) {
    ddcplx x = ddcplx(dd_pi) * z;
    ddcplx i_unit{dd(0.0), dd(1.0)};
    ddcplx base = ddcplx(dd(0.0), -dd_pi_2) - ddcplx(dd_ln2);
    if (x.im.hi > 0.0) {
        ddcplx e = dd_exp(i_unit * x * ddcplx(dd(2.0)));
        return base - i_unit * x + dd_log(e - ddcplx(dd(1.0)));
    }
    ddcplx e = dd_exp(-(i_unit * x) * ddcplx(dd(2.0)));
    return base + i_unit * x + dd_log(ddcplx(dd(1.0)) - e);
}

}  // namespace wilsonkit
