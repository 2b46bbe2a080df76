#pragma once

// Test-only oracles. These deliberately use different algorithms than the
// library paths they certify:
//  * lgamma_oracle     - Spouge's formula in double-double (~1e-30 relative),
//                        against the production Lanczos log_gamma.
//  * RationalComplex   - exact Gaussian-rational arithmetic for terminating
//                        hypergeometric sums.
//  * contour_residue   - small-circle trapezoid residue, against closed-form
//                        measure masses.

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <vector>

#include "wilsonkit/common.hpp"
#include "wilsonkit/dd.hpp"

namespace wilsonkit::testing {

// ---- Spouge lgamma in dd ----------------------------------------------------

// Shifted Stirling series in dd: recursion into Re(w) >= 60, sixteen exact
// Bernoulli terms. Distinct precision and series from the production Lanczos
// path it certifies; shares only the sinln reflection convention by design.
inline ddcplx lgamma_oracle_dd(ddcplx z) {
    if (z.re.hi < 0.5) {
        static const dd logpi = dd_log(dd_pi);
        return ddcplx(logpi) - dd_log_sin_pi(z) - lgamma_oracle_dd(ddcplx(dd(1.0)) - z);
    }
    static const double bnum[16] = {1, -1, 1, -1, 5, -691, 7, -3617, 43867, -174611,
                                    854513, -236364091, 8553103, -23749461029.0,
                                    8615841276005.0, -7709321041217.0};
    static const double bden[16] = {6, 30, 42, 30, 66, 2730, 6, 510, 798, 330,
                                    138, 2730, 6, 870, 14322, 510};
    int m = 0;
    while (z.re.hi + m < 60.0) ++m;
    ddcplx w = z + ddcplx(dd(static_cast<double>(m)));
    static const dd half_log_2pi = dd_log(dd_2pi) * dd(0.5);
    ddcplx res = (w - ddcplx(dd(0.5))) * dd_log(w) - w + ddcplx(half_log_2pi);
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

inline cplx lgamma_oracle(cplx z) { return lgamma_oracle_dd(ddcplx(z)).to_cplx(); }

// ---- exact Gaussian-rational arithmetic -------------------------------------

using big_rational = boost::multiprecision::cpp_rational;

struct RationalComplex {
    big_rational re{0}, im{0};
    RationalComplex() = default;
    RationalComplex(long r) : re(r) {}
    RationalComplex(big_rational r, big_rational i) : re(std::move(r)), im(std::move(i)) {}
    static RationalComplex of(long rn, long rd, long in_, long id_) {
        return {big_rational(rn, rd), big_rational(in_, id_)};
    }
    cplx to_cplx() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
};

inline RationalComplex operator+(const RationalComplex& a, const RationalComplex& b) {
    return {a.re + b.re, a.im + b.im};
}
inline RationalComplex operator-(const RationalComplex& a, const RationalComplex& b) {
    return {a.re - b.re, a.im - b.im};
}
inline RationalComplex operator*(const RationalComplex& a, const RationalComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline RationalComplex operator/(const RationalComplex& a, const RationalComplex& b) {
    big_rational n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

// terminating pFq at a rational argument, exact arithmetic
inline RationalComplex pfq_terminating_exact(const std::vector<RationalComplex>& num,
                                             const std::vector<RationalComplex>& den,
                                             const RationalComplex& arg, int nterm) {
    RationalComplex s, t;
    t.re = 1;
    for (int k = 0; k <= nterm; ++k) {
        s = s + t;
        if (k == nterm) break;
        RationalComplex kk;
        kk.re = k;
        RationalComplex r = arg;
        for (const auto& a : num) r = r * (a + kk);
        for (const auto& b : den) r = r / (b + kk);
        RationalComplex k1;
        k1.re = k + 1;
        r = r / k1;
        t = t * r;
    }
    return s;
}

// ---- contour residue oracle --------------------------------------------------

// (1/2 pi i) * closed contour integral of f around x0, small circle.
inline cplx contour_residue(const std::function<cplx(cplx)>& f, cplx x0,
                            double radius = 1e-3, int nodes = 64) {
    cplx acc = 0.0;
    for (int k = 0; k < nodes; ++k) {
        double th = 2.0 * pi * k / nodes;
        cplx w = std::polar(radius, th);
        acc += f(x0 + w) * w;
    }
    return acc / static_cast<double>(nodes);
}

}  // namespace wilsonkit::testing
