#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace wilsonkit {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;

// Error taxonomy. Callers that need exit-code mapping catch these by type.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct pole_error : numerical_error {
    using numerical_error::numerical_error;
};
struct non_convergence_error : numerical_error {
    using numerical_error::numerical_error;
};
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Controls for the open-ended series engines.
struct SeriesConfig {
    int max_terms = 10000;
    double rel_tol = 1e-12;
    double abs_floor = 1e-280;  // underflow guard for infinite q-products
};

// Neumaier compensated accumulator, applied per component of a complex sum.
class CompensatedSum {
public:
    void add(cplx t) {
        add_part(re_, re_c_, t.real());
        add_part(im_, im_c_, t.imag());
    }
    cplx value() const { return {re_ + re_c_, im_ + im_c_}; }

private:
    static void add_part(double& s, double& c, double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double re_ = 0, re_c_ = 0, im_ = 0, im_c_ = 0;
};

inline bool is_nonpositive_integer(cplx z, double tol = 1e-12) {
    double r = std::round(z.real());
    return r <= 0.5 && std::abs(z.real() - r) < tol && std::abs(z.imag()) < tol &&
           r < 0.5;
}

// Error convention used by the verification layers: relative when the
// reference is O(1) or larger, absolute near zeros.
inline double mixed_err(cplx got, cplx ref) {
    double scale = std::max(1.0, std::abs(ref));
    return std::abs(got - ref) / scale;
}

}  // namespace wilsonkit
