#pragma once

#include "qpwh/specfun.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace testsupport {

using qpwh::cplx;

// Literal rotated compositions, independent of the library's sign/wedge rules.
inline cplx literal_sqrt_down(cplx z)
{
    return std::polar(1.0, qpwh::pi / 4.0) * std::sqrt(cplx(0.0, -1.0) * z);
}

inline cplx literal_diag_log(cplx z)
{
    return std::log(std::polar(1.0, -qpwh::pi / 4.0) * z) + cplx(0.0, qpwh::pi / 4.0);
}

inline double rel(cplx a, cplx b)
{
    return std::abs(a - b) / std::abs(b);
}

// Random complex numbers with log-uniform modulus and uniform argument.
class ComplexGen {
public:
    explicit ComplexGen(unsigned long long seed, double lo_exp = -2.0, double hi_exp = 2.0)
        : rng_(seed), mag_(lo_exp, hi_exp), arg_(-qpwh::pi, qpwh::pi)
    {
    }

    cplx operator()() { return std::polar(std::pow(10.0, mag_(rng_)), arg_(rng_)); }

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }

private:
    std::mt19937_64 rng_;
    std::uniform_real_distribution<double> mag_;
    std::uniform_real_distribution<double> arg_;
};

inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    double n = static_cast<double>(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        double a = std::log(x[i]), b = std::log(y[i]);
        sx += a;
        sy += b;
        sxx += a * a;
        sxy += a * b;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace testsupport
