#pragma once

#include <complex>

namespace qpwh {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

struct SpectralPoint {
    cplx a1;
    cplx a2;
};

// Square root with its cut on the negative imaginary axis.
// Arguments live in (-pi/2, 3pi/2]; real square root on the positive reals.
cplx sqrt_down(cplx z);

// Logarithm with its cut along arg z = -3pi/4; arguments in (-3pi/4, 5pi/4].
cplx diag_log(cplx z);

// sqrt_down(K - z) * sqrt_down(K + z), requires K in the closed first quadrant, K != 0.
cplx kappa(cplx K, cplx z);

// Relative tolerance 1e-12 on both signs.
bool admissible_kappa_param(cplx K);

// 1 / kappa(kappa(k, a2), a1)
cplx big_k(const SpectralPoint& p, double k);

// -i / big_k(p, k)
cplx gamma_fn(const SpectralPoint& p, double k);

enum class HalfLabel { minus_circ, plus_circ, circ_minus, circ_plus };

// Explicit half-plane factors:
//   minus_circ = 1/sqrt_down(kappa(k,a2) - a1), plus_circ = 1/sqrt_down(kappa(k,a2) + a1)
//   circ_minus = 1/sqrt_down(kappa(k,a1) - a2), circ_plus = 1/sqrt_down(kappa(k,a1) + a2)
cplx half_factor(const SpectralPoint& p, double k, HalfLabel which);

const char* to_string(HalfLabel h);

// Throws NonFiniteError when z has a NaN or infinite component.
void require_finite(cplx z, const char* what);

} // namespace qpwh
