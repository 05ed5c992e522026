#include "qpwh/specfun.hpp"

#include "qpwh/errors.hpp"

#include <cmath>
#include <string>

namespace qpwh {

void require_finite(cplx z, const char* what)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw NonFiniteError(std::string(what) + ": non-finite value");
}

bool admissible_kappa_param(cplx K)
{
    double tol = 1e-12 * std::abs(K);
    return std::abs(K) > 0.0 && K.real() >= -tol && K.imag() >= -tol;
}

cplx sqrt_down(cplx z)
{
    require_finite(z, "sqrt_down");
    // drop negative zeros so that the principal cut is never entered from below
    z = cplx(z.real() + 0.0, z.imag() + 0.0);
    cplx r = std::sqrt(z);
    if (z.imag() < 0.0 && z.real() <= 0.0)
        r = -r;
    return r;
}

cplx diag_log(cplx z)
{
    require_finite(z, "diag_log");
    if (z == cplx(0.0, 0.0))
        throw DomainError("diag_log: logarithm of zero");
    z = cplx(z.real() + 0.0, z.imag() + 0.0);
    cplx l = std::log(z);
    if (z.real() < 0.0 && z.imag() < 0.0 && z.imag() >= z.real())
        l += cplx(0.0, 2.0 * pi);
    return l;
}

cplx kappa(cplx K, cplx z)
{
    require_finite(K, "kappa");
    require_finite(z, "kappa");
    if (!admissible_kappa_param(K))
        throw DomainError("kappa: parameter outside the quadrant Re >= 0, Im >= 0, K != 0");
    return sqrt_down(K - z) * sqrt_down(K + z);
}

namespace {

bool on_sqrt_cut(cplx w)
{
    return w.real() == 0.0 && w.imag() < 0.0;
}

cplx checked_sqrt(cplx w, const char* what)
{
    if (on_sqrt_cut(w))
        throw BranchCutError(std::string(what) + ": argument on the branch cut");
    return sqrt_down(w);
}

cplx checked_kappa(cplx K, cplx z, const char* what)
{
    require_finite(K, what);
    require_finite(z, what);
    if (!admissible_kappa_param(K))
        throw DomainError(std::string(what) + ": inner kappa outside its admissible quadrant");
    return checked_sqrt(K - z, what) * checked_sqrt(K + z, what);
}

cplx checked_inverse(cplx w, const char* what)
{
    if (w == cplx(0.0, 0.0))
        throw NonFiniteError(std::string(what) + ": division by zero at a branch point");
    cplx r = 1.0 / w;
    require_finite(r, what);
    return r;
}

} // namespace

cplx big_k(const SpectralPoint& p, double k)
{
    cplx inner = checked_kappa(cplx(k, 0.0), p.a2, "big_k");
    return checked_inverse(checked_kappa(inner, p.a1, "big_k"), "big_k");
}

cplx gamma_fn(const SpectralPoint& p, double k)
{
    return cplx(0.0, -1.0) / big_k(p, k);
}

cplx half_factor(const SpectralPoint& p, double k, HalfLabel which)
{
    const char* what = to_string(which);
    switch (which) {
    case HalfLabel::minus_circ:
        return checked_inverse(checked_sqrt(checked_kappa(k, p.a2, what) - p.a1, what), what);
    case HalfLabel::plus_circ:
        return checked_inverse(checked_sqrt(checked_kappa(k, p.a2, what) + p.a1, what), what);
    case HalfLabel::circ_minus:
        return checked_inverse(checked_sqrt(checked_kappa(k, p.a1, what) - p.a2, what), what);
    case HalfLabel::circ_plus:
        return checked_inverse(checked_sqrt(checked_kappa(k, p.a1, what) + p.a2, what), what);
    }
    throw DomainError("half_factor: unknown label");
}

const char* to_string(HalfLabel h)
{
    switch (h) {
    case HalfLabel::minus_circ: return "K-o";
    case HalfLabel::plus_circ: return "K+o";
    case HalfLabel::circ_minus: return "Ko-";
    case HalfLabel::circ_plus: return "Ko+";
    }
    return "?";
}

} // namespace qpwh
