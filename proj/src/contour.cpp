#include "qpwh/contour.hpp"

#include "qpwh/errors.hpp"

#include <cmath>
#include <limits>

namespace qpwh {

namespace {

cplx denominator(const ContourSpec& spec, double s)
{
    double s2 = s * s;
    cplx d = spec.a * (s2 * s2 + spec.c);
    if (d == cplx(0.0, 0.0))
        throw ContourError("contour: a(s^4 + c) vanishes");
    return d;
}

} // namespace

cplx contour_point(const ContourSpec& spec, double s)
{
    if (!std::isfinite(s))
        throw DomainError("contour_point: non-finite parameter");
    return s + s / denominator(spec, s);
}

cplx contour_derivative(const ContourSpec& spec, double s)
{
    if (!std::isfinite(s))
        throw DomainError("contour_derivative: non-finite parameter");
    denominator(spec, s);
    double s4 = s * s * s * s;
    cplx q = s4 + spec.c;
    return 1.0 + (spec.c - 3.0 * s4) / (spec.a * q * q);
}

void validate_contour(const ContourSpec& spec)
{
    if (spec.a == cplx(0.0, 0.0))
        throw ContourError("contour: a must be nonzero");
    if (spec.c.imag() == 0.0 && spec.c.real() <= 0.0)
        throw ContourError("contour: s^4 + c vanishes for real s when c is real and nonpositive");
    const int n = 10000;
    const double umax = std::asinh(1e6);
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        double s = std::sinh(-umax + 2.0 * umax * i / (n - 1));
        double re = contour_point(spec, s).real();
        if (!(re > prev) || !(contour_derivative(spec, s).real() > 0.0))
            throw ContourError("contour: Re A(s) is not strictly increasing");
        prev = re;
    }
}

const char* to_string(Side s)
{
    switch (s) {
    case Side::above: return "above";
    case Side::on: return "on";
    case Side::below: return "below";
    }
    return "?";
}

double parameter_at(const ContourSpec& spec, double x)
{
    if (!std::isfinite(x))
        throw DomainError("parameter_at: non-finite abscissa");
    double w = 1.0;
    double lo = x - w;
    double hi = x + w;
    int guard = 0;
    while (contour_point(spec, lo).real() > x) {
        w *= 2.0;
        lo = x - w;
        if (++guard > 200)
            throw ContourError("parameter_at: no bracket");
    }
    w = 1.0;
    while (contour_point(spec, hi).real() < x) {
        w *= 2.0;
        hi = x + w;
        if (++guard > 400)
            throw ContourError("parameter_at: no bracket");
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if (contour_point(spec, mid).real() < x)
            lo = mid;
        else
            hi = mid;
    }
    double flo = contour_point(spec, lo).real();
    double fhi = contour_point(spec, hi).real();
    if (flo > fhi)
        throw ContourError("parameter_at: Re A(s) not increasing");
    return (x - flo <= fhi - x) ? lo : hi;
}

double vertical_gap(const ContourSpec& spec, cplx z)
{
    double s = parameter_at(spec, z.real());
    return z.imag() - contour_point(spec, s).imag();
}

Side classify_side(const ContourSpec& spec, cplx z, double tol)
{
    require_finite(z, "classify_side");
    double g = vertical_gap(spec, z);
    if (g > tol)
        return Side::above;
    if (g < -tol)
        return Side::below;
    return Side::on;
}

ShiftedContour::ShiftedContour(const ContourSpec& b, double off) : base(b), offset(off)
{
    if (!(off != 0.0) || !std::isfinite(off))
        throw DomainError("ShiftedContour: offset must be nonzero and finite");
}

SignScanReport sign_compatibility_scan(const ContourSpec& spec1, const ContourSpec& spec2,
                                       double k, int n, double range)
{
    if (n < 2)
        throw DomainError("sign_compatibility_scan: n must be at least 2");
    std::vector<cplx> p1(n), p2(n);
    std::vector<double> s(n);
    for (int i = 0; i < n; ++i) {
        s[i] = -range + 2.0 * range * i / (n - 1);
        p1[i] = contour_point(spec1, s[i]);
        p2[i] = contour_point(spec2, s[i]);
    }
    SignScanReport r{std::numeric_limits<double>::infinity(), 0.0, 0.0, n, range, 0};
    // raw composition, so that contours violating the quadrant condition still get a number
    for (int j = 0; j < n; ++j) {
        cplx inner = sqrt_down(k - p2[j]) * sqrt_down(k + p2[j]);
        bool admissible = admissible_kappa_param(inner);
        for (int i = 0; i < n; ++i) {
            double v = (sqrt_down(inner - p1[i]) * sqrt_down(inner + p1[i])).imag();
            if (!admissible)
                ++r.inadmissible;
            if (v < r.min_value) {
                r.min_value = v;
                r.s1_at_min = s[i];
                r.s2_at_min = s[j];
            }
        }
    }
    return r;
}

std::vector<cplx> branch_loci(const ContourSpec& spec, double k, int n, double range)
{
    if (n < 1)
        throw DomainError("branch_loci: n must be positive");
    std::vector<cplx> out(2 * static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double s = n == 1 ? 0.0 : -range + 2.0 * range * i / (n - 1);
        cplx v = kappa(k, contour_point(spec, s));
        out[i] = v;
        out[i + n] = -v;
    }
    return out;
}

namespace {

double sampled_distance(const ContourSpec& curve, const std::vector<cplx>& pts, int n, double range)
{
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        double s = -range + 2.0 * range * i / (n - 1);
        cplx z = contour_point(curve, s);
        for (const cplx& q : pts)
            best = std::min(best, std::abs(z - q));
    }
    return best;
}

} // namespace

LociMargin loci_margin(const ContourSpec& spec1, const ContourSpec& spec2, double k, int n, double range)
{
    if (n < 2)
        throw DomainError("loci_margin: n must be at least 2");
    auto l2 = branch_loci(spec2, k, n, range);
    auto l1 = branch_loci(spec1, k, n, range);
    return {sampled_distance(spec1, l2, n, range), sampled_distance(spec2, l1, n, range)};
}

} // namespace qpwh
