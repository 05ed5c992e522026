#pragma once

#include "qpwh/specfun.hpp"

#include <vector>

namespace qpwh {

enum class Plane { alpha1, alpha2 };

// A(s) = s + s / (a (s^4 + c)), the indented inversion contour of one spectral plane.
struct ContourSpec {
    cplx a{0.0012, 0.0006};
    cplx c{0.0, 1000.0};
    Plane plane = Plane::alpha1;

    static ContourSpec defaults(Plane p)
    {
        ContourSpec s;
        s.plane = p;
        return s;
    }
};

cplx contour_point(const ContourSpec& spec, double s);
cplx contour_derivative(const ContourSpec& spec, double s);

// Checks that a(s^4 + c) never vanishes for real s and that Re A is strictly
// increasing on 10^4 samples. Throws ContourError.
void validate_contour(const ContourSpec& spec);

enum class Side { above, on, below };

const char* to_string(Side s);

// Parameter s* with Re A(s*) = x, by bisection.
double parameter_at(const ContourSpec& spec, double x);

// Im z - Im A(s*), with Re A(s*) = Re z.
double vertical_gap(const ContourSpec& spec, cplx z);

Side classify_side(const ContourSpec& spec, cplx z, double tol = 1e-12);

// A(s) + i*offset; offset > 0 is above the base contour.
struct ShiftedContour {
    ContourSpec base;
    double offset;

    ShiftedContour(const ContourSpec& b, double off);

    cplx point(double s) const { return contour_point(base, s) + cplx(0.0, offset); }
    cplx derivative(double s) const { return contour_derivative(base, s); }
};

struct SignScanReport {
    double min_value;
    double s1_at_min;
    double s2_at_min;
    int n;
    double range;
    // grid points where kappa(k, A2(s2)) leaves the quadrant Re >= 0, Im >= 0
    int inadmissible;
};

// Min of Im(1/K(A1(s1), A2(s2))) on an n x n grid of [-range, range]^2, with
// 1/K = kappa(kappa(k, A2), A1) evaluated as the plain composition.
SignScanReport sign_compatibility_scan(const ContourSpec& spec1, const ContourSpec& spec2,
                                       double k, int n, double range = 10.0);

// The 2n points +kappa(k, A(s_i)) followed by -kappa(k, A(s_i)), s_i uniform on [-range, range].
std::vector<cplx> branch_loci(const ContourSpec& spec, double k, int n, double range = 50.0);

struct LociMargin {
    double contour1_to_loci2;
    double contour2_to_loci1;

    double min() const { return contour1_to_loci2 < contour2_to_loci1 ? contour1_to_loci2 : contour2_to_loci1; }
};

// Sampled distance from each contour to the loci generated by the other one.
LociMargin loci_margin(const ContourSpec& spec1, const ContourSpec& spec2, double k,
                       int n = 2001, double range = 50.0);

} // namespace qpwh
