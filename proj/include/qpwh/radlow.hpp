#pragma once

#include "qpwh/whfactor.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace qpwh {

// 1e-10 k
double default_eps_shift(double k);

struct Incidence {
    double theta0 = 0.0;
    double phi0 = 0.0;
    double k = 1.0;
    double eps_shift = 0.0;
    // k sin(theta0) cos(phi0) and k sin(theta0) sin(phi0) before the shift
    double a1_real = 0.0;
    double a2_real = 0.0;
    double a3 = 0.0;
    // shifted by -i eps_shift when positive
    cplx a1;
    cplx a2;
    // theta0 = 0: both poles sit at the origin
    bool degenerate = false;

    double xi0() const { return a1_real / k; }
    double eta0() const { return a2_real / k; }
};

// theta0 in [0, pi/2], phi0 in [-3pi/4, pi/4], k > 0, eps_shift >= 0 (negative selects the default).
Incidence make_incidence(double theta0, double phi0, double k, double eps_shift = -1.0);

struct Observation {
    double theta = 0.0;
    double phi = 0.0;
    double xi = 0.0;
    double eta = 0.0;
};

// theta in [0, pi/2], phi in [0, 2pi).
Observation make_observation(double theta, double phi);

// 1 / ((a1 - a1_inc)(a2 - a2_inc)); PoleError on a pole.
cplx g_pp(const SpectralPoint& p, const Incidence& inc);

enum class RowFlag { ok, near_pole, continued, real_branch, failed };

const char* to_string(RowFlag f);

struct DiffractionValue {
    cplx value;
    RowFlag flag = RowFlag::ok;
    bool near_pole = false;
    bool continued = false;
    bool real_branch = false;
    std::string error;
};

struct ArcRow {
    double theta;
    DiffractionValue fd;
};

struct ArcSweepResult {
    Incidence incidence;
    double phi = 0.0;
    double contour_eps = 0.0;
    QuadratureConfig quadrature;
    std::vector<ArcRow> rows;
};

void write_csv(const ArcSweepResult& r, std::ostream& os);

inline constexpr double near_pole_threshold = 1e-3;
inline constexpr double real_branch_ratio = 1e-3;

// Radlow's ansatz for one incidence. Holds the cached K--(a1, a2).
class RadlowModel {
public:
    RadlowModel(const FactorEngine& engine, const Incidence& inc);

    const Incidence& incidence() const { return inc_; }
    const FactorEngine& engine() const { return engine_; }
    cplx cached_kmm() const { return kmm_; }

    // G++ / [K++(a) K-+(a1_inc, a2) K--(a1_inc, a2_inc) K+-(a1, a2_inc)]
    cplx fpp(const SpectralPoint& p, bool* continued = nullptr) const;

    // G++ [1/(K--(a1_inc, a2) K+-(a)) - 1/(K--(a1_inc, a2_inc) K+-(a1, a2_inc))]
    cplx compatibility_residual(const SpectralPoint& p) const;

    // The residual divided by G++ (the bracket alone); finite at a2 = a2_inc.
    cplx relative_compatibility_residual(const SpectralPoint& p) const;

    // k F++(-k cos(phi) sin(theta), -k sin(phi) sin(theta)) / (4 pi^2 i), never throws.
    DiffractionValue diffraction_coefficient(const Observation& obs) const;

    // Uniform theta grid on [0, pi/2].
    ArcSweepResult arc_sweep(double phi, int n_theta, int workers = 1) const;

private:
    FactorValue factor(FactorLabel l, cplx a1, cplx a2) const;

    const FactorEngine& engine_;
    Incidence inc_;
    cplx kmm_;
    bool kmm_continued_;
};

} // namespace qpwh
