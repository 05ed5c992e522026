#include "qpwh/radlow.hpp"

#include "qpwh/errors.hpp"
#include "qpwh/parallel.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

namespace qpwh {

double default_eps_shift(double k)
{
    return 1e-10 * k;
}

namespace {

constexpr double angle_slack = 1e-12;

void require_range(double v, double lo, double hi, const char* what)
{
    if (!std::isfinite(v) || v < lo - angle_slack || v > hi + angle_slack) {
        std::ostringstream os;
        os << what << " = " << v << " outside [" << lo << ", " << hi << "]";
        throw DomainError(os.str());
    }
}

} // namespace

Incidence make_incidence(double theta0, double phi0, double k, double eps_shift)
{
    require_range(theta0, 0.0, pi / 2.0, "theta0");
    require_range(phi0, -3.0 * pi / 4.0, pi / 4.0, "phi0");
    if (!(k > 0.0) || !std::isfinite(k))
        throw DomainError("k must be positive and finite");
    if (eps_shift < 0.0)
        eps_shift = default_eps_shift(k);
    if (!std::isfinite(eps_shift))
        throw DomainError("eps_shift must be finite");

    Incidence inc;
    inc.theta0 = theta0;
    inc.phi0 = phi0;
    inc.k = k;
    inc.eps_shift = eps_shift;
    inc.a1_real = k * std::sin(theta0) * std::cos(phi0);
    inc.a2_real = k * std::sin(theta0) * std::sin(phi0);
    inc.a3 = k * std::cos(theta0);
    inc.a1 = inc.a1_real > 0.0 ? cplx(inc.a1_real, -eps_shift) : cplx(inc.a1_real, 0.0);
    inc.a2 = inc.a2_real > 0.0 ? cplx(inc.a2_real, -eps_shift) : cplx(inc.a2_real, 0.0);
    inc.degenerate = std::sin(theta0) < 1e-14;
    return inc;
}

Observation make_observation(double theta, double phi)
{
    require_range(theta, 0.0, pi / 2.0, "theta");
    if (!std::isfinite(phi) || phi < -angle_slack || phi >= 2.0 * pi) {
        std::ostringstream os;
        os << "phi = " << phi << " outside [0, 2pi)";
        throw DomainError(os.str());
    }
    Observation o;
    o.theta = theta;
    o.phi = phi;
    o.xi = std::cos(phi) * std::sin(theta);
    o.eta = std::sin(phi) * std::sin(theta);
    return o;
}

cplx g_pp(const SpectralPoint& p, const Incidence& inc)
{
    cplx d1 = p.a1 - inc.a1;
    cplx d2 = p.a2 - inc.a2;
    if (d1 == cplx(0.0, 0.0) || d2 == cplx(0.0, 0.0))
        throw PoleError("g_pp: evaluation at a pole");
    cplx r = 1.0 / (d1 * d2);
    require_finite(r, "g_pp");
    return r;
}

const char* to_string(RowFlag f)
{
    switch (f) {
    case RowFlag::ok: return "ok";
    case RowFlag::near_pole: return "near_pole";
    case RowFlag::continued: return "continued";
    case RowFlag::real_branch: return "real_branch";
    case RowFlag::failed: return "failed";
    }
    return "?";
}

RadlowModel::RadlowModel(const FactorEngine& engine, const Incidence& inc) : engine_(engine), inc_(inc)
{
    if (std::abs(engine.k() - inc.k) > 1e-12 * inc.k)
        throw DomainError("RadlowModel: engine and incidence use different wavenumbers");
    FactorValue v = engine_.continue_factor(FactorLabel::MM, {inc_.a1, inc_.a2});
    kmm_ = v.value;
    kmm_continued_ = v.route != Route::direct;
}

FactorValue RadlowModel::factor(FactorLabel l, cplx a1, cplx a2) const
{
    return engine_.continue_factor(l, {a1, a2});
}

cplx RadlowModel::fpp(const SpectralPoint& p, bool* continued) const
{
    cplx g = g_pp(p, inc_);
    FactorValue kpp = factor(FactorLabel::PP, p.a1, p.a2);
    FactorValue kmp = factor(FactorLabel::MP, inc_.a1, p.a2);
    FactorValue kpm = factor(FactorLabel::PM, p.a1, inc_.a2);
    if (continued)
        *continued = kmm_continued_ || kpp.route != Route::direct || kmp.route != Route::direct ||
                     kpm.route != Route::direct;
    cplx r = g / (kpp.value * kmp.value * kmm_ * kpm.value);
    require_finite(r, "radlow_fpp");
    return r;
}

cplx RadlowModel::relative_compatibility_residual(const SpectralPoint& p) const
{
    cplx kmm_a2 = factor(FactorLabel::MM, inc_.a1, p.a2).value;
    cplx kpm_p = factor(FactorLabel::PM, p.a1, p.a2).value;
    cplx kpm_a = factor(FactorLabel::PM, p.a1, inc_.a2).value;
    cplx r = 1.0 / (kmm_a2 * kpm_p) - 1.0 / (kmm_ * kpm_a);
    require_finite(r, "compatibility_residual");
    return r;
}

cplx RadlowModel::compatibility_residual(const SpectralPoint& p) const
{
    cplx g = g_pp(p, inc_);
    cplx r = g * relative_compatibility_residual(p);
    require_finite(r, "compatibility_residual");
    return r;
}

DiffractionValue RadlowModel::diffraction_coefficient(const Observation& obs) const
{
    DiffractionValue out;
    const double k = inc_.k;
    out.near_pole = std::abs(obs.xi + inc_.xi0()) < near_pole_threshold ||
                    std::abs(obs.eta + inc_.eta0()) < near_pole_threshold;
    try {
        SpectralPoint p{cplx(-k * obs.xi, 0.0), cplx(-k * obs.eta, 0.0)};
        bool cont = false;
        cplx f = fpp(p, &cont);
        out.value = k * f / cplx(0.0, 4.0 * pi * pi);
        require_finite(out.value, "diffraction_coefficient");
        out.continued = cont;
        out.real_branch = std::abs(out.value.imag()) < real_branch_ratio * std::abs(out.value.real());
    } catch (const Error& e) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        out.value = cplx(nan, nan);
        out.error = e.what();
        out.flag = RowFlag::failed;
        return out;
    }
    if (out.near_pole)
        out.flag = RowFlag::near_pole;
    else if (out.real_branch)
        out.flag = RowFlag::real_branch;
    else if (out.continued)
        out.flag = RowFlag::continued;
    else
        out.flag = RowFlag::ok;
    return out;
}

ArcSweepResult RadlowModel::arc_sweep(double phi, int n_theta, int workers) const
{
    if (n_theta < 2)
        throw DomainError("arc_sweep: n_theta must be at least 2");
    make_observation(0.0, phi);
    ArcSweepResult r;
    r.incidence = inc_;
    r.phi = phi;
    r.contour_eps = engine_.eps();
    r.quadrature = engine_.config();
    r.rows.resize(n_theta);
    // the branch check is lazily initialized; do it before fan-out
    engine_.branch_check();
    parallel_for(static_cast<std::size_t>(n_theta), workers, [&](std::size_t i) {
        double theta = (i + 1 == static_cast<std::size_t>(n_theta)) ? pi / 2.0 : (pi / 2.0) * i / (n_theta - 1);
        r.rows[i].theta = theta;
        r.rows[i].fd = diffraction_coefficient(make_observation(theta, phi));
    });
    return r;
}

void write_csv(const ArcSweepResult& r, std::ostream& os)
{
    os << "theta,phi,theta0,phi0,k,re_fd,im_fd,flag\n";
    char buf[512];
    for (const ArcRow& row : r.rows) {
        std::snprintf(buf, sizeof buf, "%.17e,%.17e,%.17e,%.17e,%.17e,%.17e,%.17e,%s\n", row.theta, r.phi,
                      r.incidence.theta0, r.incidence.phi0, r.incidence.k, row.fd.value.real(),
                      row.fd.value.imag(), to_string(row.fd.flag));
        os << buf;
    }
}

} // namespace qpwh
