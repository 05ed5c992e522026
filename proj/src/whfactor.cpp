#include "qpwh/whfactor.hpp"

#include "qpwh/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace qpwh {

double default_epsilon(double k)
{
    return std::max(1e-3, 0.05 * k);
}

namespace {

const cplx two_pi_i(0.0, 2.0 * pi);

void require_side(const ShiftedContour& contour, cplx target, SplitSide side)
{
    if (side == SplitSide::plus && !(contour.offset < 0.0))
        throw DomainError("plus split needs a contour shifted below (negative offset)");
    if (side == SplitSide::minus && !(contour.offset > 0.0))
        throw DomainError("minus split needs a contour shifted above (positive offset)");
    double g = vertical_gap(contour.base, target) - contour.offset;
    double guard = 0.1 * std::abs(contour.offset);
    bool ok = side == SplitSide::plus ? g >= guard : g <= -guard;
    if (!ok) {
        std::ostringstream os;
        os << "target " << target << " has vertical gap " << g
           << " to the shifted contour; needs at least " << guard << " on the "
           << (side == SplitSide::plus ? "upper" : "lower") << " side";
        throw GuardError(os.str());
    }
}

std::vector<double> structure_hints(const ContourSpec& base, cplx target)
{
    std::vector<double> h;
    h.push_back(parameter_at(base, target.real()));
    double r = std::pow(std::abs(base.c), 0.25);
    h.push_back(r);
    h.push_back(-r);
    return h;
}

cplx split_integral(const ComplexFunction& f, cplx target, SplitSide side,
                    const ShiftedContour& contour, const QuadratureConfig& cfg)
{
    auto integrand = [&](double s) {
        cplx z = contour.point(s);
        return f(z) / (z - target) * contour.derivative(s);
    };
    auto hints = structure_hints(contour.base, target);
    cplx v = integrate_line(integrand, cfg, hints).value;
    return side == SplitSide::plus ? v / two_pi_i : -v / two_pi_i;
}

} // namespace

cplx cauchy_split(const ComplexFunction& f, cplx target, SplitSide side,
                  const ShiftedContour& contour, const QuadratureConfig& cfg)
{
    require_finite(target, "cauchy_split");
    require_side(contour, target, side);
    return split_integral(f, target, side, contour, cfg);
}

cplx cauchy_factorize(const ComplexFunction& g, cplx target, SplitSide side,
                      const ShiftedContour& contour, const QuadratureConfig& cfg)
{
    require_finite(target, "cauchy_factorize");
    require_side(contour, target, side);

    const int n = 4001;
    const double umax = std::asinh(cfg.s_max) + 4.0;
    double prev = 0.0;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        double s = std::sinh(-umax + 2.0 * umax * i / (n - 1));
        cplx v = g(contour.point(s));
        require_finite(v, "cauchy_factorize");
        if (v == cplx(0.0, 0.0))
            throw WindingError("cauchy_factorize: g vanishes on the contour");
        double a = std::arg(v);
        if (i > 0) {
            double d = a - prev;
            if (std::abs(d) > 0.9 * pi)
                throw WindingError("cauchy_factorize: log g crosses its branch cut along the contour");
            total += d;
        }
        prev = a;
    }
    if (std::abs(total) > pi)
        throw WindingError("cauchy_factorize: nonzero winding of g along the contour");

    auto logg = [&](cplx z) { return std::log(g(z)); };
    cplx r = std::exp(split_integral(logg, target, side, contour, cfg));
    require_finite(r, "cauchy_factorize");
    return r;
}

const char* to_string(FactorLabel l)
{
    switch (l) {
    case FactorLabel::MM: return "mm";
    case FactorLabel::MP: return "mp";
    case FactorLabel::PM: return "pm";
    case FactorLabel::PP: return "pp";
    }
    return "?";
}

FactorLabel factor_label_from_string(const std::string& s)
{
    std::string t;
    for (char ch : s)
        t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    if (t == "mm" || t == "--")
        return FactorLabel::MM;
    if (t == "mp" || t == "-+")
        return FactorLabel::MP;
    if (t == "pm" || t == "+-")
        return FactorLabel::PM;
    if (t == "pp" || t == "++")
        return FactorLabel::PP;
    throw DomainError("unknown factor label: " + s);
}

int sign1(FactorLabel l)
{
    return (l == FactorLabel::PM || l == FactorLabel::PP) ? 1 : -1;
}

int sign2(FactorLabel l)
{
    return (l == FactorLabel::MP || l == FactorLabel::PP) ? 1 : -1;
}

FactorLabel make_label(int s1, int s2)
{
    if (s1 > 0)
        return s2 > 0 ? FactorLabel::PP : FactorLabel::PM;
    return s2 > 0 ? FactorLabel::MP : FactorLabel::MM;
}

const char* to_string(Route r)
{
    switch (r) {
    case Route::direct: return "direct";
    case Route::alpha2: return "continued-alpha2";
    case Route::alpha1: return "continued-alpha1";
    case Route::both: return "continued-both";
    }
    return "?";
}

FactorEngine::FactorEngine(double k, const ContourSpec& c1, const ContourSpec& c2,
                           const QuadratureConfig& cfg, double eps)
    : k_(k), c1_(c1), c2_(c2), cfg_(cfg), eps_(eps > 0.0 ? eps : default_epsilon(k))
{
    if (!(k > 0.0) || !std::isfinite(k))
        throw DomainError("wavenumber must be positive and finite");
    cfg_.validate();
    validate_contour(c1_);
    validate_contour(c2_);
}

namespace {

bool natural(Side s, int sign)
{
    return s == Side::on || (sign > 0 ? s == Side::above : s == Side::below);
}

HalfLabel alpha1_half(int s1)
{
    return s1 > 0 ? HalfLabel::plus_circ : HalfLabel::minus_circ;
}

HalfLabel alpha2_half(int s2)
{
    return s2 > 0 ? HalfLabel::circ_plus : HalfLabel::circ_minus;
}

cplx checked_fourth_root(cplx w, const char* what)
{
    cplx inner = sqrt_down(w);
    if (w.real() == 0.0 && w.imag() < 0.0)
        throw BranchCutError(std::string(what) + ": prefactor argument on the branch cut");
    if (inner.real() == 0.0 && inner.imag() < 0.0)
        throw BranchCutError(std::string(what) + ": prefactor argument on the branch cut");
    cplx r = sqrt_down(inner);
    if (r == cplx(0.0, 0.0))
        throw NonFiniteError(std::string(what) + ": prefactor vanishes at a branch point");
    return r;
}

} // namespace

bool FactorEngine::in_domain(FactorLabel l, const SpectralPoint& p) const
{
    return natural(side1(p.a1), sign1(l)) && natural(side2(p.a2), sign2(l));
}

cplx FactorEngine::quarter_factor(FactorLabel l, const SpectralPoint& p) const
{
    require_finite(p.a1, "quarter_factor");
    require_finite(p.a2, "quarter_factor");
    if (!in_domain(l, p)) {
        std::ostringstream os;
        os << "quarter_factor " << to_string(l) << ": point (" << p.a1 << ", " << p.a2
           << ") outside the natural domain; use continue_factor";
        throw DomainError(os.str());
    }
    return quarter_unchecked(l, p);
}

cplx FactorEngine::quarter_unchecked(FactorLabel l, const SpectralPoint& p) const
{
    const int s1 = sign1(l);
    const int s2 = sign2(l);
    const ShiftedContour contour(c2_, s2 > 0 ? -eps_ : eps_);
    const cplx a1 = p.a1;
    const cplx a2 = p.a2;
    const double k = k_;
    const cplx rot = std::polar(1.0, -pi / 4.0);

    auto integrand = [&](double s) {
        cplx z = contour.point(s);
        cplx w = 1.0 + static_cast<double>(s1) * a1 / kappa(k, z);
        cplx u = w * rot;
        if (u.real() < 0.0 && std::abs(u.imag()) <= 1e-6 * std::abs(u)) {
            std::ostringstream os;
            os << "quarter factor " << to_string(l) << ": log argument " << w
               << " on the diagonal cut at s = " << s;
            throw LogCutError(os.str());
        }
        return diag_log(w) / (z - a2) * contour.derivative(s);
    };

    std::vector<double> hints = structure_hints(c2_, a2);
    hints.push_back(k);
    hints.push_back(-k);
    cplx disc = sqrt_down(cplx(k * k) - a1 * a1);
    for (cplx r : {disc, -disc})
        if (std::isfinite(r.real()))
            hints.push_back(parameter_at(c2_, r.real()));

    QuadResult q = integrate_line(integrand, cfg_, hints);
    const cplx coef = (s2 > 0 ? -1.0 : 1.0) / (2.0 * two_pi_i);
    cplx pref = checked_fourth_root(s2 > 0 ? k + a2 : k - a2, to_string(l));
    cplx r = std::exp(coef * q.value) / pref;
    require_finite(r, "quarter_factor");
    return r;
}

const BranchCheck& FactorEngine::branch_check() const
{
    std::call_once(check_once_, [this] {
        const double s1v[] = {-6.0, -1.5, 0.7, 2.5, 9.0};
        const double s2v[] = {4.0, -2.0, 0.3, -7.0, 1.2};
        BranchCheck bc;
        for (int s2 : {1, -1}) {
            std::vector<cplx> ratios;
            for (int i = 0; i < 5; ++i) {
                SpectralPoint p{contour_point(c1_, s1v[i]),
                                contour_point(c2_, s2v[i]) + cplx(0.0, 0.5 * s2)};
                cplx num = quarter_unchecked(make_label(1, s2), p) * quarter_unchecked(make_label(-1, s2), p);
                ratios.push_back(num / half_factor(p, k_, alpha2_half(s2)));
            }
            cplx r0 = ratios.front();
            double dev = 0.0;
            for (cplx r : ratios)
                dev = std::max(dev, std::abs(r - r0));
            bc.max_deviation = std::max({bc.max_deviation, dev, std::abs(std::abs(r0) - 1.0)});
            if (dev > 1e-6 || std::abs(std::abs(r0) - 1.0) > 1e-6) {
                std::ostringstream os;
                os << "branch consistency check failed for Ko" << (s2 > 0 ? '+' : '-')
                   << ": ratios not a constant unimodular factor (spread " << dev << ", first " << r0 << ")";
                throw ConsistencyError(os.str());
            }
            cplx c = std::abs(r0 - 1.0) <= 1e-6 ? cplx(1.0) : r0;
            (s2 > 0 ? bc.circ_plus : bc.circ_minus) = c;
        }
        check_ = bc;
    });
    return check_;
}

cplx FactorEngine::circ_constant(int s2) const
{
    const BranchCheck& bc = branch_check();
    return s2 > 0 ? bc.circ_plus : bc.circ_minus;
}

FactorValue FactorEngine::continue_factor(FactorLabel l, const SpectralPoint& p) const
{
    require_finite(p.a1, "continue_factor");
    require_finite(p.a2, "continue_factor");
    const int s1 = sign1(l);
    const int s2 = sign2(l);
    const bool ok1 = natural(side1(p.a1), s1);
    const bool ok2 = natural(side2(p.a2), s2);

    if (ok1 && ok2)
        return {quarter_unchecked(l, p), Route::direct};
    if (ok1) {
        cplx v = half_factor(p, k_, alpha1_half(s1)) / quarter_unchecked(make_label(s1, -s2), p);
        return {v, Route::alpha2};
    }
    if (ok2) {
        cplx v = circ_constant(s2) * half_factor(p, k_, alpha2_half(s2)) /
                 quarter_unchecked(make_label(-s1, s2), p);
        return {v, Route::alpha1};
    }
    cplx v = circ_constant(s2) * half_factor(p, k_, alpha2_half(s2)) *
             quarter_unchecked(make_label(-s1, -s2), p) / half_factor(p, k_, alpha1_half(-s1));
    require_finite(v, "continue_factor");
    return {v, Route::both};
}

} // namespace qpwh
