#include "qpwh/verify.hpp"

#include "qpwh/errors.hpp"
#include "qpwh/portrait.hpp"
#include "qpwh/radlow.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

namespace qpwh {

Suite suite_from_string(const std::string& s)
{
    if (s == "specfun")
        return Suite::specfun;
    if (s == "contour")
        return Suite::contour;
    if (s == "factor")
        return Suite::factor;
    if (s == "radlow")
        return Suite::radlow;
    if (s == "performance")
        return Suite::performance;
    if (s == "all")
        return Suite::all;
    throw DomainError("unknown suite: " + s);
}

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a)
{
    char b[64];
    std::snprintf(b, sizeof b, f, a);
    return b;
}

ContourSpec c1d()
{
    return ContourSpec::defaults(Plane::alpha1);
}

ContourSpec c2d()
{
    return ContourSpec::defaults(Plane::alpha2);
}

double rel(cplx a, cplx b)
{
    return std::abs(a - b) / std::abs(b);
}

double loglog_slope(const std::vector<double>& r, const std::vector<double>& v)
{
    const double n = static_cast<double>(r.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < r.size(); ++i) {
        double x = std::log(r[i]), y = std::log(v[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> decay_radii()
{
    std::vector<double> r;
    for (int i = 0; i <= 8; ++i)
        r.push_back(std::pow(10.0, 2.0 + 0.25 * i));
    return r;
}

// --- 1: branch-function identities --------------------------------------

Outcome c1_branch_identities()
{
    std::mt19937_64 rng(20240101);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> lmag(-3.0, 3.0);
    std::uniform_real_distribution<double> ang(0.0, pi / 2.0);
    double worst_sqrt = 0, worst_log = 0, worst_kappa = 0;
    for (int i = 0; i < 10000; ++i) {
        cplx z = std::polar(std::pow(10.0, lmag(rng)), pi * u(rng));
        cplx s = sqrt_down(z);
        worst_sqrt = std::max(worst_sqrt, std::abs(s * s - z) / std::abs(z));
        worst_log = std::max(worst_log, std::abs(std::exp(diag_log(z)) - z) / std::abs(z));
        cplx K = std::polar(std::pow(10.0, lmag(rng) / 3.0), ang(rng));
        cplx w = std::polar(std::pow(10.0, lmag(rng) / 3.0), pi * u(rng));
        cplx kv = kappa(K, w);
        double scale = std::norm(K) + std::norm(w);
        worst_kappa = std::max(worst_kappa, std::abs(kv * kv - (K * K - w * w)) / scale);
    }

    // 16 rays; a jump across the ray is expected only on the cut
    const double delta = 1e-8;
    int bad_probes = 0;
    for (int j = 0; j < 16; ++j) {
        double th = 2.0 * pi * j / 16.0;
        for (double r : {0.5, 2.0}) {
            cplx z = std::polar(r, th);
            cplx n = std::polar(delta, th + pi / 2.0);
            double js = std::abs(sqrt_down(z + n) - sqrt_down(z - n));
            double jl = std::abs(diag_log(z + n) - diag_log(z - n));
            bool sqrt_cut = (j == 12);
            bool log_cut = (j == 10);
            if (sqrt_cut != (js > 1e-3))
                ++bad_probes;
            if (log_cut != (jl > 1e-3))
                ++bad_probes;
        }
    }
    bool pass = worst_sqrt < 1e-13 && worst_log < 1e-13 && worst_kappa < 1e-13 && bad_probes == 0;
    std::ostringstream os;
    os << "max rel err sqrt " << fmt("%.2e", worst_sqrt) << ", log " << fmt("%.2e", worst_log)
       << ", kappa " << fmt("%.2e", worst_kappa) << "; continuity probe mismatches " << bad_probes;
    return {pass, os.str()};
}

// --- 2: sign compatibility --------------------------------------------------

Outcome c2_sign_compatibility()
{
    SignScanReport r = sign_compatibility_scan(c1d(), c2d(), 3.0, 200);
    double dist = std::hypot(r.s1_at_min, r.s2_at_min);
    bool pass = r.min_value >= -1e-10 && dist <= 0.1;
    std::ostringstream os;
    os << "min Im(1/K) = " << fmt("%.3e", r.min_value) << " at (" << fmt("%.4f", r.s1_at_min) << ", "
       << fmt("%.4f", r.s2_at_min) << "), distance " << fmt("%.4f", dist) << " from origin";
    return {pass, os.str()};
}

// --- 3: four-factor reconstruction -------------------------------------------

cplx four_product(const FactorEngine& e, const SpectralPoint& p, bool direct)
{
    cplx prod = 1.0;
    for (FactorLabel l : {FactorLabel::MM, FactorLabel::MP, FactorLabel::PM, FactorLabel::PP})
        prod *= direct ? e.quarter_factor(l, p) : e.continue_factor(l, p).value;
    return prod;
}

Outcome c3_reconstruction()
{
    FactorEngine e(3.0, c1d(), c2d());
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> s(-15.0, 15.0);
    double worst_on = 0.0;
    for (int i = 0; i < 100; ++i) {
        SpectralPoint p{contour_point(e.contour1(), s(rng)), contour_point(e.contour2(), s(rng))};
        worst_on = std::max(worst_on, rel(four_product(e, p, true), e.full(p)));
    }
    std::uniform_real_distribution<double> re(-3.0, 3.0);
    double worst_cont = 0.0;
    int n = 0;
    while (n < 20) {
        SpectralPoint p{re(rng), re(rng)};
        if (std::abs(p.a1) > 0.95 * 3.0 || std::hypot(p.a1.real(), p.a2.real()) > 0.95 * 3.0)
            continue;
        worst_cont = std::max(worst_cont, rel(four_product(e, p, false), e.full(p)));
        ++n;
    }
    bool pass = worst_on < 1e-6 && worst_cont < 1e-6;
    std::ostringstream os;
    os << "max rel err on A1xA2 " << fmt("%.2e", worst_on) << " (100 pts), continued real points "
       << fmt("%.2e", worst_cont) << " (20 pts)";
    return {pass, os.str()};
}

// --- 4: decay exponents ---------------------------------------------------------

Outcome c4_decay()
{
    const double k = 3.0;
    FactorEngine e(k, c1d(), c2d());
    Incidence inc = make_incidence(pi / 4.0, -3.0 * pi / 4.0, k);
    RadlowModel m(e, inc);
    const auto radii = decay_radii();
    const cplx up = std::polar(1.0, pi / 4.0);
    const cplx dn = std::polar(1.0, -pi / 4.0);
    const cplx fix2 = contour_point(e.contour2(), 1.5);
    const cplx fix1 = contour_point(e.contour1(), -2.0);

    std::ostringstream os;
    bool pass = true;
    auto check = [&](const std::string& name, double slope, double target, double tol) {
        bool ok = std::abs(slope - target) <= tol;
        pass = pass && ok;
        os << name << " " << fmt("%.4f", slope) << (ok ? "" : " (out of range)") << "; ";
    };

    std::vector<double> vp, vm;
    for (double r : radii) {
        vp.push_back(std::abs(half_factor({r * up, fix2}, k, HalfLabel::plus_circ)));
        vm.push_back(std::abs(half_factor({r * dn, fix2}, k, HalfLabel::minus_circ)));
    }
    check("K+o", loglog_slope(radii, vp), -0.5, 0.03);
    check("K-o", loglog_slope(radii, vm), -0.5, 0.03);

    for (FactorLabel l : {FactorLabel::PP, FactorLabel::MP, FactorLabel::PM, FactorLabel::MM}) {
        std::vector<double> v;
        for (double r : radii)
            v.push_back(std::abs(e.quarter_factor(l, {fix1, r * (sign2(l) > 0 ? up : dn)})));
        check(std::string("K") + (sign1(l) > 0 ? "+" : "-") + (sign2(l) > 0 ? "+" : "-"),
              loglog_slope(radii, v), -0.25, 0.03);
    }

    std::vector<double> f1, f2;
    for (double r : radii)
        f1.push_back(std::abs(m.fpp({r * up, fix2})));
    check("F++ in a1", loglog_slope(radii, f1), -0.5, 0.05);
    const cplx a1f = contour_point(e.contour1(), 2.0);
    for (double r : radii) {
        SpectralPoint p{a1f, r * up};
        cplx v = m.fpp(p) * e.continue_factor(FactorLabel::PP, p).value *
                 e.continue_factor(FactorLabel::MP, {inc.a1, p.a2}).value;
        f2.push_back(std::abs(v));
    }
    check("F++ K++ K-+(a1,.) in a2", loglog_slope(radii, f2), -1.0, 0.05);
    return {pass, os.str()};
}

// --- 5: Cauchy engine oracles ------------------------------------------------------

Outcome c5_cauchy()
{
    const double k = 3.0;
    const double eps = default_epsilon(k);
    const ContourSpec base = c1d();
    const ShiftedContour below(base, -eps), above(base, eps);
    QuadratureConfig cfg;
    const cplx i3(0.0, 3.0), i2(0.0, 2.0);

    auto f = [&](cplx z) { return 1.0 / ((z - i3) * (z + i3)); };
    auto plus_exact = [&](cplx z) { return -1.0 / (cplx(0.0, 6.0) * (z + i3)); };
    auto minus_exact = [&](cplx z) { return 1.0 / (cplx(0.0, 6.0) * (z - i3)); };
    auto g = [&](cplx z) { return (z * z + 4.0) / (z * z + 9.0); };
    auto gp = [&](cplx z) { return (z + i2) / (z + i3); };
    auto gm = [&](cplx z) { return (z - i2) / (z - i3); };

    double ws = 0.0, wf = 0.0;
    for (int i = 0; i < 10; ++i) {
        cplx t = contour_point(base, -8.0 + 16.0 * i / 9.0);
        cplx p = cauchy_split(f, t, SplitSide::plus, below, cfg);
        cplx m = cauchy_split(f, t, SplitSide::minus, above, cfg);
        ws = std::max({ws, std::abs(p - plus_exact(t)), std::abs(m - minus_exact(t))});
        cplx P = cauchy_factorize(g, t, SplitSide::plus, below, cfg);
        cplx M = cauchy_factorize(g, t, SplitSide::minus, above, cfg);
        wf = std::max({wf, std::abs(P - gp(t)), std::abs(M - gm(t))});
    }
    bool pass = ws < 1e-8 && wf < 1e-8;
    std::ostringstream os;
    os << "max abs err sum-split " << fmt("%.2e", ws) << ", factorization " << fmt("%.2e", wf)
       << " (10 targets each)";
    return {pass, os.str()};
}

// --- 6: compatibility residual ------------------------------------------------------

Outcome c6_residual()
{
    const double k = 3.0;
    FactorEngine e(k, c1d(), c2d());
    Incidence inc = make_incidence(pi / 4.0, -3.0 * pi / 4.0, k);
    RadlowModel m(e, inc);
    const double tol = std::max(e.config().abs_tol, e.config().rel_tol);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> s(-8.0, 8.0), t(0.0, 2.0);
    double worst_zero = 0.0;
    for (int i = 0; i < 10; ++i) {
        SpectralPoint p{contour_point(e.contour1(), s(rng)) + cplx(0.0, t(rng)), inc.a2};
        worst_zero = std::max(worst_zero, std::abs(m.relative_compatibility_residual(p)));
    }
    double smallest_generic = 1e300;
    const double s1v[] = {-4.0, -1.0, 0.5, 2.0, 6.0};
    const double s2v[] = {3.0, 5.0, -6.0, 8.0, 1.5};
    for (int i = 0; i < 5; ++i) {
        SpectralPoint p{contour_point(e.contour1(), s1v[i]), contour_point(e.contour2(), s2v[i])};
        double ratio = std::abs(m.compatibility_residual(p)) / std::abs(g_pp(p, inc));
        smallest_generic = std::min(smallest_generic, ratio);
    }
    bool pass = worst_zero < 10.0 * tol && smallest_generic > 1e-3;
    std::ostringstream os;
    os << "max |residual|/|G++| at a2 = a2_inc: " << fmt("%.2e", worst_zero) << " (limit "
       << fmt("%.0e", 10.0 * tol) << "); min |residual|/|G++| at 5 generic points: "
       << fmt("%.3e", smallest_generic);
    return {pass, os.str()};
}

// --- 7: diffraction coefficient properties -------------------------------------------

Outcome c7_diffraction(int workers)
{
    std::ostringstream os;
    bool pass = true;

    FactorEngine e3(3.0, c1d(), c2d());
    Incidence inc12 = make_incidence(pi / 4.0, -3.0 * pi / 4.0, 3.0);
    RadlowModel m3(e3, inc12);
    ArcSweepResult arc = m3.arc_sweep(pi, 101, workers);
    double mr = 0.0, mi = 0.0;
    int failed = 0;
    for (const ArcRow& r : arc.rows) {
        if (r.fd.flag == RowFlag::failed) {
            ++failed;
            continue;
        }
        mr = std::max(mr, std::abs(r.fd.value.real()));
        mi = std::max(mi, std::abs(r.fd.value.imag()));
    }
    double ratio = mr / mi;
    bool ok = failed == 0 && ratio < 1e-3;
    pass = pass && ok;
    os << "oasis max|Re|/max|Im| " << fmt("%.2e", ratio) << " (" << failed << " failed rows); ";

    FactorEngine e1(1.0, c1d(), c2d());
    RadlowModel m1(e1, make_incidence(pi / 4.0, -3.0 * pi / 4.0, 1.0));
    double worst_k = 0.0;
    for (int i = 0; i < 20; ++i) {
        Observation o = make_observation((pi / 2.0) * i / 19.0, pi);
        worst_k = std::max(worst_k, rel(m1.diffraction_coefficient(o).value, m3.diffraction_coefficient(o).value));
    }
    ok = worst_k < 1e-4;
    pass = pass && ok;
    os << "k=1 vs k=3 max rel diff " << fmt("%.2e", worst_k) << "; ";

    // xi -> -xi0 along phi = 0 (eta = 0), from both sides
    double worst_spread = 0.0;
    for (int side : {-1, 1}) {
        std::vector<double> prod;
        for (double d : {1e-1, 1e-2, 1e-3}) {
            double xi = -inc12.xi0() + side * d;
            Observation o = make_observation(std::asin(xi), 0.0);
            prod.push_back(std::abs(m3.diffraction_coefficient(o).value) * std::abs(o.xi + inc12.xi0()));
        }
        double spread = *std::max_element(prod.begin(), prod.end()) / *std::min_element(prod.begin(), prod.end()) - 1.0;
        worst_spread = std::max(worst_spread, spread);
    }
    ok = worst_spread < 0.1;
    pass = pass && ok;
    os << "pole |f||xi+xi0| spread " << fmt("%.3f", worst_spread) << "; ";

    Incidence inc15 = make_incidence(pi / 4.0, pi / 8.0, 3.0);
    Incidence inc15h = make_incidence(pi / 4.0, pi / 8.0, 3.0, inc15.eps_shift / 2.0);
    RadlowModel ma(e3, inc15), mb(e3, inc15h);
    const double ths[] = {0.2, 0.5, 0.8, 1.1, 1.4, 0.35, 0.65, 0.95, 1.25, 1.5};
    const double phs[] = {0.0, pi / 4, pi / 2, 3 * pi / 4, pi, 5 * pi / 4, 3 * pi / 2, 7 * pi / 4, 0.3, 2.0};
    double worst_eps = 0.0;
    const QuadratureConfig& q = e3.config();
    for (int i = 0; i < 10; ++i) {
        Observation o = make_observation(ths[i], phs[i]);
        cplx a = ma.diffraction_coefficient(o).value, b = mb.diffraction_coefficient(o).value;
        double allowed = 10.0 * std::max(q.abs_tol, q.rel_tol * std::abs(a));
        worst_eps = std::max(worst_eps, std::abs(a - b) / allowed);
    }
    ok = worst_eps < 1.0;
    pass = pass && ok;
    os << "eps_shift halving max |change| / (10 tol) " << fmt("%.2e", worst_eps);
    return {pass, os.str()};
}

// --- 8: performance -------------------------------------------------------------------

Outcome c8_performance(int workers)
{
    std::ostringstream os;
    FunctionParams fp;
    fp.alpha1 = contour_point(fp.contour1, 10.0);
    PixelFunction f = make_function("k_pp", fp);
    PortraitSpec spec;
    spec.window = {-6.0, 6.0, -6.0, 6.0};
    spec.width = spec.height = 400;
    auto t0 = std::chrono::steady_clock::now();
    Image img = render(spec, f, workers);
    double tp = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    int upper_black = 0;
    for (int row = 0; row < spec.height; ++row) {
        if (pixel_point(spec, 0, row).imag() <= 0.0)
            continue;
        for (int col = 0; col < spec.width; ++col) {
            auto px = img.pixel(col, row);
            if (px[0] == 0 && px[1] == 0 && px[2] == 0)
                ++upper_black;
        }
    }

    FactorEngine e(3.0, c1d(), c2d());
    RadlowModel m(e, make_incidence(pi / 4.0, -3.0 * pi / 4.0, 3.0));
    t0 = std::chrono::steady_clock::now();
    ArcSweepResult arc = m.arc_sweep(pi, 101, workers);
    double ta = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    bool pass = tp <= 60.0 && ta <= 30.0 && upper_black == 0;
    os << "400x400 K++ portrait " << fmt("%.2f", tp) << " s (" << img.failures << " failure pixels, "
       << upper_black << " in the upper half); 101-point arc " << fmt("%.3f", ta) << " s; workers " << workers;
    return {pass, os.str()};
}

// --- 9: real-branch detection ----------------------------------------------------------

Outcome c9_real_branch(int workers)
{
    FactorEngine e(3.0, c1d(), c2d());
    RadlowModel m(e, make_incidence(pi / 4.0, pi / 8.0, 3.0));
    int rows = 0, arcs = 0;
    double worst = 0.0;
    for (int j = 0; j < 8; ++j) {
        ArcSweepResult a = m.arc_sweep(j * pi / 4.0, 101, workers);
        int here = 0;
        for (const ArcRow& r : a.rows)
            if (r.fd.flag == RowFlag::real_branch) {
                ++here;
                worst = std::max(worst, std::abs(r.fd.value.imag()) / std::abs(r.fd.value.real()));
            }
        rows += here;
        arcs += here > 0;
    }
    bool pass = rows > 0 && worst < 1e-3;
    std::ostringstream os;
    os << rows << " real_branch rows on " << arcs << " of 8 arcs; max |Im|/|Re| in them " << fmt("%.2e", worst);
    return {pass, os.str()};
}

struct Entry {
    int id;
    const char* name;
    double limit;
    std::function<Outcome(int)> run;
    Suite suite;
};

const std::vector<Entry>& entries()
{
    static const std::vector<Entry> list = {
        {1, "branch-function identities", 5.0, [](int) { return c1_branch_identities(); }, Suite::specfun},
        {2, "sign compatibility", 30.0, [](int) { return c2_sign_compatibility(); }, Suite::contour},
        {3, "four-factor reconstruction", 120.0, [](int) { return c3_reconstruction(); }, Suite::factor},
        {4, "decay exponents", 120.0, [](int) { return c4_decay(); }, Suite::factor},
        {5, "Cauchy engine vs closed forms", 10.0, [](int) { return c5_cauchy(); }, Suite::factor},
        {6, "compatibility residual", 60.0, [](int) { return c6_residual(); }, Suite::radlow},
        {7, "diffraction-coefficient properties", 600.0, c7_diffraction, Suite::radlow},
        {8, "performance", 90.0, c8_performance, Suite::performance},
        {9, "real-branch regime detection", 600.0, c9_real_branch, Suite::radlow},
    };
    return list;
}

} // namespace

std::vector<CriterionResult> run_suite(Suite s, int workers)
{
    std::vector<CriterionResult> out;
    for (const Entry& e : entries()) {
        if (s != Suite::all && s != e.suite)
            continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = e.run(workers);
        } catch (const std::exception& ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = dt <= e.limit;
        if (!in_time)
            o.detail += "; exceeded the " + fmt("%.0f", e.limit) + " s limit";
        out.push_back({e.id, e.name, o.pass && in_time, dt, e.limit, o.detail});
    }
    return out;
}

std::string format_line(const CriterionResult& r)
{
    char head[160];
    std::snprintf(head, sizeof head, "[%s] criterion %d: %s (%.2f s)", r.pass ? "PASS" : "FAIL", r.id,
                  r.name.c_str(), r.seconds);
    return std::string(head) + " -- " + r.detail;
}

std::string format_json(const CriterionResult& r)
{
    nlohmann::json j = {{"criterion", r.id}, {"name", r.name},       {"pass", r.pass},
                        {"seconds", r.seconds}, {"time_limit", r.time_limit}, {"detail", r.detail}};
    return j.dump();
}

} // namespace qpwh
