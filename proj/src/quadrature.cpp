#include "qpwh/quadrature.hpp"

#include "qpwh/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

namespace qpwh {

const char* to_string(TailPolicy p)
{
    switch (p) {
    case TailPolicy::mapped: return "mapped";
    case TailPolicy::truncate: return "truncate";
    case TailPolicy::bound_check: return "bound_check";
    }
    return "?";
}

TailPolicy tail_policy_from_string(const std::string& s)
{
    if (s == "mapped")
        return TailPolicy::mapped;
    if (s == "truncate")
        return TailPolicy::truncate;
    if (s == "bound_check" || s == "bound-check")
        return TailPolicy::bound_check;
    throw DomainError("unknown tail policy: " + s);
}

void QuadratureConfig::validate() const
{
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw DomainError("quadrature: tolerances must be positive");
    if (max_subdivisions < 1)
        throw DomainError("quadrature: max_subdivisions must be positive");
    if (!(s_max > 1.0) || !std::isfinite(s_max))
        throw DomainError("quadrature: s_max must be finite and > 1");
}

namespace {

// 21-point Kronrod rule and its embedded 10-point Gauss rule
constexpr std::array<double, 11> xgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> wgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> wg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

enum class Map { core, tail_pos, tail_neg };

struct Panel {
    double a;
    double b;
    Map map;
    cplx value;
    double error;
};

struct ByError {
    bool operator()(const Panel& x, const Panel& y) const { return x.error < y.error; }
};

class Evaluator {
public:
    Evaluator(const LineIntegrand& f, double s_max) : f_(f), s_max_(s_max) {}

    cplx mapped(Map m, double x)
    {
        ++count;
        cplx v;
        switch (m) {
        case Map::core:
            v = f_(std::sinh(x)) * std::cosh(x);
            break;
        case Map::tail_pos:
            v = f_(s_max_ / x) * (s_max_ / (x * x));
            break;
        case Map::tail_neg:
            v = f_(-s_max_ / x) * (s_max_ / (x * x));
            break;
        }
        require_finite(v, "integrand");
        return v;
    }

    void rule(Panel& p)
    {
        const double centr = 0.5 * (p.a + p.b);
        const double hlgth = 0.5 * (p.b - p.a);
        std::array<cplx, 21> fv;
        fv[20] = mapped(p.map, centr);
        for (int j = 0; j < 10; ++j) {
            double dx = hlgth * xgk[j];
            fv[2 * j] = mapped(p.map, centr - dx);
            fv[2 * j + 1] = mapped(p.map, centr + dx);
        }
        cplx resk = wgk[10] * fv[20];
        cplx resg = 0.0;
        double resabs = wgk[10] * std::abs(fv[20]);
        for (int j = 0; j < 10; ++j) {
            cplx sum = fv[2 * j] + fv[2 * j + 1];
            resk += wgk[j] * sum;
            resabs += wgk[j] * (std::abs(fv[2 * j]) + std::abs(fv[2 * j + 1]));
            if (j % 2 == 1)
                resg += wg[j / 2] * sum;
        }
        cplx reskh = 0.5 * resk;
        double resasc = wgk[10] * std::abs(fv[20] - reskh);
        for (int j = 0; j < 10; ++j)
            resasc += wgk[j] * (std::abs(fv[2 * j] - reskh) + std::abs(fv[2 * j + 1] - reskh));

        const double dh = std::abs(hlgth);
        double err = std::abs((resk - resg) * hlgth);
        resabs *= dh;
        resasc *= dh;
        if (resasc != 0.0 && err != 0.0)
            err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
        constexpr double eps = std::numeric_limits<double>::epsilon();
        if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
            err = std::max(50.0 * eps * resabs, err);
        p.value = resk * hlgth;
        p.error = err;
    }

    int count = 0;

private:
    const LineIntegrand& f_;
    double s_max_;
};

std::vector<double> core_breakpoints(double umax, std::span<const double> hints)
{
    std::vector<double> u;
    const double step = 1.5;
    int m = static_cast<int>(std::ceil(umax / step));
    for (int i = -m; i <= m; ++i)
        u.push_back(std::clamp(i * step, -umax, umax));
    for (double h : hints)
        if (std::isfinite(h)) {
            double v = std::asinh(h);
            if (std::abs(v) < umax)
                u.push_back(v);
        }
    u.push_back(-umax);
    u.push_back(umax);
    std::sort(u.begin(), u.end());
    std::vector<double> out;
    for (double v : u)
        if (out.empty() || v - out.back() > 1e-3)
            out.push_back(v);
    if (out.back() < umax)
        out.back() = umax;
    return out;
}

} // namespace

QuadResult integrate_line(const LineIntegrand& f, const QuadratureConfig& cfg,
                          std::span<const double> hints)
{
    cfg.validate();
    Evaluator ev(f, cfg.s_max);
    const double umax = std::asinh(cfg.s_max);

    std::vector<Panel> panels;
    auto bp = core_breakpoints(umax, hints);
    for (size_t i = 0; i + 1 < bp.size(); ++i)
        panels.push_back({bp[i], bp[i + 1], Map::core, 0.0, 0.0});

    QuadResult res;
    if (cfg.tail_policy == TailPolicy::mapped) {
        panels.push_back({0.0, 1.0, Map::tail_pos, 0.0, 0.0});
        panels.push_back({0.0, 1.0, Map::tail_neg, 0.0, 0.0});
    } else {
        double fp = std::abs(ev.mapped(Map::core, umax)) / std::cosh(umax);
        double fm = std::abs(ev.mapped(Map::core, -umax)) / std::cosh(umax);
        res.tail_bound = (fp + fm) * cfg.s_max;
        if (cfg.tail_policy == TailPolicy::bound_check && res.tail_bound > cfg.abs_tol) {
            std::ostringstream os;
            os << "quadrature: tail bound " << res.tail_bound << " beyond s_max = " << cfg.s_max
               << " exceeds abs_tol " << cfg.abs_tol;
            throw QuadratureError(os.str());
        }
    }

    std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
    for (auto& p : panels) {
        ev.rule(p);
        heap.push(p);
    }

    auto totals = [&](cplx& val, double& err) {
        val = 0.0;
        err = 0.0;
        auto copy = heap;
        while (!copy.empty()) {
            val += copy.top().value;
            err += copy.top().error;
            copy.pop();
        }
    };

    cplx val;
    double err;
    totals(val, err);
    int subdiv = 0;
    while (err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(val))) {
        if (subdiv >= cfg.max_subdivisions) {
            std::ostringstream os;
            os << "quadrature: no convergence after " << subdiv << " subdivisions (error estimate "
               << err << ", value " << val << ")";
            throw QuadratureError(os.str());
        }
        Panel worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
            throw QuadratureError("quadrature: panel width underflow");
        Panel left{worst.a, mid, worst.map, 0.0, 0.0};
        Panel right{mid, worst.b, worst.map, 0.0, 0.0};
        ev.rule(left);
        ev.rule(right);
        heap.push(left);
        heap.push(right);
        ++subdiv;
        totals(val, err);
    }

    res.value = val;
    res.error = err + res.tail_bound;
    res.evaluations = ev.count;
    res.subdivisions = subdiv;
    return res;
}

} // namespace qpwh
