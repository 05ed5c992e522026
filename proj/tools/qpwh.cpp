#include "qpwh/cliutil.hpp"
#include "qpwh/errors.hpp"
#include "qpwh/io.hpp"
#include "qpwh/parallel.hpp"
#include "qpwh/portrait.hpp"
#include "qpwh/radlow.hpp"
#include "qpwh/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace qpwh;

namespace {

struct CommonFlags {
    std::string config;
    std::string k;
    std::string contour_a;
    std::string contour_c;
    std::string abs_tol;
    std::string rel_tol;
    std::string s_max;
    std::string max_subdivisions;
    std::string tail_policy;
    std::string eps;
    std::string eps_shift;
};

void add_common(CLI::App* app, CommonFlags& f)
{
    app->add_option("--config", f.config, "key=value config file");
    app->add_option("--k", f.k, "wavenumber (default 3)");
    app->add_option("--contour-a", f.contour_a, "contour constant a as re,im");
    app->add_option("--contour-c", f.contour_c, "contour constant c as re,im");
    app->add_option("--abs-tol", f.abs_tol, "quadrature absolute tolerance");
    app->add_option("--rel-tol", f.rel_tol, "quadrature relative tolerance");
    app->add_option("--s-max", f.s_max, "quadrature truncation parameter");
    app->add_option("--max-subdivisions", f.max_subdivisions, "adaptive subdivision limit");
    app->add_option("--tail-policy", f.tail_policy, "mapped, truncate or bound_check");
    app->add_option("--eps", f.eps, "contour shift epsilon (default 0.05 k)");
    app->add_option("--eps-shift", f.eps_shift, "imaginary shift of positive a1, a2 (default 1e-10 k)");
}

RunConfig build_config(const CommonFlags& f)
{
    RunConfig rc;
    if (!f.config.empty())
        rc.apply(load_config_file(f.config));
    std::map<std::string, std::string> kv;
    auto put = [&](const char* key, const std::string& v) {
        if (!v.empty())
            kv[key] = v;
    };
    put("k", f.k);
    put("contour_a", f.contour_a);
    put("contour_c", f.contour_c);
    put("abs_tol", f.abs_tol);
    put("rel_tol", f.rel_tol);
    put("s_max", f.s_max);
    put("max_subdivisions", f.max_subdivisions);
    put("tail_policy", f.tail_policy);
    put("eps", f.eps);
    put("eps_shift", f.eps_shift);
    rc.apply(kv);
    validate_run_config(rc);
    return rc;
}

std::string format_complex(cplx v)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", v.real(), v.imag());
    return buf;
}

int cmd_diffcoef(const CommonFlags& cf, const std::string& theta0, const std::string& phi0,
                 const std::vector<std::string>& phis, int n_theta, const std::string& out)
{
    RunConfig rc = build_config(cf);
    Incidence inc = make_incidence(parse_angle(theta0), parse_angle(phi0), rc.k, rc.eps_shift);
    FactorEngine engine(rc.k, rc.contour1, rc.contour2, rc.quadrature, rc.eps);
    RadlowModel model(engine, inc);
    const int workers = worker_count_from_env();

    std::vector<double> phi_values;
    for (const auto& p : phis)
        phi_values.push_back(parse_angle(p));
    if (phi_values.empty())
        for (int j = 0; j < 8; ++j)
            phi_values.push_back(j * pi / 4.0);

    namespace fs = std::filesystem;
    bool single = phi_values.size() == 1;
    if (!single) {
        std::error_code ec;
        fs::create_directories(out, ec);
        if (ec)
            throw std::runtime_error("cannot create output directory " + out);
    }
    int wholly_failed = 0;
    for (size_t j = 0; j < phi_values.size(); ++j) {
        ArcSweepResult arc = model.arc_sweep(phi_values[j], n_theta, workers);
        std::ostringstream os;
        write_csv(arc, os);
        std::string path = single ? out : (fs::path(out) / ("arc_" + std::to_string(j) + ".csv")).string();
        write_file_atomic(path, os.str());
        int failed = 0;
        for (const ArcRow& r : arc.rows)
            failed += r.fd.flag == RowFlag::failed;
        if (failed == static_cast<int>(arc.rows.size()))
            ++wholly_failed;
        std::cout << path << ": " << arc.rows.size() << " rows, " << failed << " failed\n";
    }
    return wholly_failed == 0 ? 0 : 2;
}

int cmd_factor(const CommonFlags& cf, const std::string& label, const std::string& a1s, const std::string& a2s)
{
    RunConfig rc = build_config(cf);
    SpectralPoint p{parse_point(a1s, rc.contour1, rc.contour2), parse_point(a2s, rc.contour1, rc.contour2)};
    if (label == "full") {
        std::cout << format_complex(big_k(p, rc.k)) << " route=explicit\n";
        return 0;
    }
    FactorEngine engine(rc.k, rc.contour1, rc.contour2, rc.quadrature, rc.eps);
    FactorValue v = engine.continue_factor(factor_label_from_string(label), p);
    std::cout << format_complex(v.value) << " route=" << to_string(v.route) << "\n";
    return 0;
}

int cmd_portrait(const CommonFlags& cf, const std::string& function, const std::string& window,
                 const std::string& res, const std::string& out, const std::string& mode,
                 const std::string& sign_part, const std::string& alpha1)
{
    RunConfig rc = build_config(cf);
    PortraitSpec spec;
    spec.window = parse_window(window);
    auto [w, h] = parse_resolution(res);
    spec.width = w;
    spec.height = h;
    if (mode == "phase")
        spec.mode = PortraitMode::phase;
    else if (mode == "sign")
        spec.mode = PortraitMode::sign;
    else
        throw std::invalid_argument("--mode must be phase or sign");
    if (sign_part == "im")
        spec.sign_part = SignPart::imag;
    else if (sign_part == "re")
        spec.sign_part = SignPart::real;
    else
        throw std::invalid_argument("--sign-part must be re or im");

    FunctionParams fp;
    fp.k = rc.k;
    fp.contour1 = rc.contour1;
    fp.contour2 = rc.contour2;
    fp.quadrature = rc.quadrature;
    fp.eps = rc.eps;
    fp.alpha1 = parse_point(alpha1, rc.contour1, rc.contour2);
    PixelFunction f = make_function(function, fp);
    Image img = render(spec, f, worker_count_from_env());
    write_image(img, out);
    std::cout << out << ": " << img.width << "x" << img.height << ", " << img.failures << " failure pixels\n";
    return 0;
}

int cmd_verify(const std::string& suite, const std::string& jsonl)
{
    auto results = run_suite(suite_from_string(suite), worker_count_from_env());
    std::ostringstream js;
    bool all = true;
    for (const auto& r : results) {
        std::cout << format_line(r) << "\n";
        js << format_json(r) << "\n";
        all = all && r.pass;
    }
    if (jsonl == "-")
        std::cout << js.str();
    else if (!jsonl.empty())
        write_file_atomic(jsonl, js.str());
    return all ? 0 : 1;
}

std::string registry_help()
{
    std::string s = "function key:";
    for (const auto& f : function_registry())
        s += "\n    " + f.key + "  " + f.description;
    return s;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Quarter-plane Wiener-Hopf factorization and diffraction coefficients"};
    app.require_subcommand(1);

    CommonFlags df, ff, pf;

    auto* diff = app.add_subcommand("diffcoef", "tabulate the diffraction coefficient along observation arcs");
    add_common(diff, df);
    std::string theta0, phi0, dout = "arc.csv";
    std::vector<std::string> phis;
    int n_theta = 101;
    diff->add_option("--theta0", theta0, "polar incidence angle, radians (pi/4 style accepted)")->required();
    diff->add_option("--phi0", phi0, "azimuthal incidence angle, radians")->required();
    diff->add_option("--phi", phis, "observation azimuth; repeatable (default: the 8 multiples of pi/4)")
        ->allow_extra_args(false);
    diff->add_option("--n-theta", n_theta, "theta samples on [0, pi/2]")->check(CLI::Range(2, 1000000));
    diff->add_option("--out", dout, "CSV path for one phi, directory for several");

    auto* fac = app.add_subcommand("factor", "evaluate one kernel factor");
    add_common(fac, ff);
    std::string label, a1s, a2s;
    fac->add_option("--label", label, "pp, pm, mp, mm or full")
        ->required()
        ->check(CLI::IsMember({"pp", "pm", "mp", "mm", "full"}));
    fac->add_option("--alpha1", a1s, "re,im or A1:s / A2:s")->required();
    fac->add_option("--alpha2", a2s, "re,im or A1:s / A2:s")->required();

    auto* por = app.add_subcommand("portrait", "render a phase portrait as binary PPM");
    add_common(por, pf);
    std::string function, window = "-1,1,-1,1", res = "400", pout = "portrait.ppm", mode = "phase",
                sign_part = "im", alpha1 = "0,0";
    por->add_option("--function", function, registry_help())->required();
    por->add_option("--window", window, "re_min,re_max,im_min,im_max");
    por->add_option("--res", res, "N or WxH");
    por->add_option("--out", pout, "output .ppm path");
    por->add_option("--mode", mode, "phase or sign");
    por->add_option("--sign-part", sign_part, "sign mode quantity: re or im");
    por->add_option("--alpha1", alpha1, "frozen alpha1 for functions of alpha2 (re,im or A1:s)");

    auto* ver = app.add_subcommand("verify", "run the acceptance suite");
    std::string suite = "all", jsonl;
    ver->add_option("--suite", suite, "specfun, contour, factor, radlow, performance or all")
        ->check(CLI::IsMember({"specfun", "contour", "factor", "radlow", "performance", "all"}));
    ver->add_option("--jsonl", jsonl, "write JSON lines here ('-' for stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*diff)
            return cmd_diffcoef(df, theta0, phi0, phis, n_theta, dout);
        if (*fac)
            return cmd_factor(ff, label, a1s, a2s);
        if (*por)
            return cmd_portrait(pf, function, window, res, pout, mode, sign_part, alpha1);
        if (*ver)
            return cmd_verify(suite, jsonl);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
