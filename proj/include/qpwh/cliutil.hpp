#pragma once

#include "qpwh/contour.hpp"
#include "qpwh/quadrature.hpp"
#include "qpwh/specfun.hpp"

#include <map>
#include <string>

namespace qpwh {

// Radians: plain numbers, or expressions like "pi/4", "-3pi/4", "3*pi/4", "2pi".
double parse_angle(const std::string& s);

// "re,im", a plain real "re", or a contour anchor "A1:s" / "A2:s".
cplx parse_point(const std::string& s, const ContourSpec& c1, const ContourSpec& c2);

// "re,im" only.
cplx parse_complex(const std::string& s);

// "re_min,re_max,im_min,im_max"
struct Window;
Window parse_window(const std::string& s);

// "N" or "WxH"
std::pair<int, int> parse_resolution(const std::string& s);

// key = value lines; '#' starts a comment. Throws std::runtime_error on malformed lines.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> load_config_file(const std::string& path);

struct RunConfig {
    double k = 3.0;
    ContourSpec contour1 = ContourSpec::defaults(Plane::alpha1);
    ContourSpec contour2 = ContourSpec::defaults(Plane::alpha2);
    QuadratureConfig quadrature;
    double eps = 0.0;        // contour offset, <= 0 for the default
    double eps_shift = -1.0; // < 0 for the default

    // Known keys: k, contour_a, contour_c, abs_tol, rel_tol, max_subdivisions, s_max,
    // tail_policy, eps, eps_shift. Unknown keys throw.
    void apply(const std::map<std::string, std::string>& kv);
};

struct ValidationReport {
    double sign_min;
    double loci_margin;
};

// Contour monotonicity, sign compatibility and loci margin; throws ContourError on failure.
ValidationReport validate_run_config(const RunConfig& rc);

} // namespace qpwh
