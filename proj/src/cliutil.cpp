#include "qpwh/cliutil.hpp"

#include "qpwh/errors.hpp"
#include "qpwh/portrait.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace qpwh {

namespace {

std::string trim(const std::string& s)
{
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& s)
{
    std::string t = trim(s);
    size_t pos = 0;
    double v;
    try {
        v = std::stod(t, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    if (pos != t.size())
        throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(item);
    if (!s.empty() && s.back() == sep)
        out.push_back("");
    return out;
}

} // namespace

double parse_angle(const std::string& s)
{
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)))
            t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    static const std::regex re(R"(^([+-]?)((?:\d+(?:\.\d*)?|\.\d+)(?:e[+-]?\d+)?)?\*?pi(?:/((?:\d+(?:\.\d*)?|\.\d+)))?$)");
    std::smatch m;
    if (std::regex_match(t, m, re)) {
        double coef = m[2].matched ? parse_real(m[2].str()) : 1.0;
        double den = m[3].matched ? parse_real(m[3].str()) : 1.0;
        if (den == 0.0)
            throw std::invalid_argument("angle: division by zero in '" + s + "'");
        double v = coef * pi / den;
        return m[1].str() == "-" ? -v : v;
    }
    return parse_real(t);
}

cplx parse_complex(const std::string& s)
{
    auto parts = split(s, ',');
    if (parts.size() != 2)
        throw std::invalid_argument("expected 're,im', got '" + s + "'");
    return {parse_real(parts[0]), parse_real(parts[1])};
}

cplx parse_point(const std::string& s, const ContourSpec& c1, const ContourSpec& c2)
{
    std::string t = trim(s);
    if (t.size() > 3 && (t[0] == 'A' || t[0] == 'a') && (t[1] == '1' || t[1] == '2') && t[2] == ':') {
        double par = parse_real(t.substr(3));
        return contour_point(t[1] == '1' ? c1 : c2, par);
    }
    if (t.find(',') != std::string::npos)
        return parse_complex(t);
    return {parse_real(t), 0.0};
}

Window parse_window(const std::string& s)
{
    auto parts = split(s, ',');
    if (parts.size() != 4)
        throw std::invalid_argument("expected 're_min,re_max,im_min,im_max', got '" + s + "'");
    Window w{parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2]), parse_real(parts[3])};
    if (!(w.re_min < w.re_max) || !(w.im_min < w.im_max))
        throw std::invalid_argument("degenerate window '" + s + "'");
    return w;
}

std::pair<int, int> parse_resolution(const std::string& s)
{
    std::string t = trim(s);
    size_t x = t.find_first_of("xX");
    auto to_int = [&](const std::string& v) {
        double d = parse_real(v);
        if (d != static_cast<int>(d) || d < 2)
            throw std::invalid_argument("resolution must be an integer >= 2: '" + s + "'");
        return static_cast<int>(d);
    };
    if (x == std::string::npos) {
        int n = to_int(t);
        return {n, n};
    }
    return {to_int(t.substr(0, x)), to_int(t.substr(x + 1))};
}

std::map<std::string, std::string> parse_config_text(const std::string& text)
{
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config line " + std::to_string(lineno) + ": empty key");
        kv[key] = val;
    }
    return kv;
}

std::map<std::string, std::string> load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void RunConfig::apply(const std::map<std::string, std::string>& kv)
{
    for (const auto& [key, val] : kv) {
        if (key == "k")
            k = parse_real(val);
        else if (key == "contour_a")
            contour1.a = contour2.a = parse_complex(val);
        else if (key == "contour_c")
            contour1.c = contour2.c = parse_complex(val);
        else if (key == "abs_tol")
            quadrature.abs_tol = parse_real(val);
        else if (key == "rel_tol")
            quadrature.rel_tol = parse_real(val);
        else if (key == "max_subdivisions")
            quadrature.max_subdivisions = static_cast<int>(parse_real(val));
        else if (key == "s_max")
            quadrature.s_max = parse_real(val);
        else if (key == "tail_policy")
            quadrature.tail_policy = tail_policy_from_string(val);
        else if (key == "eps")
            eps = parse_real(val);
        else if (key == "eps_shift")
            eps_shift = parse_real(val);
        else
            throw std::runtime_error("unknown config key: " + key);
    }
}

ValidationReport validate_run_config(const RunConfig& rc)
{
    if (!(rc.k > 0.0))
        throw DomainError("k must be positive");
    rc.quadrature.validate();
    validate_contour(rc.contour1);
    validate_contour(rc.contour2);
    SignScanReport scan = sign_compatibility_scan(rc.contour1, rc.contour2, rc.k, 200);
    if (scan.min_value < -1e-10 || scan.inadmissible > 0) {
        std::ostringstream os;
        os << "contour constants fail the sign-compatibility scan: min Im(1/K) = " << scan.min_value
           << " at (" << scan.s1_at_min << ", " << scan.s2_at_min << "), " << scan.inadmissible
           << " inadmissible grid points";
        throw ContourError(os.str());
    }
    // sample spacing is 0.125 in s; a margin below that cannot be told apart from a crossing
    LociMargin lm = loci_margin(rc.contour1, rc.contour2, rc.k, 801);
    if (!(lm.min() > 0.25))
        throw ContourError("contours come within the sampling resolution of the branch loci");
    return {scan.min_value, lm.min()};
}

} // namespace qpwh
