#include "qpwh/portrait.hpp"

#include "qpwh/errors.hpp"
#include "qpwh/io.hpp"
#include "qpwh/parallel.hpp"
#include "qpwh/whfactor.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace qpwh {

void PortraitSpec::validate() const
{
    if (!(window.re_min < window.re_max) || !(window.im_min < window.im_max))
        throw DomainError("portrait: degenerate window");
    if (width < 2 || height < 2)
        throw DomainError("portrait: resolution must be at least 2x2");
}

std::array<std::uint8_t, 3> Image::pixel(int col, int row) const
{
    size_t o = 3 * (static_cast<size_t>(row) * width + col);
    return {rgb[o], rgb[o + 1], rgb[o + 2]};
}

cplx pixel_point(const PortraitSpec& spec, int col, int row)
{
    const Window& w = spec.window;
    double re = w.re_min + (col + 0.5) * (w.re_max - w.re_min) / spec.width;
    double im = w.im_max - (row + 0.5) * (w.im_max - w.im_min) / spec.height;
    return {re, im};
}

double phase_hue(cplx f)
{
    double h = (std::arg(f) + pi) / (2.0 * pi);
    return h >= 1.0 ? 0.0 : h;
}

std::array<std::uint8_t, 3> hue_to_rgb(double h)
{
    double h6 = h * 6.0;
    int i = std::clamp(static_cast<int>(std::floor(h6)), 0, 5);
    double f = h6 - i;
    double r = 0, g = 0, b = 0;
    switch (i) {
    case 0: r = 1; g = f; b = 0; break;
    case 1: r = 1 - f; g = 1; b = 0; break;
    case 2: r = 0; g = 1; b = f; break;
    case 3: r = 0; g = 1 - f; b = 1; break;
    case 4: r = f; g = 0; b = 1; break;
    default: r = 1; g = 0; b = 1 - f; break;
    }
    auto q = [](double x) { return static_cast<std::uint8_t>(std::lround(std::clamp(x, 0.0, 1.0) * 255.0)); };
    return {q(r), q(g), q(b)};
}

double rgb_to_hue(const std::array<std::uint8_t, 3>& c)
{
    double r = c[0] / 255.0, g = c[1] / 255.0, b = c[2] / 255.0;
    double mx = std::max({r, g, b});
    double mn = std::min({r, g, b});
    double d = mx - mn;
    if (d == 0.0)
        return 0.0;
    double h;
    if (mx == r)
        h = std::fmod((g - b) / d + 6.0, 6.0);
    else if (mx == g)
        h = 2.0 + (b - r) / d;
    else
        h = 4.0 + (r - g) / d;
    h /= 6.0;
    return h >= 1.0 ? h - 1.0 : h;
}

Image render(const PortraitSpec& spec, const PixelFunction& f, int workers)
{
    spec.validate();
    Image img;
    img.width = spec.width;
    img.height = spec.height;
    img.rgb.assign(3 * static_cast<size_t>(spec.width) * spec.height, 0);

    // one task per row keeps scheduling coarse and the output order fixed
    std::vector<int> row_failures(static_cast<size_t>(spec.height), 0);
    parallel_for(static_cast<size_t>(spec.height), workers, [&](size_t row) {
        for (int col = 0; col < spec.width; ++col) {
            std::array<std::uint8_t, 3> px{0, 0, 0};
            bool ok = true;
            cplx v;
            try {
                v = f(pixel_point(spec, col, static_cast<int>(row)));
                ok = std::isfinite(v.real()) && std::isfinite(v.imag());
            } catch (const Error&) {
                ok = false;
            }
            if (ok) {
                if (spec.mode == PortraitMode::phase) {
                    px = hue_to_rgb(phase_hue(v));
                } else {
                    double q = spec.sign_part == SignPart::real ? v.real() : v.imag();
                    px = q >= 0.0 ? std::array<std::uint8_t, 3>{255, 0, 0} : std::array<std::uint8_t, 3>{0, 0, 255};
                }
            } else {
                ++row_failures[row];
            }
            size_t o = 3 * (row * spec.width + col);
            img.rgb[o] = px[0];
            img.rgb[o + 1] = px[1];
            img.rgb[o + 2] = px[2];
        }
    });
    for (int n : row_failures)
        img.failures += n;
    return img;
}

std::string encode_ppm(const Image& img)
{
    std::string out = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    out.append(reinterpret_cast<const char*>(img.rgb.data()), img.rgb.size());
    return out;
}

void write_image(const Image& img, const std::string& path)
{
    write_file_atomic(path, encode_ppm(img));
}

const std::vector<FunctionInfo>& function_registry()
{
    static const std::vector<FunctionInfo> reg = {
        {"identity", "z"},
        {"one", "the constant 1"},
        {"sqrt_down", "square root with its cut on the negative imaginary axis"},
        {"diag_log", "logarithm with its cut along arg z = -3pi/4"},
        {"kappa", "kappa(k, z)"},
        {"big_k", "K(alpha1, z)"},
        {"gamma", "gamma(alpha1, z)"},
        {"k_po", "K+o(alpha1, z)"},
        {"k_mo", "K-o(alpha1, z)"},
        {"k_op", "Ko+(alpha1, z)"},
        {"k_om", "Ko-(alpha1, z)"},
        {"k_pp", "K++(alpha1, z), continued where needed"},
        {"k_pm", "K+-(alpha1, z), continued where needed"},
        {"k_mp", "K-+(alpha1, z), continued where needed"},
        {"k_mm", "K--(alpha1, z), continued where needed"},
        {"im_inv_k", "1/K(A1(Re z), A2(Im z)) over the contour-parameter plane; use sign mode"},
    };
    return reg;
}

PixelFunction make_function(const std::string& key, const FunctionParams& P)
{
    const double k = P.k;
    const cplx a1 = P.alpha1;
    if (key == "identity")
        return [](cplx z) { return z; };
    if (key == "one")
        return [](cplx) { return cplx(1.0, 0.0); };
    if (key == "sqrt_down")
        return [](cplx z) { return sqrt_down(z); };
    if (key == "diag_log")
        return [](cplx z) { return diag_log(z); };
    if (key == "kappa")
        return [k](cplx z) { return kappa(k, z); };
    if (key == "big_k")
        return [k, a1](cplx z) { return big_k({a1, z}, k); };
    if (key == "gamma")
        return [k, a1](cplx z) { return gamma_fn({a1, z}, k); };
    auto half = [&](HalfLabel h) -> PixelFunction {
        return [k, a1, h](cplx z) { return half_factor({a1, z}, k, h); };
    };
    if (key == "k_po")
        return half(HalfLabel::plus_circ);
    if (key == "k_mo")
        return half(HalfLabel::minus_circ);
    if (key == "k_op")
        return half(HalfLabel::circ_plus);
    if (key == "k_om")
        return half(HalfLabel::circ_minus);
    if (key == "k_pp" || key == "k_pm" || key == "k_mp" || key == "k_mm") {
        auto engine = std::make_shared<FactorEngine>(k, P.contour1, P.contour2, P.quadrature, P.eps);
        engine->branch_check();
        FactorLabel l = factor_label_from_string(key.substr(2));
        return [engine, l, a1](cplx z) { return engine->continue_factor(l, {a1, z}).value; };
    }
    if (key == "im_inv_k") {
        ContourSpec c1 = P.contour1, c2 = P.contour2;
        return [k, c1, c2](cplx z) {
            return 1.0 / big_k({contour_point(c1, z.real()), contour_point(c2, z.imag())}, k);
        };
    }
    throw DomainError("unknown portrait function: " + key);
}

} // namespace qpwh
