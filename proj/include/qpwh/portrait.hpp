#pragma once

#include "qpwh/contour.hpp"
#include "qpwh/quadrature.hpp"
#include "qpwh/specfun.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qpwh {

enum class PortraitMode { phase, sign };
enum class SignPart { real, imag };

struct Window {
    double re_min = -1.0;
    double re_max = 1.0;
    double im_min = -1.0;
    double im_max = 1.0;
};

struct PortraitSpec {
    Window window;
    int width = 2;
    int height = 2;
    PortraitMode mode = PortraitMode::phase;
    // sign mode: red where this part of f is >= 0, blue otherwise
    SignPart sign_part = SignPart::imag;

    void validate() const;
};

struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;
    int failures = 0;

    std::array<std::uint8_t, 3> pixel(int col, int row) const;
};

using PixelFunction = std::function<cplx(cplx)>;

// Center of pixel (col, row); row 0 is the top (im_max) edge.
cplx pixel_point(const PortraitSpec& spec, int col, int row);

// (arg f + pi) / (2 pi), in [0, 1)
double phase_hue(cplx f);

// HSV with s = v = 1
std::array<std::uint8_t, 3> hue_to_rgb(double h);

// Inverse of hue_to_rgb for saturated colors.
double rgb_to_hue(const std::array<std::uint8_t, 3>& rgb);

// Evaluation failures (qpwh::Error or non-finite values) render black.
Image render(const PortraitSpec& spec, const PixelFunction& f, int workers = 1);

std::string encode_ppm(const Image& img);
void write_image(const Image& img, const std::string& path);

struct FunctionParams {
    double k = 3.0;
    ContourSpec contour1 = ContourSpec::defaults(Plane::alpha1);
    ContourSpec contour2 = ContourSpec::defaults(Plane::alpha2);
    QuadratureConfig quadrature;
    double eps = 0.0;
    // the frozen alpha1 for functions of alpha2
    cplx alpha1 = 0.0;
};

struct FunctionInfo {
    std::string key;
    std::string description;
};

const std::vector<FunctionInfo>& function_registry();

// Throws DomainError for an unknown key.
PixelFunction make_function(const std::string& key, const FunctionParams& params);

} // namespace qpwh
