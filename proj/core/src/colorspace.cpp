#include "cepstra/imaging.hpp"
#include "cepstra/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cepstra {

namespace {

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

// sRGB decoding (IEC 61966-2-1)
double srgb_to_linear(double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

// CIE Lab from XYZ, D65 white
double lab_f(double t) {
    constexpr double eps = 216.0 / 24389.0;
    constexpr double kappa = 24389.0 / 27.0;
    return t > eps ? std::cbrt(t) : (kappa * t + 16.0) / 116.0;
}

} // namespace

std::array<double, 3> rgb_to_lab(double r, double g, double b) {
    const double rl = srgb_to_linear(r);
    const double gl = srgb_to_linear(g);
    const double bl = srgb_to_linear(b);

    // sRGB -> XYZ (D65)
    const double x = 0.4124564 * rl + 0.3575761 * gl + 0.1804375 * bl;
    const double y = 0.2126729 * rl + 0.7151522 * gl + 0.0721750 * bl;
    const double z = 0.0193339 * rl + 0.1191920 * gl + 0.9503041 * bl;

    constexpr double xn = 0.95047, yn = 1.0, zn = 1.08883;
    const double fx = lab_f(x / xn);
    const double fy = lab_f(y / yn);
    const double fz = lab_f(z / zn);

    const double L = 116.0 * fy - 16.0;
    const double a = 500.0 * (fx - fy);
    const double bb = 200.0 * (fy - fz);

    // rescale: L by 100, a and b affine from [-128, 127]
    return {clamp01(L / 100.0), clamp01((a + 128.0) / 255.0), clamp01((bb + 128.0) / 255.0)};
}

std::array<double, 3> rgb_to_hsv(double r, double g, double b) {
    const double v = std::max({r, g, b});
    const double m = std::min({r, g, b});
    const double d = v - m;

    double h = 0.0;
    if (d > 0.0) {
        if (v == r)
            h = 60.0 * std::fmod((g - b) / d, 6.0);
        else if (v == g)
            h = 60.0 * ((b - r) / d + 2.0);
        else
            h = 60.0 * ((r - g) / d + 4.0);
        if (h < 0.0) h += 360.0;
    }
    const double s = v > 0.0 ? d / v : 0.0;
    return {clamp01(h / 360.0), clamp01(s), clamp01(v)};
}

std::array<double, 3> rgb_to_ycrcb(double r, double g, double b) {
    // BT.601 full range; chroma offset 128 in the 8-bit domain
    const double y = 0.299 * r + 0.587 * g + 0.114 * b;
    const double cr = 0.713 * (r - y) + 128.0 / 255.0;
    const double cb = 0.564 * (b - y) + 128.0 / 255.0;
    return {clamp01(y), clamp01(cr), clamp01(cb)};
}

std::array<ColorStack, 4> convert_color_spaces(const ColorStack& rgb) {
    if (rgb.space != ColorSpace::RGB)
        throw ContractError("convert_color_spaces: input must be RGB");
    for (const auto& ch : rgb.channels)
        validate_unit_plane(ch, "convert_color_spaces");
    if (rgb.channels[1].width != rgb.channels[0].width ||
        rgb.channels[2].width != rgb.channels[0].width ||
        rgb.channels[1].height != rgb.channels[0].height ||
        rgb.channels[2].height != rgb.channels[0].height)
        throw ContractError("convert_color_spaces: channel dimensions differ");

    std::array<ColorStack, 4> out;
    out[0] = rgb;
    const ColorSpace spaces[3] = {ColorSpace::Lab, ColorSpace::HSV, ColorSpace::YCrCb};
    for (int s = 0; s < 3; ++s) {
        out[s + 1].space = spaces[s];
        for (auto& ch : out[s + 1].channels)
            ch = make_plane(rgb.width(), rgb.height());
    }

    const std::size_t n = rgb.channels[0].size();
    for (std::size_t i = 0; i < n; ++i) {
        const double r = rgb.channels[0].data[i];
        const double g = rgb.channels[1].data[i];
        const double b = rgb.channels[2].data[i];
        const auto lab = rgb_to_lab(r, g, b);
        const auto hsv = rgb_to_hsv(r, g, b);
        const auto ycrcb = rgb_to_ycrcb(r, g, b);
        for (int k = 0; k < 3; ++k) {
            out[1].channels[k].data[i] = lab[k];
            out[2].channels[k].data[i] = hsv[k];
            out[3].channels[k].data[i] = ycrcb[k];
        }
    }
    return out;
}

} // namespace cepstra
