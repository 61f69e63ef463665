#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace cepstra {

/// Row-major grid of real samples. Used both for [0,1] image channels and
/// for unbounded intermediate planes (cepstra before quantization).
struct Plane {
    int width = 0;
    int height = 0;
    std::vector<double> data; // size width*height, row-major

    double at(int row, int col) const { return data[static_cast<std::size_t>(row) * width + col]; }
    double& at(int row, int col) { return data[static_cast<std::size_t>(row) * width + col]; }
    std::size_t size() const { return data.size(); }
};

Plane make_plane(int width, int height, double fill = 0.0);

/// Throws ContractError unless p is a well-formed image channel:
/// consistent dimensions and every sample finite in [0,1].
void validate_unit_plane(const Plane& p, const std::string& what);

enum class ColorSpace { RGB, Lab, HSV, YCrCb };

const char* color_space_name(ColorSpace s);

/// Three channels of one color space, canonical order
/// (RGB: R,G,B; Lab: L,a,b; HSV: H,S,V; YCrCb: Y,Cr,Cb),
/// each rescaled to [0,1].
struct ColorStack {
    ColorSpace space = ColorSpace::RGB;
    std::array<Plane, 3> channels;

    int width() const { return channels[0].width; }
    int height() const { return channels[0].height; }
};

/// Binary lesion mask; true marks lesion pixels.
struct LesionMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data; // 0 or 1, row-major

    bool at(int row, int col) const { return data[static_cast<std::size_t>(row) * width + col] != 0; }
    std::size_t true_count() const;
};

/// Gray-level quantization of a real plane, values in [0, levels-1].
struct QuantizedPlane {
    int width = 0;
    int height = 0;
    int levels = 0;
    std::vector<std::uint16_t> data;

    std::uint16_t at(int row, int col) const { return data[static_cast<std::size_t>(row) * width + col]; }
};

/// Decode an 8-bit 3-channel PNG or JPEG into an RGB stack scaled by 1/255.
/// Throws DataError naming the path on unreadable or unsupported files.
ColorStack load_image(const std::string& path);

/// Load a single-channel 8-bit PNG mask and check it against the expected
/// image dimensions. Any pixel > 0 becomes true. Throws DataError on
/// dimension mismatch or an all-false mask.
LesionMask load_mask(const std::string& path, int width, int height);

/// Convert an RGB stack into the four working color spaces, in the fixed
/// order [RGB, Lab, HSV, YCrCb]. Channels are rescaled to [0,1] by each
/// space's full nominal range (H/360, L/100, a,b affine from [-128,127],
/// YCrCb by the 8-bit range) and clamped.
std::array<ColorStack, 4> convert_color_spaces(const ColorStack& rgb);

/// Crop the plane to the mask's bounding box and zero every pixel outside
/// the mask. Throws DataError on an empty mask, ContractError on dimension
/// mismatch.
Plane apply_mask(const Plane& plane, const LesionMask& mask);

/// Crop the mask itself to its bounding box (companion to apply_mask).
LesionMask crop_mask(const LesionMask& mask);

/// Min-max quantization to [0, levels-1] with round-half-up:
/// q = floor((v - min)/(max - min) * (levels-1) + 0.5). A constant plane
/// maps to all zeros. Throws DataError on non-finite samples.
QuantizedPlane quantize(const Plane& plane, int levels = 256);

// Per-pixel converters, exposed for direct verification. Inputs and
// outputs are the rescaled [0,1] representation described above.
std::array<double, 3> rgb_to_lab(double r, double g, double b);
std::array<double, 3> rgb_to_hsv(double r, double g, double b);
std::array<double, 3> rgb_to_ycrcb(double r, double g, double b);

} // namespace cepstra
