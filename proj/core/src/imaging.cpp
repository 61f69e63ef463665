#include "cepstra/imaging.hpp"
#include "cepstra/errors.hpp"
#include "cepstra/image_io.hpp"

#include <cmath>
#include <limits>

namespace cepstra {

Plane make_plane(int width, int height, double fill) {
    if (width <= 0 || height <= 0)
        throw ContractError("make_plane: dimensions must be positive");
    Plane p;
    p.width = width;
    p.height = height;
    p.data.assign(static_cast<std::size_t>(width) * height, fill);
    return p;
}

void validate_unit_plane(const Plane& p, const std::string& what) {
    if (p.width <= 0 || p.height <= 0 ||
        p.data.size() != static_cast<std::size_t>(p.width) * p.height)
        throw ContractError(what + ": inconsistent plane dimensions");
    for (double v : p.data)
        if (!std::isfinite(v) || v < 0.0 || v > 1.0)
            throw ContractError(what + ": sample outside [0,1]");
}

const char* color_space_name(ColorSpace s) {
    switch (s) {
    case ColorSpace::RGB: return "RGB";
    case ColorSpace::Lab: return "Lab";
    case ColorSpace::HSV: return "HSV";
    case ColorSpace::YCrCb: return "YCrCb";
    }
    return "?";
}

std::size_t LesionMask::true_count() const {
    std::size_t n = 0;
    for (auto v : data) n += (v != 0);
    return n;
}

ColorStack load_image(const std::string& path) {
    const RawImage raw = decode_image(path);
    if (raw.channels != 3)
        throw DataError("expected a 3-channel image: " + path);

    ColorStack stack;
    stack.space = ColorSpace::RGB;
    for (auto& ch : stack.channels)
        ch = make_plane(raw.width, raw.height);

    const std::size_t n = static_cast<std::size_t>(raw.width) * raw.height;
    for (std::size_t i = 0; i < n; ++i) {
        stack.channels[0].data[i] = raw.pixels[3 * i + 0] / 255.0;
        stack.channels[1].data[i] = raw.pixels[3 * i + 1] / 255.0;
        stack.channels[2].data[i] = raw.pixels[3 * i + 2] / 255.0;
    }
    return stack;
}

LesionMask load_mask(const std::string& path, int width, int height) {
    const RawImage raw = decode_image(path);
    if (raw.channels != 1)
        throw DataError("mask must be single-channel: " + path);
    if (raw.width != width || raw.height != height)
        throw DataError("mask size " + std::to_string(raw.width) + "x" + std::to_string(raw.height) +
                        " does not match image size " + std::to_string(width) + "x" +
                        std::to_string(height) + ": " + path);

    LesionMask mask;
    mask.width = raw.width;
    mask.height = raw.height;
    mask.data.resize(raw.pixels.size());
    for (std::size_t i = 0; i < raw.pixels.size(); ++i)
        mask.data[i] = raw.pixels[i] > 0 ? 1 : 0;
    if (mask.true_count() == 0)
        throw DataError("empty lesion mask: " + path);
    return mask;
}

namespace {

struct BBox {
    int r0, r1, c0, c1; // inclusive
};

BBox mask_bbox(const LesionMask& mask) {
    BBox b{mask.height, -1, mask.width, -1};
    for (int r = 0; r < mask.height; ++r)
        for (int c = 0; c < mask.width; ++c)
            if (mask.at(r, c)) {
                if (r < b.r0) b.r0 = r;
                if (r > b.r1) b.r1 = r;
                if (c < b.c0) b.c0 = c;
                if (c > b.c1) b.c1 = c;
            }
    if (b.r1 < 0) throw DataError("empty lesion mask");
    return b;
}

} // namespace

Plane apply_mask(const Plane& plane, const LesionMask& mask) {
    if (plane.width != mask.width || plane.height != mask.height)
        throw ContractError("apply_mask: plane and mask dimensions differ");
    const BBox b = mask_bbox(mask);
    Plane out = make_plane(b.c1 - b.c0 + 1, b.r1 - b.r0 + 1);
    for (int r = b.r0; r <= b.r1; ++r)
        for (int c = b.c0; c <= b.c1; ++c)
            out.at(r - b.r0, c - b.c0) = mask.at(r, c) ? plane.at(r, c) : 0.0;
    return out;
}

LesionMask crop_mask(const LesionMask& mask) {
    const BBox b = mask_bbox(mask);
    LesionMask out;
    out.width = b.c1 - b.c0 + 1;
    out.height = b.r1 - b.r0 + 1;
    out.data.resize(static_cast<std::size_t>(out.width) * out.height);
    for (int r = b.r0; r <= b.r1; ++r)
        for (int c = b.c0; c <= b.c1; ++c)
            out.data[static_cast<std::size_t>(r - b.r0) * out.width + (c - b.c0)] =
                mask.at(r, c) ? 1 : 0;
    return out;
}

QuantizedPlane quantize(const Plane& plane, int levels) {
    if (levels < 2) throw ContractError("quantize: levels must be >= 2");
    if (plane.data.empty() || plane.data.size() != static_cast<std::size_t>(plane.width) * plane.height)
        throw ContractError("quantize: inconsistent plane dimensions");

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : plane.data) {
        if (!std::isfinite(v)) throw DataError("quantize: non-finite sample");
        if (v < lo) lo = v;
        if (v > hi) hi = v;
    }

    QuantizedPlane q;
    q.width = plane.width;
    q.height = plane.height;
    q.levels = levels;
    q.data.assign(plane.data.size(), 0);
    if (hi == lo) return q; // constant plane -> all zeros

    const double scale = (levels - 1) / (hi - lo);
    for (std::size_t i = 0; i < plane.data.size(); ++i) {
        const double v = std::floor((plane.data[i] - lo) * scale + 0.5);
        q.data[i] = static_cast<std::uint16_t>(v < 0 ? 0 : (v > levels - 1 ? levels - 1 : v));
    }
    return q;
}

} // namespace cepstra
