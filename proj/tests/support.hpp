#pragma once

// Shared fixtures and helpers for the test binaries.

#include "cepstra/cepstrum.hpp"
#include "cepstra/image_io.hpp"
#include "cepstra/imaging.hpp"
#include "cepstra/rng.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace testsup {

/// Self-deleting scratch directory, unique per instance.
class TempDir {
public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        const auto base = std::filesystem::temp_directory_path();
        for (int attempt = 0; attempt < 1000; ++attempt) {
            auto cand = base / ("cepstra_test_" + std::to_string(counter.fetch_add(1)) + "_" +
                                std::to_string(attempt));
            std::error_code ec;
            if (std::filesystem::create_directory(cand, ec)) {
                path_ = cand;
                return;
            }
        }
        throw std::runtime_error("TempDir: could not create a scratch directory");
    }

    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }

    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string str() const { return path_.string(); }
    std::string file(const std::string& rel) const { return (path_ / rel).string(); }

private:
    std::filesystem::path path_;
};

inline cepstra::Plane plane_of(std::initializer_list<std::initializer_list<double>> rows) {
    cepstra::Plane p;
    p.height = static_cast<int>(rows.size());
    p.width = static_cast<int>(rows.begin()->size());
    for (const auto& row : rows)
        for (double v : row) p.data.push_back(v);
    return p;
}

inline cepstra::LesionMask mask_of(std::initializer_list<std::initializer_list<int>> rows) {
    cepstra::LesionMask m;
    m.height = static_cast<int>(rows.size());
    m.width = static_cast<int>(rows.begin()->size());
    for (const auto& row : rows)
        for (int v : row) m.data.push_back(v ? 1 : 0);
    return m;
}

inline cepstra::QuantizedPlane qplane_of(int levels,
                                         std::initializer_list<std::initializer_list<int>> rows) {
    cepstra::QuantizedPlane q;
    q.levels = levels;
    q.height = static_cast<int>(rows.size());
    q.width = static_cast<int>(rows.begin()->size());
    for (const auto& row : rows)
        for (int v : row) q.data.push_back(static_cast<std::uint16_t>(v));
    return q;
}

inline cepstra::LesionMask full_mask(int width, int height) {
    cepstra::LesionMask m;
    m.width = width;
    m.height = height;
    m.data.assign(static_cast<std::size_t>(width) * height, 1);
    return m;
}

/// Uniform [0,1) plane from the library generator.
inline cepstra::Plane random_plane(int width, int height, std::uint64_t seed) {
    cepstra::Plane p = cepstra::make_plane(width, height);
    cepstra::Rng rng(seed);
    for (auto& v : p.data) v = rng.uniform();
    return p;
}

/// Square-wave grating around 0.5, varying along columns (period in pixels)
/// when axis_cols is true, else along rows.
inline cepstra::Plane grating_plane(int width, int height, int period, double amplitude = 0.2,
                                    bool axis_cols = true) {
    cepstra::Plane p = cepstra::make_plane(width, height);
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c) {
            const int t = axis_cols ? c : r;
            const double s = ((t / (period / 2)) % 2 == 0) ? 1.0 : -1.0;
            p.at(r, c) = 0.5 + amplitude * s;
        }
    return p;
}

/// Rotate a plane 90 degrees clockwise: out(r, c) = in(h-1-c, r).
inline cepstra::Plane rot90(const cepstra::Plane& in) {
    cepstra::Plane out = cepstra::make_plane(in.height, in.width);
    for (int r = 0; r < out.height; ++r)
        for (int c = 0; c < out.width; ++c) out.at(r, c) = in.at(in.height - 1 - c, r);
    return out;
}

inline cepstra::QuantizedPlane rot90(const cepstra::QuantizedPlane& in) {
    cepstra::QuantizedPlane out;
    out.width = in.height;
    out.height = in.width;
    out.levels = in.levels;
    out.data.assign(in.data.size(), 0);
    for (int r = 0; r < out.height; ++r)
        for (int c = 0; c < out.width; ++c)
            out.data[static_cast<std::size_t>(r) * out.width + c] = in.at(in.height - 1 - c, r);
    return out;
}

inline std::uint8_t to_byte(double v) {
    if (v <= 0.0) return 0;
    if (v >= 1.0) return 255;
    return static_cast<std::uint8_t>(std::lround(v * 255.0));
}

/// Write a [0,1] plane as an 8-bit grayscale PNG.
inline void write_plane_png(const std::string& path, const cepstra::Plane& p) {
    cepstra::RawImage img;
    img.width = p.width;
    img.height = p.height;
    img.channels = 1;
    img.pixels.reserve(p.data.size());
    for (double v : p.data) img.pixels.push_back(to_byte(v));
    cepstra::write_png(path, img);
}

/// Write three [0,1] planes as an 8-bit RGB PNG.
inline void write_rgb_png(const std::string& path, const cepstra::Plane& r,
                          const cepstra::Plane& g, const cepstra::Plane& b) {
    cepstra::RawImage img;
    img.width = r.width;
    img.height = r.height;
    img.channels = 3;
    img.pixels.reserve(r.data.size() * 3);
    for (std::size_t i = 0; i < r.data.size(); ++i) {
        img.pixels.push_back(to_byte(r.data[i]));
        img.pixels.push_back(to_byte(g.data[i]));
        img.pixels.push_back(to_byte(b.data[i]));
    }
    cepstra::write_png(path, img);
}

/// Write a mask as an 8-bit grayscale PNG (255 inside, 0 outside).
inline void write_mask_png(const std::string& path, const cepstra::LesionMask& m) {
    cepstra::RawImage img;
    img.width = m.width;
    img.height = m.height;
    img.channels = 1;
    img.pixels.reserve(m.data.size());
    for (auto v : m.data) img.pixels.push_back(v ? 255 : 0);
    cepstra::write_png(path, img);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_file: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_file: cannot open " + path);
    out << content;
}

/// Spectrally flat 2D noise: the outer product of two flat 1D noises has a
/// unit-magnitude 2D spectrum, so echo peaks are the only cepstral content.
inline cepstra::Plane flat_noise_plane(int width, int height, std::uint64_t seed) {
    const auto row_sig = cepstra::white_noise(height, seed);
    const auto col_sig = cepstra::white_noise(width, seed ^ 0x9e3779b97f4a7c15ULL);
    cepstra::Plane p = cepstra::make_plane(width, height);
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c) p.at(r, c) = row_sig[r] * col_sig[c];
    return p;
}

/// Max absolute deviation scaled against the oracle's magnitude:
/// passes when max|a-b| <= tol * max(1, max|b|).
inline bool close_to_oracle(const std::vector<double>& got, const std::vector<double>& oracle,
                            double tol, double* worst = nullptr) {
    if (got.size() != oracle.size()) return false;
    double max_dev = 0.0, max_mag = 1.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        max_dev = std::max(max_dev, std::fabs(got[i] - oracle[i]));
        max_mag = std::max(max_mag, std::fabs(oracle[i]));
    }
    if (worst) *worst = max_dev / max_mag;
    return max_dev <= tol * max_mag;
}

} // namespace testsup
