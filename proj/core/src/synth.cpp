#include "cepstra/synth.hpp"

#include "cepstra/errors.hpp"
#include "cepstra/image_io.hpp"
#include "cepstra/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

namespace cepstra {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint64_t mix_seed(std::uint64_t seed, int idx) {
    return seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(idx + 1));
}

/// Bilinear value noise: random grid every `cell` pixels, interpolated.
std::vector<double> smooth_noise(Rng& rng, int size, int cell) {
    const int g = size / cell + 2;
    std::vector<double> grid(static_cast<std::size_t>(g) * g);
    for (double& v : grid) v = rng.uniform();
    std::vector<double> out(static_cast<std::size_t>(size) * size);
    for (int y = 0; y < size; ++y) {
        const int gy = y / cell;
        const double fy = static_cast<double>(y % cell) / cell;
        for (int x = 0; x < size; ++x) {
            const int gx = x / cell;
            const double fx = static_cast<double>(x % cell) / cell;
            const double top = grid[gy * g + gx] * (1.0 - fx) + grid[gy * g + gx + 1] * fx;
            const double bot =
                grid[(gy + 1) * g + gx] * (1.0 - fx) + grid[(gy + 1) * g + gx + 1] * fx;
            out[static_cast<std::size_t>(y) * size + x] = top * (1.0 - fy) + bot * fy;
        }
    }
    return out;
}

std::vector<double> pixel_noise(Rng& rng, int size, double amp) {
    std::vector<double> out(static_cast<std::size_t>(size) * size);
    for (double& v : out) v = amp * (2.0 * rng.uniform() - 1.0);
    return out;
}

/// Luminance field in roughly [0,1]: smooth background plus fine noise,
/// plus a periodic component for class-1 images.
std::vector<double> make_field(Rng& rng, const SynthParams& p, int label) {
    const int size = p.size;
    std::vector<double> field(static_cast<std::size_t>(size) * size, 0.0);
    const std::vector<double> bg = smooth_noise(rng, size, 16);
    const std::vector<double> fine = pixel_noise(rng, size, 0.06);
    for (std::size_t i = 0; i < field.size(); ++i) field[i] = 0.35 + 0.3 * bg[i] + fine[i];

    switch (p.kind) {
    case SynthKind::Grating: {
        if (label == 1) {
            // Square-wave grating at a random orientation: harmonic-rich,
            // so the log-spectrum is periodic at the grating period.
            const double theta = rng.uniform(0.0, kPi);
            const double ux = std::cos(theta), uy = std::sin(theta);
            const double phase = rng.uniform(0.0, 2.0 * kPi);
            for (int y = 0; y < size; ++y)
                for (int x = 0; x < size; ++x) {
                    const double s =
                        std::sin(2.0 * kPi * (ux * x + uy * y) / p.period + phase);
                    field[static_cast<std::size_t>(y) * size + x] += s >= 0.0 ? 0.12 : -0.12;
                }
        } else {
            // Aperiodic counterpart with comparable contrast.
            const std::vector<double> wiggle = smooth_noise(rng, size, std::max(2, size / 24));
            for (std::size_t i = 0; i < field.size(); ++i)
                field[i] += 0.24 * (wiggle[i] - 0.5);
        }
        break;
    }
    case SynthKind::EchoNoise: {
        std::vector<double> n = pixel_noise(rng, size, 0.22);
        // 3x3 box smoothing gives the noise spatial correlation.
        std::vector<double> sm(n.size(), 0.0);
        for (int y = 0; y < size; ++y)
            for (int x = 0; x < size; ++x) {
                double acc = 0.0;
                int cnt = 0;
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int yy = y + dy, xx = x + dx;
                        if (yy < 0 || yy >= size || xx < 0 || xx >= size) continue;
                        acc += n[static_cast<std::size_t>(yy) * size + xx];
                        ++cnt;
                    }
                sm[static_cast<std::size_t>(y) * size + x] = acc / cnt;
            }
        const int tau = static_cast<int>(std::lround(p.period));
        for (int y = 0; y < size; ++y)
            for (int x = 0; x < size; ++x) {
                double v = sm[static_cast<std::size_t>(y) * size + x];
                if (label == 1 && x >= tau)
                    v += 0.6 * sm[static_cast<std::size_t>(y) * size + (x - tau)];
                field[static_cast<std::size_t>(y) * size + x] += v;
            }
        break;
    }
    case SynthKind::BlobNoise: {
        const int cells = std::max(1, static_cast<int>(std::floor(size / p.period)));
        const double sigma = p.period / 3.5;
        std::vector<std::pair<double, double>> centers;
        if (label == 1) {
            // Blobs on a regular lattice with a random global offset.
            const double ox = rng.uniform(0.0, p.period);
            const double oy = rng.uniform(0.0, p.period);
            for (int cy = 0; cy < cells; ++cy)
                for (int cx = 0; cx < cells; ++cx)
                    centers.emplace_back(oy + cy * p.period, ox + cx * p.period);
        } else {
            for (int c = 0; c < cells * cells; ++c)
                centers.emplace_back(rng.uniform(0.0, size), rng.uniform(0.0, size));
        }
        const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
        for (int y = 0; y < size; ++y)
            for (int x = 0; x < size; ++x) {
                double acc = 0.0;
                for (const auto& [cy, cx] : centers) {
                    const double dy = y - cy, dx = x - cx;
                    const double d2 = dy * dy + dx * dx;
                    if (d2 < 9.0 * sigma * sigma) acc += std::exp(-d2 * inv2s2);
                }
                field[static_cast<std::size_t>(y) * size + x] += 0.25 * acc;
            }
        break;
    }
    }
    return field;
}

RawImage field_to_rgb(Rng& rng, const std::vector<double>& field, int size) {
    RawImage img;
    img.width = size;
    img.height = size;
    img.channels = 3;
    img.pixels.resize(static_cast<std::size_t>(size) * size * 3);
    double gain[3];
    for (double& g : gain) g = rng.uniform(0.82, 1.0);
    for (std::size_t i = 0; i < field.size(); ++i) {
        for (int c = 0; c < 3; ++c) {
            const double v = std::clamp(field[i] * gain[c], 0.0, 1.0);
            img.pixels[i * 3 + c] = static_cast<std::uint8_t>(std::lround(v * 255.0));
        }
    }
    return img;
}

RawImage make_ellipse_mask(Rng& rng, int size) {
    const double cx = size / 2.0 + rng.uniform(-size / 16.0, size / 16.0);
    const double cy = size / 2.0 + rng.uniform(-size / 16.0, size / 16.0);
    const double a = rng.uniform(0.30, 0.42) * size;
    const double b = rng.uniform(0.30, 0.42) * size;
    RawImage m;
    m.width = size;
    m.height = size;
    m.channels = 1;
    m.pixels.assign(static_cast<std::size_t>(size) * size, 0);
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            const double dx = (x - cx) / a, dy = (y - cy) / b;
            if (dx * dx + dy * dy <= 1.0)
                m.pixels[static_cast<std::size_t>(y) * size + x] = 255;
        }
    return m;
}

} // namespace

SynthKind parse_synth_kind(const std::string& name) {
    if (name == "echo-noise") return SynthKind::EchoNoise;
    if (name == "grating") return SynthKind::Grating;
    if (name == "blob-noise") return SynthKind::BlobNoise;
    throw UsageError("unknown synth kind: " + name +
                     " (expected echo-noise, grating, or blob-noise)");
}

std::string synth_kind_name(SynthKind kind) {
    switch (kind) {
    case SynthKind::EchoNoise: return "echo-noise";
    case SynthKind::Grating: return "grating";
    case SynthKind::BlobNoise: return "blob-noise";
    }
    return "?";
}

std::vector<ManifestRow> generate_synth_dataset(const SynthParams& params,
                                                const std::string& out_dir) {
    if (params.count < 2) throw UsageError("synth: count must be >= 2");
    if (params.size < 16) throw UsageError("synth: size must be >= 16");
    if (params.period < 2.0 || params.period > params.size / 4.0)
        throw UsageError("synth: period must be in [2, size/4]");

    namespace fs = std::filesystem;
    const fs::path root(out_dir);
    fs::create_directories(root / "images");
    fs::create_directories(root / "masks");

    std::vector<ManifestRow> rows;
    const int n_class1 = (params.count + 1) / 2;
    for (int idx = 0; idx < params.count; ++idx) {
        Rng rng(mix_seed(params.seed, idx));
        const int label = idx < n_class1 ? 1 : 0;
        char suffix[16];
        std::snprintf(suffix, sizeof suffix, "%04d", idx);
        const std::string id = "synth_" + synth_kind_name(params.kind) + "_" + suffix;

        const std::vector<double> field = make_field(rng, params, label);
        const RawImage img = field_to_rgb(rng, field, params.size);
        const RawImage mask = make_ellipse_mask(rng, params.size);

        const std::string img_path = (root / "images" / (id + ".png")).string();
        const std::string mask_path = (root / "masks" / (id + "_mask.png")).string();
        write_png(img_path, img);
        write_png(mask_path, mask);

        ManifestRow row;
        row.image_id = id;
        row.image_path = img_path;
        row.mask_path = mask_path;
        row.label = label;
        row.lesion_id = id;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace cepstra
