#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cepstra {

/// Raw 8-bit interleaved image as read from or written to disk.
struct RawImage {
    int width = 0;
    int height = 0;
    int channels = 0; // 1 (gray) or 3 (RGB)
    std::vector<std::uint8_t> pixels;
};

/// Decode a PNG or JPEG file (sniffed by magic bytes). Palette and
/// gray+alpha PNGs are expanded; alpha is stripped. 16-bit files are
/// rejected. Throws DataError naming the path.
RawImage decode_image(const std::string& path);

/// Write an 8-bit PNG (gray for channels==1, RGB for channels==3).
/// Output bytes are deterministic for identical input.
void write_png(const std::string& path, const RawImage& img);

/// Write an 8-bit JPEG (quality 0-100).
void write_jpeg(const std::string& path, const RawImage& img, int quality = 95);

} // namespace cepstra
