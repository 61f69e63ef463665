#include "cepstra/image_io.hpp"
#include "cepstra/errors.hpp"

#include <cstdio>
#include <cstring>
#include <memory>

#include <png.h>

#include <jerror.h>
#include <jpeglib.h>

#include <csetjmp>

namespace cepstra {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::string& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f) throw DataError("cannot open file: " + path);
    return f;
}

// ---- PNG ----

struct PngReadGuard {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngReadGuard() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    }
};

struct PngWriteGuard {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngWriteGuard() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    }
};

RawImage decode_png(std::FILE* f, const std::string& path) {
    PngReadGuard g;
    g.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!g.png) throw DataError("png reader allocation failed: " + path);
    g.info = png_create_info_struct(g.png);
    if (!g.info) throw DataError("png info allocation failed: " + path);

    if (setjmp(png_jmpbuf(g.png)))
        throw DataError("png decode error: " + path);

    png_init_io(g.png, f);
    png_read_info(g.png, g.info);

    const png_uint_32 w = png_get_image_width(g.png, g.info);
    const png_uint_32 h = png_get_image_height(g.png, g.info);
    const int bit_depth = png_get_bit_depth(g.png, g.info);
    const int color_type = png_get_color_type(g.png, g.info);

    if (bit_depth == 16)
        throw DataError("unsupported 16-bit png: " + path);
    if (color_type == PNG_COLOR_TYPE_PALETTE)
        png_set_palette_to_rgb(g.png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
        png_set_expand_gray_1_2_4_to_8(g.png);
    if (png_get_valid(g.png, g.info, PNG_INFO_tRNS))
        png_set_tRNS_to_alpha(g.png);
    png_set_strip_alpha(g.png);
    png_read_update_info(g.png, g.info);

    const int channels = png_get_channels(g.png, g.info);
    if (channels != 1 && channels != 3)
        throw DataError("unsupported png channel count (" + std::to_string(channels) + "): " + path);

    RawImage img;
    img.width = static_cast<int>(w);
    img.height = static_cast<int>(h);
    img.channels = channels;
    img.pixels.resize(static_cast<std::size_t>(w) * h * channels);

    std::vector<png_bytep> rows(h);
    const std::size_t stride = static_cast<std::size_t>(w) * channels;
    for (png_uint_32 r = 0; r < h; ++r)
        rows[r] = img.pixels.data() + r * stride;
    png_read_image(g.png, rows.data());
    png_read_end(g.png, nullptr);
    return img;
}

// ---- JPEG ----

struct JpegErrorMgr {
    jpeg_error_mgr mgr;
    std::jmp_buf jump;
};

void jpeg_error_throw(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    std::longjmp(err->jump, 1);
}

RawImage decode_jpeg(std::FILE* f, const std::string& path) {
    jpeg_decompress_struct cinfo;
    JpegErrorMgr jerr;
    cinfo.err = jpeg_std_error(&jerr.mgr);
    jerr.mgr.error_exit = jpeg_error_throw;

    RawImage img;
    if (setjmp(jerr.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw DataError("jpeg decode error: " + path);
    }
    jpeg_create_decompress(&cinfo);
    jpeg_stdio_src(&cinfo, f);
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);

    img.width = static_cast<int>(cinfo.output_width);
    img.height = static_cast<int>(cinfo.output_height);
    img.channels = cinfo.output_components;
    if (img.channels != 3) {
        jpeg_destroy_decompress(&cinfo);
        throw DataError("unsupported jpeg channel count: " + path);
    }
    img.pixels.resize(static_cast<std::size_t>(img.width) * img.height * 3);
    const std::size_t stride = static_cast<std::size_t>(img.width) * 3;
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = img.pixels.data() + cinfo.output_scanline * stride;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return img;
}

} // namespace

RawImage decode_image(const std::string& path) {
    FilePtr f = open_file(path, "rb");
    unsigned char magic[8] = {0};
    const std::size_t got = std::fread(magic, 1, sizeof magic, f.get());
    std::rewind(f.get());
    static const unsigned char png_magic[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
    if (got >= 8 && std::memcmp(magic, png_magic, 8) == 0)
        return decode_png(f.get(), path);
    if (got >= 2 && magic[0] == 0xff && magic[1] == 0xd8)
        return decode_jpeg(f.get(), path);
    throw DataError("not a png or jpeg file: " + path);
}

void write_png(const std::string& path, const RawImage& img) {
    if (img.channels != 1 && img.channels != 3)
        throw ContractError("write_png: channels must be 1 or 3");
    if (img.pixels.size() != static_cast<std::size_t>(img.width) * img.height * img.channels)
        throw ContractError("write_png: pixel buffer size mismatch");

    FilePtr f = open_file(path, "wb");
    PngWriteGuard g;
    g.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!g.png) throw DataError("png writer allocation failed: " + path);
    g.info = png_create_info_struct(g.png);
    if (!g.info) throw DataError("png info allocation failed: " + path);
    if (setjmp(png_jmpbuf(g.png)))
        throw DataError("png encode error: " + path);

    png_init_io(g.png, f.get());
    png_set_IHDR(g.png, g.info, static_cast<png_uint_32>(img.width),
                 static_cast<png_uint_32>(img.height), 8,
                 img.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(g.png, g.info);

    const std::size_t stride = static_cast<std::size_t>(img.width) * img.channels;
    for (int r = 0; r < img.height; ++r)
        png_write_row(g.png, const_cast<png_bytep>(img.pixels.data() + r * stride));
    png_write_end(g.png, nullptr);
}

void write_jpeg(const std::string& path, const RawImage& img, int quality) {
    if (img.channels != 3)
        throw ContractError("write_jpeg: only 3-channel images supported");

    FilePtr f = open_file(path, "wb");
    jpeg_compress_struct cinfo;
    JpegErrorMgr jerr;
    cinfo.err = jpeg_std_error(&jerr.mgr);
    jerr.mgr.error_exit = jpeg_error_throw;
    if (setjmp(jerr.jump)) {
        jpeg_destroy_compress(&cinfo);
        throw DataError("jpeg encode error: " + path);
    }
    jpeg_create_compress(&cinfo);
    jpeg_stdio_dest(&cinfo, f.get());
    cinfo.image_width = static_cast<JDIMENSION>(img.width);
    cinfo.image_height = static_cast<JDIMENSION>(img.height);
    cinfo.input_components = 3;
    cinfo.in_color_space = JCS_RGB;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, quality, TRUE);
    jpeg_start_compress(&cinfo, TRUE);
    const std::size_t stride = static_cast<std::size_t>(img.width) * 3;
    while (cinfo.next_scanline < cinfo.image_height) {
        JSAMPROW row = const_cast<JSAMPROW>(img.pixels.data() + cinfo.next_scanline * stride);
        jpeg_write_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_compress(&cinfo);
    jpeg_destroy_compress(&cinfo);
}

} // namespace cepstra
