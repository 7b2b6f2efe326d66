#include "frp/image_io.hpp"

#include <png.h>
#include <tiffio.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <memory>

namespace frp {
namespace {

struct FileCloser {
    void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

std::string lower_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext;
}

bool is_tiff(const std::filesystem::path& path) {
    const auto ext = lower_extension(path);
    return ext == ".tif" || ext == ".tiff";
}

std::uint8_t channel_average(int r, int g, int b) {
    return static_cast<std::uint8_t>((r + g + b + 1) / 3);
}

// ---------------------------------------------------------------------------
// PNG. libpng reports errors by longjmp, so the setjmp frames below only hold
// trivially destructible locals; buffers are owned by the caller.

struct PngError {
    char message[256] = {};
};

void png_error_fn(png_structp png, png_const_charp msg) {
    auto* err = static_cast<PngError*>(png_get_error_ptr(png));
    std::snprintf(err->message, sizeof(err->message), "%s", msg);
    std::longjmp(png_jmpbuf(png), 1);
}

void png_warning_fn(png_structp, png_const_charp) {}

struct PngRead {
    std::vector<std::uint8_t> buffer;
    std::vector<png_bytep> rows;
    png_uint_32 width = 0;
    png_uint_32 height = 0;
    int channels = 0;
    int bit_depth = 0;
    bool has_phys = false;
    png_uint_32 res_x = 0;
    int res_unit = 0;
};

// Returns false with err filled on failure; bit_depth 16 is reported, not decoded.
bool read_png_raw(std::FILE* fp, PngRead& out, PngError& err) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &err, png_error_fn, png_warning_fn);
    if (!png) {
        std::snprintf(err.message, sizeof(err.message), "out of memory");
        return false;
    }
    png_infop info = png_create_info_struct(png);
    if (!info || setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        return false;
    }
    png_init_io(png, fp);
    png_read_info(png, info);

    const int color_type = png_get_color_type(png, info);
    out.bit_depth = png_get_bit_depth(png, info);
    if (out.bit_depth == 16) {
        png_destroy_read_struct(&png, &info, nullptr);
        return true;
    }
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && out.bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    png_read_update_info(png, info);

    out.width = png_get_image_width(png, info);
    out.height = png_get_image_height(png, info);
    out.channels = png_get_channels(png, info);
    const std::size_t rowbytes = png_get_rowbytes(png, info);
    out.buffer.resize(rowbytes * out.height);
    out.rows.resize(out.height);
    for (png_uint_32 y = 0; y < out.height; ++y) out.rows[y] = out.buffer.data() + y * rowbytes;
    png_read_image(png, out.rows.data());
    png_read_end(png, nullptr);

    png_uint_32 rx = 0, ry = 0;
    int unit = 0;
    if (png_get_pHYs(png, info, &rx, &ry, &unit) & PNG_INFO_pHYs) {
        out.has_phys = true;
        out.res_x = rx;
        out.res_unit = unit;
    }
    png_destroy_read_struct(&png, &info, nullptr);
    return true;
}

DecodedImage decode_png(const std::filesystem::path& path) {
    FilePtr fp(std::fopen(path.string().c_str(), "rb"));
    if (!fp) throw Error(ErrorKind::io, "cannot open " + path.string());
    unsigned char sig[8];
    if (std::fread(sig, 1, 8, fp.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
        throw Error(ErrorKind::unsupported_format, "not a PNG file: " + path.string());
    }
    std::rewind(fp.get());

    PngRead raw;
    PngError err;
    if (!read_png_raw(fp.get(), raw, err)) {
        throw Error(ErrorKind::io, "PNG decode failed for " + path.string() + ": " + err.message);
    }
    if (raw.bit_depth == 16) {
        throw Error(ErrorKind::unsupported_format, "unsupported bit depth " + std::to_string(raw.bit_depth));
    }
    if (raw.channels != 1 && raw.channels != 3) {
        throw Error(ErrorKind::unsupported_format, "unsupported channel layout");
    }

    DecodedImage out;
    out.pixels = Gray8(static_cast<int>(raw.width), static_cast<int>(raw.height));
    for (int y = 0; y < out.pixels.height(); ++y) {
        const png_bytep src = raw.rows[static_cast<std::size_t>(y)];
        auto dst = out.pixels.row(y);
        if (raw.channels == 1) {
            std::copy_n(src, dst.size(), dst.begin());
        } else {
            for (std::size_t x = 0; x < dst.size(); ++x) {
                dst[x] = channel_average(src[3 * x], src[3 * x + 1], src[3 * x + 2]);
            }
        }
    }
    if (raw.has_phys && raw.res_unit == PNG_RESOLUTION_METER && raw.res_x > 0) {
        out.header_scale = 1000.0 / static_cast<double>(raw.res_x);
    }
    return out;
}

bool write_png_raw(std::FILE* fp, const std::uint8_t* data, int width, int height, int color_type,
                   int channels, png_uint_32 px_per_meter, PngError& err) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &err, png_error_fn, png_warning_fn);
    if (!png) return false;
    png_infop info = png_create_info_struct(png);
    if (!info || setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        return false;
    }
    png_init_io(png, fp);
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8, color_type,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    if (px_per_meter > 0) png_set_pHYs(png, info, px_per_meter, px_per_meter, PNG_RESOLUTION_METER);
    png_write_info(png, info);
    const std::size_t stride = static_cast<std::size_t>(width) * static_cast<std::size_t>(channels);
    for (int y = 0; y < height; ++y) {
        png_write_row(png, const_cast<png_bytep>(data + static_cast<std::size_t>(y) * stride));
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return true;
}

void write_png(const std::filesystem::path& path, const std::uint8_t* data, int width, int height,
               int color_type, int channels, png_uint_32 px_per_meter) {
    FilePtr fp(std::fopen(path.string().c_str(), "wb"));
    if (!fp) throw Error(ErrorKind::io, "cannot write " + path.string());
    PngError err;
    if (!write_png_raw(fp.get(), data, width, height, color_type, channels, px_per_meter, err)) {
        throw Error(ErrorKind::io, "PNG encode failed for " + path.string() + ": " + err.message);
    }
}

// ---------------------------------------------------------------------------
// TIFF

struct TiffCloser {
    void operator()(TIFF* t) const noexcept { TIFFClose(t); }
};
using TiffPtr = std::unique_ptr<TIFF, TiffCloser>;

void silence_libtiff() {
    TIFFSetErrorHandler(nullptr);
    TIFFSetWarningHandler(nullptr);
}

DecodedImage decode_tiff(const std::filesystem::path& path) {
    silence_libtiff();
    TiffPtr tif(TIFFOpen(path.string().c_str(), "r"));
    if (!tif) throw Error(ErrorKind::io, "cannot open TIFF " + path.string());

    std::uint32_t width = 0, height = 0;
    std::uint16_t bits = 0, samples = 1, planar = PLANARCONFIG_CONTIG, photometric = PHOTOMETRIC_MINISBLACK;
    TIFFGetField(tif.get(), TIFFTAG_IMAGEWIDTH, &width);
    TIFFGetField(tif.get(), TIFFTAG_IMAGELENGTH, &height);
    TIFFGetFieldDefaulted(tif.get(), TIFFTAG_BITSPERSAMPLE, &bits);
    TIFFGetFieldDefaulted(tif.get(), TIFFTAG_SAMPLESPERPIXEL, &samples);
    TIFFGetFieldDefaulted(tif.get(), TIFFTAG_PLANARCONFIG, &planar);
    TIFFGetField(tif.get(), TIFFTAG_PHOTOMETRIC, &photometric);

    if (bits != 8) throw Error(ErrorKind::unsupported_format, "unsupported bit depth " + std::to_string(bits));
    if (planar != PLANARCONFIG_CONTIG || !(samples == 1 || samples == 3 || samples == 4)) {
        throw Error(ErrorKind::unsupported_format, "unsupported TIFF sample layout");
    }
    const bool gray = photometric == PHOTOMETRIC_MINISBLACK || photometric == PHOTOMETRIC_MINISWHITE;
    if ((samples == 1 && !gray) || (samples > 1 && photometric != PHOTOMETRIC_RGB)) {
        throw Error(ErrorKind::unsupported_format, "unsupported TIFF photometric interpretation");
    }
    if (width == 0 || height == 0) throw Error(ErrorKind::unsupported_format, "empty TIFF image");

    DecodedImage out;
    out.pixels = Gray8(static_cast<int>(width), static_cast<int>(height));
    std::vector<std::uint8_t> line(static_cast<std::size_t>(TIFFScanlineSize(tif.get())));
    for (std::uint32_t y = 0; y < height; ++y) {
        if (TIFFReadScanline(tif.get(), line.data(), y, 0) < 0) {
            throw Error(ErrorKind::io, "TIFF scanline read failed in " + path.string());
        }
        auto dst = out.pixels.row(static_cast<int>(y));
        for (std::uint32_t x = 0; x < width; ++x) {
            if (samples == 1) {
                const std::uint8_t v = line[x];
                dst[x] = photometric == PHOTOMETRIC_MINISWHITE ? static_cast<std::uint8_t>(255 - v) : v;
            } else {
                const std::uint8_t* p = line.data() + static_cast<std::size_t>(x) * samples;
                dst[x] = channel_average(p[0], p[1], p[2]);
            }
        }
    }

    float xres = 0.0f;
    std::uint16_t unit = RESUNIT_INCH;
    if (TIFFGetField(tif.get(), TIFFTAG_XRESOLUTION, &xres) && xres > 0.0f) {
        TIFFGetFieldDefaulted(tif.get(), TIFFTAG_RESOLUTIONUNIT, &unit);
        if (unit == RESUNIT_INCH) out.header_scale = 25.4 / static_cast<double>(xres);
        if (unit == RESUNIT_CENTIMETER) out.header_scale = 10.0 / static_cast<double>(xres);
    }
    return out;
}

void encode_tiff(const std::filesystem::path& path, const Gray8& pixels, std::optional<double> mm_per_px) {
    silence_libtiff();
    TiffPtr tif(TIFFOpen(path.string().c_str(), "w"));
    if (!tif) throw Error(ErrorKind::io, "cannot write " + path.string());
    TIFFSetField(tif.get(), TIFFTAG_IMAGEWIDTH, static_cast<std::uint32_t>(pixels.width()));
    TIFFSetField(tif.get(), TIFFTAG_IMAGELENGTH, static_cast<std::uint32_t>(pixels.height()));
    TIFFSetField(tif.get(), TIFFTAG_BITSPERSAMPLE, 8);
    TIFFSetField(tif.get(), TIFFTAG_SAMPLESPERPIXEL, 1);
    TIFFSetField(tif.get(), TIFFTAG_PHOTOMETRIC, PHOTOMETRIC_MINISBLACK);
    TIFFSetField(tif.get(), TIFFTAG_PLANARCONFIG, PLANARCONFIG_CONTIG);
    TIFFSetField(tif.get(), TIFFTAG_COMPRESSION, COMPRESSION_LZW);
    TIFFSetField(tif.get(), TIFFTAG_ROWSPERSTRIP, TIFFDefaultStripSize(tif.get(), 0));
    if (mm_per_px) {
        const float px_per_cm = static_cast<float>(10.0 / *mm_per_px);
        TIFFSetField(tif.get(), TIFFTAG_XRESOLUTION, px_per_cm);
        TIFFSetField(tif.get(), TIFFTAG_YRESOLUTION, px_per_cm);
        TIFFSetField(tif.get(), TIFFTAG_RESOLUTIONUNIT, RESUNIT_CENTIMETER);
    }
    std::vector<std::uint8_t> line(static_cast<std::size_t>(pixels.width()));
    for (int y = 0; y < pixels.height(); ++y) {
        const auto src = pixels.row(y);
        std::copy(src.begin(), src.end(), line.begin());
        if (TIFFWriteScanline(tif.get(), line.data(), static_cast<std::uint32_t>(y), 0) < 0) {
            throw Error(ErrorKind::io, "TIFF scanline write failed in " + path.string());
        }
    }
}

}  // namespace

DecodedImage decode_grayscale(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw Error(ErrorKind::io, "file not found: " + path.string());
    return is_tiff(path) ? decode_tiff(path) : decode_png(path);
}

CalibratedImage load_grayscale(const std::filesystem::path& path, std::optional<double> scale_override) {
    DecodedImage decoded = decode_grayscale(path);
    const std::optional<double> scale = scale_override ? scale_override : decoded.header_scale;
    if (!scale) throw Error(ErrorKind::scale_unavailable, "scale unavailable for " + path.string());
    return CalibratedImage(std::move(decoded.pixels), *scale);
}

void save_grayscale(const std::filesystem::path& path, const Gray8& pixels, std::optional<double> mm_per_px) {
    if (mm_per_px && !(*mm_per_px > 0.0)) throw Error(ErrorKind::invalid_argument, "scale must be positive");
    if (is_tiff(path)) {
        encode_tiff(path, pixels, mm_per_px);
        return;
    }
    if (lower_extension(path) != ".png") {
        throw Error(ErrorKind::unsupported_format, "output must be .png, .tif or .tiff: " + path.string());
    }
    const png_uint_32 ppm = mm_per_px ? static_cast<png_uint_32>(std::lround(1000.0 / *mm_per_px)) : 0;
    write_png(path, pixels.pixels().data(), pixels.width(), pixels.height(), PNG_COLOR_TYPE_GRAY, 1, ppm);
}

void save_grayscale(const std::filesystem::path& path, const CalibratedImage& image) {
    save_grayscale(path, image.pixels(), image.scale());
}

void save_rgb_png(const std::filesystem::path& path, const Rgb8& pixels) {
    static_assert(sizeof(std::array<std::uint8_t, 3>) == 3);
    write_png(path, pixels.pixels().data()->data(), pixels.width(), pixels.height(), PNG_COLOR_TYPE_RGB, 3, 0);
}

Rgb8 load_rgb_png(const std::filesystem::path& path) {
    FilePtr fp(std::fopen(path.string().c_str(), "rb"));
    if (!fp) throw Error(ErrorKind::io, "cannot open " + path.string());
    PngRead raw;
    PngError err;
    if (!read_png_raw(fp.get(), raw, err)) throw Error(ErrorKind::io, std::string("PNG decode failed: ") + err.message);
    if (raw.bit_depth == 16) throw Error(ErrorKind::unsupported_format, "unsupported bit depth 16");
    Rgb8 out(static_cast<int>(raw.width), static_cast<int>(raw.height));
    for (int y = 0; y < out.height(); ++y) {
        const png_bytep src = raw.rows[static_cast<std::size_t>(y)];
        auto dst = out.row(y);
        for (std::size_t x = 0; x < dst.size(); ++x) {
            if (raw.channels == 1) {
                dst[x] = {src[x], src[x], src[x]};
            } else {
                dst[x] = {src[3 * x], src[3 * x + 1], src[3 * x + 2]};
            }
        }
    }
    return out;
}

}  // namespace frp
