#pragma once

#include <filesystem>
#include <optional>

#include "frp/types.hpp"

namespace frp {

/// Decoded raster plus whatever physical resolution the file header declared.
struct DecodedImage {
    Gray8 pixels;
    std::optional<double> header_scale;  // mm per pixel
};

/// Decode an 8-bit PNG or TIFF. RGB(A) input is reduced by unweighted channel average.
DecodedImage decode_grayscale(const std::filesystem::path& path);

/// Scale resolution order: override, then header metadata, else ErrorKind::scale_unavailable.
CalibratedImage load_grayscale(const std::filesystem::path& path,
                               std::optional<double> scale_override = std::nullopt);

/// Writes PNG or TIFF (chosen by extension) and records the scale in the header when given.
void save_grayscale(const std::filesystem::path& path, const Gray8& pixels,
                    std::optional<double> mm_per_px = std::nullopt);
void save_grayscale(const std::filesystem::path& path, const CalibratedImage& image);

void save_rgb_png(const std::filesystem::path& path, const Rgb8& pixels);
Rgb8 load_rgb_png(const std::filesystem::path& path);

}  // namespace frp
