#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace frp {

enum class ErrorKind {
    io,
    unsupported_format,
    scale_unavailable,
    invalid_argument,
    out_of_bounds,
    degenerate_histogram,
    empty_mask,
    empty_result,
    dimension_mismatch,
    precondition,
    centric_load,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Row-major 2D buffer. Pixel (x, y) is column x, row y; y grows downward.
template <typename T>
class Raster {
public:
    using value_type = T;

    Raster() = default;
    Raster(int width, int height, T fill = T{})
        : width_(width), height_(height) {
        if (width < 1 || height < 1) {
            throw Error(ErrorKind::invalid_argument, "raster dimensions must be positive");
        }
        data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    bool in_bounds(int x, int y) const noexcept {
        return x >= 0 && y >= 0 && x < width_ && y < height_;
    }
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    T& operator()(int x, int y) noexcept { return data_[index(x, y)]; }
    const T& operator()(int x, int y) const noexcept { return data_[index(x, y)]; }
    T& operator[](std::size_t i) noexcept { return data_[i]; }
    const T& operator[](std::size_t i) const noexcept { return data_[i]; }

    std::span<T> row(int y) noexcept { return {data_.data() + index(0, y), static_cast<std::size_t>(width_)}; }
    std::span<const T> row(int y) const noexcept {
        return {data_.data() + index(0, y), static_cast<std::size_t>(width_)};
    }
    std::span<T> pixels() noexcept { return data_; }
    std::span<const T> pixels() const noexcept { return data_; }

    bool same_shape(int width, int height) const noexcept { return width_ == width && height_ == height; }
    template <typename U>
    bool same_shape(const Raster<U>& other) const noexcept {
        return same_shape(other.width(), other.height());
    }

    friend bool operator==(const Raster&, const Raster&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

using Gray8 = Raster<std::uint8_t>;
using Rgb8 = Raster<std::array<std::uint8_t, 3>>;

/// Per-pixel densities in kg/m^3; 0 marks invalid or outside the ROI.
using WeightMap = Raster<double>;

/// Membership of the analyzed cross-section. Stored as 0/1 bytes.
class BinaryMask {
public:
    BinaryMask() = default;
    BinaryMask(int width, int height, bool fill = false) : bits_(width, height, fill ? 1 : 0) {}
    /// Any nonzero value becomes a member.
    explicit BinaryMask(const Gray8& values) : bits_(values) {
        for (auto& v : bits_.pixels()) v = v ? 1 : 0;
    }

    static BinaryMask threshold(const Gray8& image, int level) {
        BinaryMask m(image.width(), image.height());
        for (std::size_t i = 0; i < image.size(); ++i) m.bits_[i] = image[i] >= level ? 1 : 0;
        return m;
    }

    int width() const noexcept { return bits_.width(); }
    int height() const noexcept { return bits_.height(); }
    std::size_t size() const noexcept { return bits_.size(); }

    bool operator()(int x, int y) const noexcept { return bits_(x, y) != 0; }
    bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
    bool contains(int x, int y) const noexcept { return bits_.in_bounds(x, y) && bits_(x, y) != 0; }
    void set(int x, int y, bool v) noexcept { bits_(x, y) = v ? 1 : 0; }
    void set(std::size_t i, bool v) noexcept { bits_[i] = v ? 1 : 0; }

    std::size_t count() const noexcept {
        return static_cast<std::size_t>(std::count(bits_.pixels().begin(), bits_.pixels().end(), 1));
    }
    bool none() const noexcept {
        return std::none_of(bits_.pixels().begin(), bits_.pixels().end(), [](auto v) { return v != 0; });
    }

    const Gray8& bits() const noexcept { return bits_; }
    Gray8& bits() noexcept { return bits_; }

    /// 0 / 255 rendering, the form grayscale morphology expects.
    Gray8 to_gray() const {
        Gray8 g(width(), height());
        for (std::size_t i = 0; i < size(); ++i) g[i] = bits_[i] ? 255 : 0;
        return g;
    }

    friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

private:
    Gray8 bits_;
};

/// 8-bit grayscale raster with its physical scale.
class CalibratedImage {
public:
    CalibratedImage() = default;
    CalibratedImage(Gray8 pixels, double mm_per_px) : pixels_(std::move(pixels)), scale_(mm_per_px) {
        if (pixels_.empty()) throw Error(ErrorKind::invalid_argument, "image has no pixels");
        if (!(scale_ > 0.0) || !std::isfinite(scale_)) {
            throw Error(ErrorKind::invalid_argument, "scale must be a positive finite mm-per-pixel value");
        }
    }

    int width() const noexcept { return pixels_.width(); }
    int height() const noexcept { return pixels_.height(); }
    double scale() const noexcept { return scale_; }
    const Gray8& pixels() const noexcept { return pixels_; }

private:
    Gray8 pixels_;
    double scale_ = 0.0;
};

/// Pixel-space position; x is the column, y the row (downward). Pixel centres sit on integers.
struct PointPx {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const PointPx&, const PointPx&) = default;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

}  // namespace frp
