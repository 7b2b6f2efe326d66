#include "frp/morphology.hpp"

#include <cmath>
#include <cstdint>
#include <functional>

namespace frp::morph {
namespace {

struct MinOp {
    static constexpr std::uint8_t identity = 255;
    std::uint8_t operator()(std::uint8_t a, std::uint8_t b) const noexcept { return a < b ? a : b; }
};

struct MaxOp {
    static constexpr std::uint8_t identity = 0;
    std::uint8_t operator()(std::uint8_t a, std::uint8_t b) const noexcept { return a > b ? a : b; }
};

// Running extreme over [x-h, x+h] (van Herk / Gil-Werman), three comparisons per pixel
// independent of h. Scratch buffers are sized by the caller to width + 2h.
template <typename Op>
void running_extreme(std::span<const std::uint8_t> src, int h, Border border, std::span<std::uint8_t> out,
                     std::vector<std::uint8_t>& padded, std::vector<std::uint8_t>& fwd,
                     std::vector<std::uint8_t>& bwd) {
    const Op op;
    const int w = static_cast<int>(src.size());
    if (h == 0) {
        std::copy(src.begin(), src.end(), out.begin());
        return;
    }
    const int n = w + 2 * h;
    const int k = 2 * h + 1;
    padded.resize(static_cast<std::size_t>(n));
    fwd.resize(static_cast<std::size_t>(n));
    bwd.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int sx = i - h;
        if (sx >= 0 && sx < w) {
            padded[i] = src[sx];
        } else if (border == Border::replicate) {
            padded[i] = src[std::clamp(sx, 0, w - 1)];
        } else {
            padded[i] = 0;
        }
    }
    for (int i = 0; i < n; ++i) fwd[i] = (i % k == 0) ? padded[i] : op(fwd[i - 1], padded[i]);
    for (int i = n - 1; i >= 0; --i) {
        bwd[i] = (i == n - 1 || (i + 1) % k == 0) ? padded[i] : op(bwd[i + 1], padded[i]);
    }
    for (int x = 0; x < w; ++x) out[x] = op(bwd[x], fwd[x + 2 * h]);
}

// Disk filtering decomposed into one 1D running extreme per kernel row; rows in parallel.
template <typename Op>
Gray8 disk_filter(const Gray8& image, const DiskKernel& kernel, Border border) {
    const int w = image.width();
    const int h = image.height();
    const int r = kernel.radius();
    if (r == 0) return image;
    Gray8 out(w, h);
    const Op op;
    // Outside rows read 0: erosion collapses to 0, dilation is unaffected.
    const bool zero_kills = border == Border::zero && std::is_same_v<Op, MinOp>;

#pragma omp parallel
    {
        std::vector<std::uint8_t> acc(static_cast<std::size_t>(w));
        std::vector<std::uint8_t> tmp(static_cast<std::size_t>(w));
        std::vector<std::uint8_t> padded, fwd, bwd;
#pragma omp for schedule(static)
        for (int y = 0; y < h; ++y) {
            std::fill(acc.begin(), acc.end(), Op::identity);
            bool killed = false;
            for (int dy = -r; dy <= r && !killed; ++dy) {
                int sy = y + dy;
                if (sy < 0 || sy >= h) {
                    if (border == Border::replicate) {
                        sy = std::clamp(sy, 0, h - 1);
                    } else if (zero_kills) {
                        killed = true;
                        break;
                    } else {
                        continue;
                    }
                }
                running_extreme<Op>(image.row(sy), kernel.half_width(dy), border, tmp, padded, fwd, bwd);
                for (int x = 0; x < w; ++x) acc[x] = op(acc[x], tmp[x]);
            }
            auto dst = out.row(y);
            if (killed) {
                std::fill(dst.begin(), dst.end(), 0);
            } else {
                std::copy(acc.begin(), acc.end(), dst.begin());
            }
        }
    }
    return out;
}

void require_same_shape(const Gray8& a, const Gray8& b) {
    if (!a.same_shape(b)) throw Error(ErrorKind::dimension_mismatch, "marker and mask dimensions differ");
}

// Hybrid raster / anti-raster / FIFO reconstruction by dilation, 4-connectivity.
Gray8 reconstruct_by_dilation(const Gray8& marker, const Gray8& mask) {
    const int w = mask.width();
    const int h = mask.height();
    Gray8 j = marker;

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint8_t v = j(x, y);
            if (x > 0) v = std::max(v, j(x - 1, y));
            if (y > 0) v = std::max(v, j(x, y - 1));
            j(x, y) = std::min(v, mask(x, y));
        }
    }

    std::vector<std::size_t> fifo;
    for (int y = h - 1; y >= 0; --y) {
        for (int x = w - 1; x >= 0; --x) {
            std::uint8_t v = j(x, y);
            if (x < w - 1) v = std::max(v, j(x + 1, y));
            if (y < h - 1) v = std::max(v, j(x, y + 1));
            v = std::min(v, mask(x, y));
            j(x, y) = v;
            const bool grow_right = x < w - 1 && j(x + 1, y) < v && j(x + 1, y) < mask(x + 1, y);
            const bool grow_down = y < h - 1 && j(x, y + 1) < v && j(x, y + 1) < mask(x, y + 1);
            if (grow_right || grow_down) fifo.push_back(j.index(x, y));
        }
    }

    for (std::size_t head = 0; head < fifo.size(); ++head) {
        const std::size_t p = fifo[head];
        const int px = static_cast<int>(p % static_cast<std::size_t>(w));
        const int py = static_cast<int>(p / static_cast<std::size_t>(w));
        const std::uint8_t jp = j[p];
        const int nx[4] = {px - 1, px + 1, px, px};
        const int ny[4] = {py, py, py - 1, py + 1};
        for (int k = 0; k < 4; ++k) {
            if (!j.in_bounds(nx[k], ny[k])) continue;
            const std::size_t q = j.index(nx[k], ny[k]);
            if (j[q] < jp && mask[q] != j[q]) {
                j[q] = std::min(jp, mask[q]);
                fifo.push_back(q);
            }
        }
    }
    return j;
}

}  // namespace

DiskKernel::DiskKernel(int radius) : radius_(radius) {
    if (radius < 0) throw Error(ErrorKind::invalid_argument, "kernel radius must be non-negative");
    half_widths_.resize(static_cast<std::size_t>(2 * radius + 1));
    for (int dy = -radius; dy <= radius; ++dy) {
        int hw = 0;
        while (contains(dy, hw + 1)) ++hw;
        half_widths_[static_cast<std::size_t>(dy + radius)] = hw;
    }
}

Gray8 erode(const Gray8& image, const DiskKernel& kernel, Border border) {
    return disk_filter<MinOp>(image, kernel, border);
}

Gray8 dilate(const Gray8& image, const DiskKernel& kernel, Border border) {
    return disk_filter<MaxOp>(image, kernel, border);
}

Gray8 morph_apply(const Gray8& image, MorphOp op, const DiskKernel& kernel, Border border) {
    switch (op) {
        case MorphOp::erode:
            return erode(image, kernel, border);
        case MorphOp::dilate:
            return dilate(image, kernel, border);
        case MorphOp::open:
            return dilate(erode(image, kernel, border), kernel, border);
        case MorphOp::close:
            return erode(dilate(image, kernel, border), kernel, border);
    }
    throw Error(ErrorKind::invalid_argument, "unknown morphological operation");
}

BinaryMask morph_apply(const BinaryMask& mask, MorphOp op, const DiskKernel& kernel) {
    return BinaryMask(morph_apply(mask.bits(), op, kernel, Border::zero));
}

BinaryMask erode_unit(const BinaryMask& mask) {
    const int w = mask.width();
    const int h = mask.height();
    BinaryMask out(w, h);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const bool keep = mask(x, y) && mask.contains(x - 1, y) && mask.contains(x + 1, y) &&
                              mask.contains(x, y - 1) && mask.contains(x, y + 1);
            out.set(x, y, keep);
        }
    }
    return out;
}

Gray8 invert(const Gray8& image) {
    Gray8 out = image;
    for (auto& v : out.pixels()) v = static_cast<std::uint8_t>(255 - v);
    return out;
}

Gray8 reconstruct(const Gray8& marker, const Gray8& mask, Polarity polarity) {
    require_same_shape(marker, mask);
    for (std::size_t i = 0; i < mask.size(); ++i) {
        const bool ok = polarity == Polarity::by_dilation ? marker[i] <= mask[i] : marker[i] >= mask[i];
        if (!ok) {
            throw Error(ErrorKind::precondition, polarity == Polarity::by_dilation
                                                     ? "reconstruction marker exceeds mask"
                                                     : "reconstruction marker below mask");
        }
    }
    if (polarity == Polarity::by_dilation) return reconstruct_by_dilation(marker, mask);
    return invert(reconstruct_by_dilation(invert(marker), invert(mask)));
}

BinaryMask reconstruct(const BinaryMask& marker, const BinaryMask& mask) {
    return BinaryMask(reconstruct(marker.bits(), mask.bits(), Polarity::by_dilation));
}

Gray8 opening_by_reconstruction(const Gray8& image, const DiskKernel& kernel, Border border) {
    return reconstruct(erode(image, kernel, border), image, Polarity::by_dilation);
}

Gray8 closing_by_reconstruction(const Gray8& image, const DiskKernel& kernel, Border border) {
    return reconstruct(dilate(image, kernel, border), image, Polarity::by_erosion);
}

Gray8 open_close_reconstruction(const Gray8& image, int radius, Border border) {
    if (radius < 1) throw Error(ErrorKind::invalid_argument, "reconstruction radius must be >= 1");
    const DiskKernel kernel(radius);
    return closing_by_reconstruction(opening_by_reconstruction(image, kernel, border), kernel, border);
}

Gray8 close_open_reconstruction_asym(const Gray8& image, int close_radius, int open_radius, Border border) {
    if (close_radius < 1 || open_radius < close_radius) {
        throw Error(ErrorKind::invalid_argument, "require open_radius >= close_radius >= 1");
    }
    const Gray8 closed = closing_by_reconstruction(image, DiskKernel(close_radius), border);
    return morph_apply(closed, MorphOp::open, DiskKernel(open_radius), border);
}

}  // namespace frp::morph
