#include <algorithm>

#include "frp/reference.hpp"

namespace frp::reference {
namespace {

template <typename Pick>
Gray8 brute_force(const Gray8& image, const morph::DiskKernel& kernel, morph::Border border, std::uint8_t init,
                  Pick pick) {
    const int w = image.width();
    const int h = image.height();
    const int r = kernel.radius();
    Gray8 out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint8_t acc = init;
            for (int dy = -r; dy <= r; ++dy) {
                for (int dx = -r; dx <= r; ++dx) {
                    if (!kernel.contains(dy, dx)) continue;
                    int sx = x + dx;
                    int sy = y + dy;
                    std::uint8_t v = 0;
                    if (image.in_bounds(sx, sy)) {
                        v = image(sx, sy);
                    } else if (border == morph::Border::replicate) {
                        v = image(std::clamp(sx, 0, w - 1), std::clamp(sy, 0, h - 1));
                    }
                    acc = pick(acc, v);
                }
            }
            out(x, y) = acc;
        }
    }
    return out;
}

}  // namespace

Gray8 erode(const Gray8& image, const morph::DiskKernel& kernel, morph::Border border) {
    return brute_force(image, kernel, border, 255, [](auto a, auto b) { return std::min(a, b); });
}

Gray8 dilate(const Gray8& image, const morph::DiskKernel& kernel, morph::Border border) {
    return brute_force(image, kernel, border, 0, [](auto a, auto b) { return std::max(a, b); });
}

Gray8 reconstruct(const Gray8& marker, const Gray8& mask, morph::Polarity polarity) {
    if (!marker.same_shape(mask)) throw Error(ErrorKind::dimension_mismatch, "marker and mask dimensions differ");
    const morph::DiskKernel unit(1);
    Gray8 current = marker;
    while (true) {
        Gray8 next;
        if (polarity == morph::Polarity::by_dilation) {
            next = reference::dilate(current, unit, morph::Border::replicate);
            for (std::size_t i = 0; i < next.size(); ++i) next[i] = std::min(next[i], mask[i]);
        } else {
            next = reference::erode(current, unit, morph::Border::replicate);
            for (std::size_t i = 0; i < next.size(); ++i) next[i] = std::max(next[i], mask[i]);
        }
        if (next == current) return current;
        current = std::move(next);
    }
}

}  // namespace frp::reference
