#include <algorithm>

#include "frp/reference.hpp"

namespace frp::reference {

WeightMap assign_local(const CalibratedImage& roi, const BinaryMask& mask, const MaterialDensities& densities,
                       int window) {
    if (window < 3 || window % 2 == 0) throw Error(ErrorKind::invalid_argument, "window must be odd and >= 3");
    densities.validate();
    if (roi.width() != mask.width() || roi.height() != mask.height()) {
        throw Error(ErrorKind::dimension_mismatch, "mask dimensions do not match image");
    }
    if (mask.none()) throw Error(ErrorKind::empty_mask, "mask is empty");
    const int w = roi.width();
    const int h = roi.height();
    const int kw = std::min(window, w);
    const int kh = std::min(window, h);
    const Gray8& px = roi.pixels();
    std::vector<bool> fibre(px.size(), false);
    std::vector<bool> epoxy(px.size(), false);
    for (int y0 = 0; y0 + kh <= h; ++y0) {
        for (int x0 = 0; x0 + kw <= w; ++x0) {
            long best_max = -1;
            long best_min = -1;
            for (int y = y0; y < y0 + kh; ++y) {
                for (int x = x0; x < x0 + kw; ++x) {
                    const std::size_t i = px.index(x, y);
                    if (!mask[i]) continue;
                    const auto better_max = [&](long b) {
                        return px[i] > px[static_cast<std::size_t>(b)] ||
                               (px[i] == px[static_cast<std::size_t>(b)] && static_cast<long>(i) < b);
                    };
                    const auto better_min = [&](long b) {
                        return px[i] < px[static_cast<std::size_t>(b)] ||
                               (px[i] == px[static_cast<std::size_t>(b)] && static_cast<long>(i) < b);
                    };
                    if (best_max < 0 || better_max(best_max)) best_max = static_cast<long>(i);
                    if (best_min < 0 || better_min(best_min)) best_min = static_cast<long>(i);
                }
            }
            if (best_max >= 0) fibre[static_cast<std::size_t>(best_max)] = true;
            if (best_min >= 0) epoxy[static_cast<std::size_t>(best_min)] = true;
        }
    }
    WeightMap out(w, h, 0.0);
    for (std::size_t i = 0; i < px.size(); ++i) {
        if (fibre[i]) {
            out[i] = densities.fibre;
        } else if (epoxy[i]) {
            out[i] = densities.epoxy;
        }
    }
    return out;
}

}  // namespace frp::reference
