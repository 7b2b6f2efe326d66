#include "frp/weights.hpp"

#include <cstdint>
#include <limits>
#include <vector>

#include "frp/otsu.hpp"

namespace frp {
namespace {

constexpr int kIndexBits = 40;
constexpr std::uint64_t kIndexMask = (std::uint64_t{1} << kIndexBits) - 1;
constexpr std::uint64_t kNoMin = std::numeric_limits<std::uint64_t>::max();

void check_inputs(const CalibratedImage& roi, const BinaryMask& mask) {
    if (roi.width() != mask.width() || roi.height() != mask.height()) {
        throw Error(ErrorKind::dimension_mismatch, "mask dimensions do not match image");
    }
    if (mask.none()) throw Error(ErrorKind::empty_mask, "mask is empty");
}

// van Herk / Gil-Werman running extreme of width k over n values; writes n - k + 1 results.
template <typename Better>
void running_extreme(const std::uint64_t* in, std::size_t stride, int n, int k, std::uint64_t* out,
                     std::size_t out_stride, std::vector<std::uint64_t>& prefix, std::vector<std::uint64_t>& suffix,
                     Better better) {
    prefix.resize(static_cast<std::size_t>(n));
    suffix.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const std::uint64_t v = in[static_cast<std::size_t>(i) * stride];
        prefix[static_cast<std::size_t>(i)] =
            (i % k == 0) ? v : better(prefix[static_cast<std::size_t>(i - 1)], v);
    }
    for (int i = n - 1; i >= 0; --i) {
        const std::uint64_t v = in[static_cast<std::size_t>(i) * stride];
        suffix[static_cast<std::size_t>(i)] =
            (i == n - 1 || (i + 1) % k == 0) ? v : better(suffix[static_cast<std::size_t>(i + 1)], v);
    }
    for (int i = 0; i + k <= n; ++i) {
        out[static_cast<std::size_t>(i) * out_stride] =
            better(suffix[static_cast<std::size_t>(i)], prefix[static_cast<std::size_t>(i + k - 1)]);
    }
}

// Window extremes of `keys` for every placement; result is (w - kw + 1) x (h - kh + 1).
template <typename Better>
std::vector<std::uint64_t> window_extremes(const std::vector<std::uint64_t>& keys, int w, int h, int kw, int kh,
                                           Better better) {
    const int ow = w - kw + 1;
    const int oh = h - kh + 1;
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(ow) * static_cast<std::size_t>(h));
#pragma omp parallel
    {
        std::vector<std::uint64_t> prefix;
        std::vector<std::uint64_t> suffix;
#pragma omp for schedule(static)
        for (int y = 0; y < h; ++y) {
            running_extreme(keys.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(w), 1, w, kw,
                            rows.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(ow), 1, prefix,
                            suffix, better);
        }
    }
    std::vector<std::uint64_t> out(static_cast<std::size_t>(ow) * static_cast<std::size_t>(oh));
#pragma omp parallel
    {
        std::vector<std::uint64_t> prefix;
        std::vector<std::uint64_t> suffix;
#pragma omp for schedule(static)
        for (int x = 0; x < ow; ++x) {
            running_extreme(rows.data() + x, static_cast<std::size_t>(ow), h, kh, out.data() + x,
                            static_cast<std::size_t>(ow), prefix, suffix, better);
        }
    }
    return out;
}

}  // namespace

void MaterialDensities::validate() const {
    if (!(epoxy > 0.0) || !(fibre > epoxy) || !std::isfinite(fibre)) {
        throw Error(ErrorKind::invalid_argument, "densities must satisfy fibre > epoxy > 0");
    }
}

int global_fibre_threshold(const CalibratedImage& roi, const BinaryMask& mask) {
    check_inputs(roi, mask);
    return multi_otsu(roi.pixels(), 2, &mask).levels.front();
}

WeightMap assign_global(const CalibratedImage& roi, const BinaryMask& mask, const MaterialDensities& densities,
                        std::optional<int> fibre_threshold) {
    densities.validate();
    check_inputs(roi, mask);
    const int t = fibre_threshold ? *fibre_threshold : global_fibre_threshold(roi, mask);
    WeightMap out(roi.width(), roi.height(), 0.0);
    const Gray8& px = roi.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) {
        if (mask[i]) out[i] = px[i] >= t ? densities.fibre : densities.epoxy;
    }
    return out;
}

WeightMap assign_local(const CalibratedImage& roi, const BinaryMask& mask, const MaterialDensities& densities,
                       int window) {
    if (window < 3 || window % 2 == 0) throw Error(ErrorKind::invalid_argument, "window must be odd and >= 3");
    densities.validate();
    check_inputs(roi, mask);
    const int w = roi.width();
    const int h = roi.height();
    const Gray8& px = roi.pixels();
    if (px.size() > kIndexMask) throw Error(ErrorKind::invalid_argument, "image too large for local weighting");

    std::vector<std::uint64_t> max_keys(px.size());
    std::vector<std::uint64_t> min_keys(px.size());
    for (std::size_t i = 0; i < px.size(); ++i) {
        const std::uint64_t v = std::uint64_t{px[i]} << kIndexBits;
        max_keys[i] = mask[i] ? (v | (kIndexMask - i)) : 0;
        min_keys[i] = mask[i] ? (v | i) : kNoMin;
    }
    const int kw = std::min(window, w);
    const int kh = std::min(window, h);
    const auto maxima =
        window_extremes(max_keys, w, h, kw, kh, [](std::uint64_t a, std::uint64_t b) { return a > b ? a : b; });
    const auto minima =
        window_extremes(min_keys, w, h, kw, kh, [](std::uint64_t a, std::uint64_t b) { return a < b ? a : b; });

    std::vector<std::uint8_t> role(px.size(), 0);  // 1 epoxy, 2 fibre
    for (std::uint64_t k : minima) {
        if (k != kNoMin) role[k & kIndexMask] = 1;
    }
    for (std::uint64_t k : maxima) {
        if (k != 0) role[kIndexMask - (k & kIndexMask)] = 2;
    }
    WeightMap out(w, h, 0.0);
    for (std::size_t i = 0; i < px.size(); ++i) {
        if (role[i] == 2) {
            out[i] = densities.fibre;
        } else if (role[i] == 1) {
            out[i] = densities.epoxy;
        }
    }
    return out;
}

double zero_weight_fraction(const WeightMap& map, const BinaryMask& mask) {
    if (!map.same_shape(mask.width(), mask.height())) {
        throw Error(ErrorKind::dimension_mismatch, "weight map does not match mask");
    }
    std::size_t members = 0;
    std::size_t zeros = 0;
    for (std::size_t i = 0; i < map.size(); ++i) {
        if (!mask[i]) continue;
        ++members;
        if (map[i] == 0.0) ++zeros;
    }
    if (members == 0) throw Error(ErrorKind::empty_mask, "mask is empty");
    return static_cast<double>(zeros) / static_cast<double>(members);
}

}  // namespace frp
