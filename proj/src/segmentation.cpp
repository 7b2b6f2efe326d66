#include "frp/segmentation.hpp"

#include <vector>

#include "frp/morphology.hpp"
#include "frp/otsu.hpp"

namespace frp {
namespace {

// Labels 8-connected foreground components in raster order; returns sizes indexed by label-1.
std::vector<std::size_t> label_components(const BinaryMask& mask, std::vector<int>& labels) {
    const int w = mask.width();
    const int h = mask.height();
    labels.assign(mask.size(), 0);
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < mask.size(); ++start) {
        if (!mask[start] || labels[start]) continue;
        const int label = static_cast<int>(sizes.size()) + 1;
        std::size_t size = 0;
        labels[start] = label;
        stack.push_back(start);
        while (!stack.empty()) {
            const std::size_t p = stack.back();
            stack.pop_back();
            ++size;
            const int px = static_cast<int>(p % static_cast<std::size_t>(w));
            const int py = static_cast<int>(p / static_cast<std::size_t>(w));
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    const int qx = px + dx;
                    const int qy = py + dy;
                    if (qx < 0 || qy < 0 || qx >= w || qy >= h) continue;
                    const std::size_t q = static_cast<std::size_t>(qy) * static_cast<std::size_t>(w) +
                                          static_cast<std::size_t>(qx);
                    if (mask[q] && !labels[q]) {
                        labels[q] = label;
                        stack.push_back(q);
                    }
                }
            }
        }
        sizes.push_back(size);
    }
    return sizes;
}

// Lowest grey level of the foreground: the first class whose mean lies above the midpoint
// between the darkest and brightest class means. Splits inside the background then stay background.
int foreground_cut(const Histogram& hist, const ThresholdSet& cuts) {
    std::vector<int> edges{0};
    edges.insert(edges.end(), cuts.levels.begin(), cuts.levels.end());
    edges.push_back(256);
    std::vector<double> means;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        double w = 0.0;
        double s = 0.0;
        for (int v = edges[k]; v < edges[k + 1]; ++v) {
            w += static_cast<double>(hist[static_cast<std::size_t>(v)]);
            s += static_cast<double>(hist[static_cast<std::size_t>(v)]) * v;
        }
        means.push_back(s / w);
    }
    const double mid = 0.5 * (means.front() + means.back());
    for (std::size_t k = 1; k < means.size(); ++k) {
        if (means[k] > mid) return edges[k];
    }
    return edges[means.size() - 1];
}

void require_same_shape(const CalibratedImage& image, const BinaryMask& mask) {
    if (image.width() != mask.width() || image.height() != mask.height()) {
        throw Error(ErrorKind::dimension_mismatch, "mask dimensions do not match image");
    }
}

}  // namespace

void SegmentationConfig::validate() const {
    if (rough_radius < 1) throw Error(ErrorKind::invalid_argument, "rough_radius must be >= 1");
    if (fine_close_radius < 1 || fine_open_radius < fine_close_radius) {
        throw Error(ErrorKind::invalid_argument, "require fine_open_radius >= fine_close_radius >= 1");
    }
    if (otsu_classes < 2 || otsu_classes > 4) throw Error(ErrorKind::invalid_argument, "otsu_classes must be 2..4");
}

BinaryMask rough_segment(const CalibratedImage& image, const SegmentationConfig& config) {
    config.validate();
    const Gray8 flat = morph::open_close_reconstruction(image.pixels(), config.rough_radius);
    const Histogram hist = histogram(flat);
    const int distinct = distinct_levels(hist);
    if (distinct < 2) throw Error(ErrorKind::degenerate_histogram, "degenerate histogram");
    // Flattening can leave fewer grey levels than requested classes.
    const ThresholdSet cuts = multi_otsu(hist, std::min(config.otsu_classes, distinct));
    BinaryMask mask = BinaryMask::threshold(flat, foreground_cut(hist, cuts));
    if (mask.none()) throw Error(ErrorKind::empty_result, "empty result");
    return mask;
}

BinaryMask fine_segment(const CalibratedImage& image, const BinaryMask& rough, const SegmentationConfig& config) {
    config.validate();
    require_same_shape(image, rough);
    if (rough.none()) throw Error(ErrorKind::empty_mask, "rough mask is empty");
    const Gray8 filtered = morph::close_open_reconstruction_asym(rough.to_gray(), config.fine_close_radius,
                                                                 config.fine_open_radius, morph::Border::zero);
    BinaryMask mask = BinaryMask::threshold(filtered, 128);
    if (config.keep_largest_component) mask = largest_component(mask);
    if (mask.none()) throw Error(ErrorKind::empty_result, "empty result");
    return mask;
}

CalibratedImage apply_mask(const CalibratedImage& image, const BinaryMask& mask) {
    require_same_shape(image, mask);
    Gray8 out = image.pixels();
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!mask[i]) out[i] = 0;
    }
    return CalibratedImage(std::move(out), image.scale());
}

BinaryMask largest_component(const BinaryMask& mask) {
    std::vector<int> labels;
    const auto sizes = label_components(mask, labels);
    BinaryMask out(mask.width(), mask.height());
    if (sizes.empty()) return out;
    // First maximum wins, so ties go to the component met first in raster order.
    int best = 1;
    for (std::size_t i = 1; i < sizes.size(); ++i) {
        if (sizes[i] > sizes[static_cast<std::size_t>(best - 1)]) best = static_cast<int>(i) + 1;
    }
    for (std::size_t i = 0; i < labels.size(); ++i) out.set(i, labels[i] == best);
    return out;
}

std::size_t component_count(const BinaryMask& mask) {
    std::vector<int> labels;
    return label_components(mask, labels).size();
}

double void_fraction(const BinaryMask& mask) {
    const int w = mask.width();
    const int h = mask.height();
    // Background reachable from the frame through 4-neighbours is outside; the rest are holes.
    std::vector<std::uint8_t> outside(mask.size(), 0);
    std::vector<std::size_t> stack;
    auto seed = [&](int x, int y) {
        const std::size_t i = static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x);
        if (!mask[i] && !outside[i]) {
            outside[i] = 1;
            stack.push_back(i);
        }
    };
    for (int x = 0; x < w; ++x) {
        seed(x, 0);
        seed(x, h - 1);
    }
    for (int y = 0; y < h; ++y) {
        seed(0, y);
        seed(w - 1, y);
    }
    while (!stack.empty()) {
        const std::size_t p = stack.back();
        stack.pop_back();
        const int px = static_cast<int>(p % static_cast<std::size_t>(w));
        const int py = static_cast<int>(p / static_cast<std::size_t>(w));
        if (px > 0) seed(px - 1, py);
        if (px < w - 1) seed(px + 1, py);
        if (py > 0) seed(px, py - 1);
        if (py < h - 1) seed(px, py + 1);
    }
    std::size_t holes = 0;
    std::size_t members = 0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) {
            ++members;
        } else if (!outside[i]) {
            ++holes;
        }
    }
    if (members + holes == 0) return 0.0;
    return static_cast<double>(holes) / static_cast<double>(members + holes);
}

bool touches_border(const BinaryMask& mask) {
    const int w = mask.width();
    const int h = mask.height();
    for (int x = 0; x < w; ++x) {
        if (mask(x, 0) || mask(x, h - 1)) return true;
    }
    for (int y = 0; y < h; ++y) {
        if (mask(0, y) || mask(w - 1, y)) return true;
    }
    return false;
}

}  // namespace frp
