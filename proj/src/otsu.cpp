#include "frp/otsu.hpp"

namespace frp {

Histogram histogram(const Gray8& image, const BinaryMask* mask) {
    if (mask && !image.same_shape(mask->width(), mask->height())) {
        throw Error(ErrorKind::dimension_mismatch, "histogram mask does not match image");
    }
    Histogram hist{};
    for (std::size_t i = 0; i < image.size(); ++i) {
        if (!mask || (*mask)[i]) ++hist[image[i]];
    }
    return hist;
}

int distinct_levels(const Histogram& hist) {
    int n = 0;
    for (auto c : hist) n += c > 0 ? 1 : 0;
    return n;
}

ThresholdSet multi_otsu(const Histogram& hist, int classes) {
    if (classes < 2 || classes > kMaxOtsuClasses) {
        throw Error(ErrorKind::invalid_argument, "multi-Otsu supports 2 to 4 classes");
    }
    if (distinct_levels(hist) < classes) throw Error(ErrorKind::degenerate_histogram, "degenerate histogram");

    // Prefix sums over [0, i): counts and intensity mass.
    std::array<double, 257> count{};
    std::array<double, 257> mass{};
    for (int i = 0; i < 256; ++i) {
        count[i + 1] = count[i] + static_cast<double>(hist[i]);
        mass[i + 1] = mass[i] + static_cast<double>(hist[i]) * i;
    }
    // S^2 / W for the class [a, b); -1 flags an empty class.
    auto term = [&](int a, int b) {
        const double w = count[b] - count[a];
        if (w <= 0.0) return -1.0;
        const double s = mass[b] - mass[a];
        return s * s / w;
    };

    double best = -1.0;
    std::vector<int> best_levels;
    std::vector<int> cuts(static_cast<std::size_t>(classes - 1));

    // Enumerate ascending cut tuples in lexicographic order; strict > keeps the lowest on ties.
    auto search = [&](auto&& self, int depth, int lo, double partial) -> void {
        const int remaining = classes - 1 - depth;
        if (remaining == 0) {
            const double last = term(lo, 256);
            if (last < 0.0) return;
            const double total = partial + last;
            if (total > best) {
                best = total;
                best_levels = cuts;
            }
            return;
        }
        const int start = depth == 0 ? 0 : lo;
        for (int t = start + 1; t <= 256 - remaining; ++t) {
            const double piece = term(start, t);
            if (piece < 0.0) continue;
            cuts[static_cast<std::size_t>(depth)] = t;
            self(self, depth + 1, t, partial + piece);
        }
    };
    search(search, 0, 0, 0.0);

    const double n = count[256];
    const double mean = mass[256] / n;
    return ThresholdSet{best_levels, best / n - mean * mean};
}

ThresholdSet multi_otsu(const Gray8& image, int classes, const BinaryMask* mask) {
    return multi_otsu(histogram(image, mask), classes);
}

}  // namespace frp
