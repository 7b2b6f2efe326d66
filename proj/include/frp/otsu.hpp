#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "frp/types.hpp"

namespace frp {

using Histogram = std::array<std::uint64_t, 256>;

/// Ascending cut values. Class k holds intensities v with levels[k-1] <= v < levels[k].
struct ThresholdSet {
    std::vector<int> levels;
    double between_class_variance = 0.0;

    int class_count() const noexcept { return static_cast<int>(levels.size()) + 1; }
    int classify(int value) const noexcept {
        int k = 0;
        while (k < static_cast<int>(levels.size()) && value >= levels[static_cast<std::size_t>(k)]) ++k;
        return k;
    }
};

Histogram histogram(const Gray8& image, const BinaryMask* mask = nullptr);
int distinct_levels(const Histogram& hist);

inline constexpr int kMaxOtsuClasses = 4;

/// Exhaustive N-class Otsu: maximizes between-class variance over every threshold
/// combination, ties resolved toward the lexicographically lowest set.
/// classes must be in [2, 4]; fewer distinct values than classes is ErrorKind::degenerate_histogram.
ThresholdSet multi_otsu(const Histogram& hist, int classes);
ThresholdSet multi_otsu(const Gray8& image, int classes, const BinaryMask* mask = nullptr);

}  // namespace frp
