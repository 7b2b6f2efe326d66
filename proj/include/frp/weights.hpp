#pragma once

#include <optional>

#include "frp/types.hpp"

namespace frp {

/// kg/m^3.
struct MaterialDensities {
    double fibre = 2600.0;
    double epoxy = 1300.0;

    /// Requires fibre > epoxy > 0.
    void validate() const;
    friend bool operator==(const MaterialDensities&, const MaterialDensities&) = default;
};

/// Two-class Otsu cut over the masked pixels; fibre pixels satisfy v >= threshold.
int global_fibre_threshold(const CalibratedImage& roi, const BinaryMask& mask);

/// Bright pixels (v >= threshold) get the fibre density, the rest of the mask epoxy.
WeightMap assign_global(const CalibratedImage& roi, const BinaryMask& mask, const MaterialDensities& densities,
                        std::optional<int> fibre_threshold = std::nullopt);

/// Sliding-window extremes. A masked pixel is fibre if it is the brightest masked pixel of
/// some window, otherwise epoxy if it is the darkest of some window, otherwise 0. Ties inside
/// a window go to the lowest row-major index. Windows are the placements that fit inside the
/// image; an image smaller than the window is covered by one clipped window.
WeightMap assign_local(const CalibratedImage& roi, const BinaryMask& mask, const MaterialDensities& densities,
                       int window = 7);

/// Share of masked pixels carrying weight 0.
double zero_weight_fraction(const WeightMap& map, const BinaryMask& mask);

}  // namespace frp
