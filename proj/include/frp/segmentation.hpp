#pragma once

#include "frp/types.hpp"

namespace frp {

/// Kernel radii are in pixels and sized for full-resolution micrographs of a rebar cut.
struct SegmentationConfig {
    int rough_radius = 40;
    int fine_close_radius = 10;
    int fine_open_radius = 15;
    int otsu_classes = 3;
    bool keep_largest_component = true;

    void validate() const;
    friend bool operator==(const SegmentationConfig&, const SegmentationConfig&) = default;
};

/// Texture-flattening open/close reconstruction followed by multi-Otsu. Classes whose mean is
/// nearer the brightest class than the darkest one are foreground. Side fibres survive this stage.
BinaryMask rough_segment(const CalibratedImage& image, const SegmentationConfig& config);

/// Asymmetric close/open on the rough mask, then (optionally) the largest 8-connected part.
BinaryMask fine_segment(const CalibratedImage& image, const BinaryMask& rough, const SegmentationConfig& config);

/// Pixels outside the mask become 0.
CalibratedImage apply_mask(const CalibratedImage& image, const BinaryMask& mask);

BinaryMask largest_component(const BinaryMask& mask);
std::size_t component_count(const BinaryMask& mask);

/// Fraction of the filled section occupied by enclosed holes.
double void_fraction(const BinaryMask& mask);

bool touches_border(const BinaryMask& mask);

}  // namespace frp
