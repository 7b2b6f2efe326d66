#pragma once

// Straightforward serial versions of the data-parallel kernels. They follow the textbook
// definitions literally and exist to check the optimized kernels bit-for-bit and to give
// the benchmark a baseline. Not linked into the CLI.

#include "frp/morphology.hpp"
#include "frp/weights.hpp"

namespace frp::reference {

/// Min / max over the full disk footprint, pixel by pixel.
Gray8 erode(const Gray8& image, const morph::DiskKernel& kernel, morph::Border border);
Gray8 dilate(const Gray8& image, const morph::DiskKernel& kernel, morph::Border border);

/// Repeat one clipped disk(1) dilation (or erosion) until nothing changes.
Gray8 reconstruct(const Gray8& marker, const Gray8& mask, morph::Polarity polarity);

/// Visits every window placement and marks its max / min masked pixel.
WeightMap assign_local(const CalibratedImage& roi, const BinaryMask& mask, const MaterialDensities& densities,
                       int window = 7);

}  // namespace frp::reference
