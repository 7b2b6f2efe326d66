#pragma once

#include <vector>

#include "frp/types.hpp"

namespace frp::morph {

/// Euclidean disk: offset (dy, dx) is a member iff dy^2 + dx^2 <= radius^2.
class DiskKernel {
public:
    explicit DiskKernel(int radius);

    int radius() const noexcept { return radius_; }
    bool contains(int dy, int dx) const noexcept { return dy * dy + dx * dx <= radius_ * radius_; }
    /// Largest |dx| in the kernel row at vertical offset dy (|dy| <= radius).
    int half_width(int dy) const noexcept { return half_widths_[static_cast<std::size_t>(dy + radius_)]; }

private:
    int radius_;
    std::vector<int> half_widths_;
};

enum class MorphOp { erode, dilate, open, close };

/// Out-of-frame handling. `replicate` repeats edge pixels; `zero` reads 0 outside the frame.
enum class Border { replicate, zero };

Gray8 erode(const Gray8& image, const DiskKernel& kernel, Border border = Border::replicate);
Gray8 dilate(const Gray8& image, const DiskKernel& kernel, Border border = Border::replicate);
Gray8 morph_apply(const Gray8& image, MorphOp op, const DiskKernel& kernel, Border border = Border::replicate);

/// Binary masks always read background outside the frame.
BinaryMask morph_apply(const BinaryMask& mask, MorphOp op, const DiskKernel& kernel);

/// disk(1) erosion of a mask with a zero border (one peeling step).
BinaryMask erode_unit(const BinaryMask& mask);

Gray8 invert(const Gray8& image);

enum class Polarity { by_dilation, by_erosion };

/// Geodesic reconstruction with the disk(1) unit element (4-connectivity plus centre).
/// Requires marker <= mask (by_dilation) or marker >= mask (by_erosion) pointwise.
Gray8 reconstruct(const Gray8& marker, const Gray8& mask, Polarity polarity);
BinaryMask reconstruct(const BinaryMask& marker, const BinaryMask& mask);

Gray8 opening_by_reconstruction(const Gray8& image, const DiskKernel& kernel, Border border = Border::replicate);
Gray8 closing_by_reconstruction(const Gray8& image, const DiskKernel& kernel, Border border = Border::replicate);

/// Opening-by-reconstruction then closing-by-reconstruction, both with disk(radius).
Gray8 open_close_reconstruction(const Gray8& image, int radius, Border border = Border::replicate);

/// Closing-by-reconstruction with disk(close_radius), then a structural opening with the
/// larger disk(open_radius). The opening is not geodesic so that features attached to the
/// main body but thinner than the opening kernel are cut off.
Gray8 close_open_reconstruction_asym(const Gray8& image, int close_radius, int open_radius,
                                     Border border = Border::replicate);

}  // namespace frp::morph
