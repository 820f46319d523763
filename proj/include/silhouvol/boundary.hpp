#pragma once

#include "silhouvol/mask.hpp"

#include <string>
#include <vector>

namespace silhouvol {

/// Per-row horizontal extents of a single-object mask plus the derived frame
/// geometry: the extreme-y boundary points, the vertical rotation axis through
/// their midpoint, and the central vertical line of length `height`.
struct BoundaryProfile {
    struct Row {
        int y;
        int x_left;  ///< outermost foreground column on the left
        int x_right; ///< outermost foreground column on the right
    };
    /// One x-coordinate (mean over ties) at an extreme row.
    struct ExtremePoint {
        double x;
        int y;
    };

    std::vector<Row> rows; ///< contiguous, ascending in y
    ExtremePoint top;      ///< minimal-y boundary point
    ExtremePoint bottom;   ///< maximal-y boundary point
    double axis_x;         ///< rotation axis, exactly (top.x + bottom.x)/2
    int height;            ///< bottom.y - top.y + 1 (rows spanned)
    double center_x;       ///< = axis_x
    double center_y;       ///< (top.y + bottom.y)/2
};

/// Distance of the averaged boundary curve to the rotation axis, per row.
/// y ascends strictly; r >= 0, with r = 0 tolerated only at the ends.
struct RadiusProfile {
    struct Entry {
        double y;
        double r;
    };
    std::vector<Entry> entries;
};

/// Scans the mask row by row. Rows with several foreground runs use the
/// outermost extent. Extreme points average the x of all foreground pixels in
/// the extreme row (reflection-equivariant tie-breaking).
/// Throws SegmentationError on empty masks or interior row gaps (broken
/// segmentation), GeometryError when fewer than 3 rows are occupied.
BoundaryProfile extract_profile(const Mask& mask);

/// Half of each row's pixel span: r(y) = (x_right - x_left + 1)/2. The +1
/// counts both boundary columns, keeping r consistent with pixel-count area
/// and centering the sampled radius on the true outline.
RadiusProfile radius_profile(const BoundaryProfile& profile);

/// Whole-pixel slice widths L(j) = x_right - x_left + 1 for j = 1..height
/// (index 0 of the result is slice 1, the top row).
std::vector<int> width_column(const BoundaryProfile& profile);

/// Debug dump, one line per row: y, x_left, x_right, r.
std::string profile_csv(const BoundaryProfile& profile);

/// Profiles every frame concurrently; errors carry the frame index.
std::vector<BoundaryProfile> profile_frames(const std::vector<Mask>& frames);

} // namespace silhouvol
