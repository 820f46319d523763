#pragma once

#include "silhouvol/image.hpp"
#include "silhouvol/mask.hpp"

namespace silhouvol {

/// HSV in the hexcone model: h in degrees [0, 360), s and v in [0, 1].
/// Hue of an achromatic pixel (max == min) is reported as 0.
struct Hsv {
    double h;
    double s;
    double v;
};

Hsv rgb_to_hsv(unsigned char r, unsigned char g, unsigned char b);

/// Background definition for green-screen keying. A pixel is background iff
/// its hue lies within `hue_tolerance` of `hue_center` (circular distance)
/// and both saturation and value clear their minimum thresholds.
struct ChromaKeyConfig {
    double hue_center = 120.0;    ///< degrees, [0, 360)
    double hue_tolerance = 50.0;  ///< degrees, (0, 180]
    double min_saturation = 0.25; ///< [0, 1]
    double min_value = 0.20;      ///< [0, 1]

    void validate() const; ///< throws ConfigError on out-of-range fields
};

/// Per-pixel keying; everything not matching the background rule is foreground.
/// Throws SegmentationError when no foreground pixel remains.
Mask chroma_key(const RgbImage& frame, const ChromaKeyConfig& cfg);

/// Keeps the largest 4-connected foreground component (ties broken by
/// row-major scan order), then fills every background region that is not
/// 4-connected to the image border. Idempotent.
/// Throws SegmentationError on an empty input mask.
Mask cleanup(const Mask& mask);

} // namespace silhouvol
