#pragma once

#include "silhouvol/boundary.hpp"
#include "silhouvol/geometry_synth.hpp"
#include "silhouvol/mask.hpp"

#include <vector>

namespace silhouvol {

/// Which common height the frames are rescaled to: the minimum, the rounded
/// mean, or the maximum of the observed per-frame heights H(i).
enum class CalibrationMode { shortest, average, longest };

struct HeightCalibration {
    int h_short = 0;
    int h_avg = 0;
    int h_long = 0;
    std::vector<double> per_frame_scale; ///< target/H(i), frame order
    CalibrationMode mode = CalibrationMode::average;

    int target() const;
};

/// Needs >= 2 frames. After applying per_frame_scale every frame's height
/// equals target() exactly.
HeightCalibration calibrate(const std::vector<BoundaryProfile>& frames, CalibrationMode mode);

/// Slice widths folded onto one width-function period. Row i holds the widths
/// of all slices at angle angles[i]; widths of frames that are half a turn
/// apart are averaged into the same row.
struct WidthMatrix {
    std::vector<std::vector<double>> L; ///< [angle][slice], slice j stored at j-1
    std::vector<double> angles;         ///< uniform ascending grid over [0, π)
    double delta_s = 0.0;               ///< π / angles.size()
    int h_target = 0;
};

/// Builds the folded matrix. Frame angles come from uniform rotation
/// (2π·i/(fps·rotation_period), i = position in `frames`); fps and
/// rotation_period must put a whole number of frames into each half turn and
/// the sequence must cover at least half a revolution. Widths are scaled by
/// the calibration factor and resampled onto slice centers 1..target by
/// linear interpolation.
WidthMatrix width_matrix(const std::vector<BoundaryProfile>& frames, const HeightCalibration& cal,
                         const FrameSequenceMeta& meta);

inline constexpr int kDefaultSmoothHarmonics = 10;

/// Projects uniformly spaced samples of a π-periodic function onto its
/// truncated Fourier series (harmonics <= min(harmonics, (n-1)/2)). Width
/// functions of convex bodies are band-limited in practice, while the
/// derivative term of the slice-area formula amplifies per-sample pixel
/// quantization noise quadratically; the projection removes that noise
/// without biasing the low harmonics the area depends on.
/// harmonics <= 0 returns the input unchanged.
std::vector<double> fourier_smooth_period_pi(const std::vector<double>& samples, int harmonics);

/// Applies fourier_smooth_period_pi along the angle axis of every slice.
void smooth_width_matrix(WidthMatrix& wm, int harmonics);

/// Sign of the derivative term in the slice-area formula. `minus` is the
/// support-function area identity for centrally symmetric convex bodies;
/// `plus` reproduces the additive variant, which overestimates by
/// (1/2)∫L′² ds.
enum class AreaSign { minus, plus };

/// A = (1/4)·Σ [L(s_i)² ∓ L′(s_i)²]·Δs over one period [0, π), with L′ by
/// central differences under periodic wraparound and Δs = π/n.
/// Throws GeometryError when fewer than 8 samples are given or when the minus
/// variant turns negative; ConfigError on negative widths.
double slice_area(const std::vector<double>& widths_over_s, AreaSign sign);

struct HorizontalEstimate {
    double volume = 0.0;              ///< px³: Σ slice_areas · slice_thickness
    std::vector<double> slice_areas;  ///< px² per slice, top to bottom
    double slice_thickness = 0.0;     ///< effective Δ; n_slices·Δ spans target height exactly
    int h_target = 0;
    std::vector<int> clamped_slices;  ///< 0-based slices whose negative area was clamped to 0
};

/// Calibrates, folds the width matrix, smooths it, and sums per-slice areas
/// at the requested slice thickness (>= 1 px; slices are centered and the
/// thickness adjusted so they tile the target height exactly). Negative
/// minus-variant slice areas are clamped to 0 and recorded as diagnostics.
HorizontalEstimate estimate_horizontal_from_profiles(const std::vector<BoundaryProfile>& profiles,
                                                     const FrameSequenceMeta& meta,
                                                     CalibrationMode mode, double thickness,
                                                     AreaSign sign,
                                                     int smooth_harmonics = kDefaultSmoothHarmonics);

/// Same, starting from masks (profiles each frame first).
HorizontalEstimate estimate_horizontal(const std::vector<Mask>& frames,
                                       const FrameSequenceMeta& meta, CalibrationMode mode,
                                       double thickness, AreaSign sign,
                                       int smooth_harmonics = kDefaultSmoothHarmonics);

/// CLI/config spellings: "short" | "average" | "long", "minus" | "plus".
CalibrationMode parse_mode(const std::string& name);
const char* mode_name(CalibrationMode mode);
AreaSign parse_sign(const std::string& name);
const char* sign_name(AreaSign sign);

} // namespace silhouvol
