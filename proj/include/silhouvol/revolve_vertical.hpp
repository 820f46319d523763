#pragma once

#include "silhouvol/boundary.hpp"
#include "silhouvol/mask.hpp"

#include <vector>

namespace silhouvol {

/// Per-frame solids of revolution aggregated over a capture sequence.
/// frame_std is the population standard deviation of the per-frame volumes.
struct RevolveEstimate {
    std::vector<double> per_frame_volume; ///< px³, frame order
    std::vector<double> per_frame_area;   ///< px², frame order
    double mean_volume = 0.0;
    double mean_area = 0.0;
    double frame_std = 0.0;
};

/// Disk method: V = π·Σ [(r_k + r_{k+1})/2]²·Δy_k over consecutive entries.
/// Throws GeometryError for profiles with fewer than 2 entries or
/// non-increasing y.
double volume_of_revolution(const RadiusProfile& rp);

/// Lateral surface of the revolved profile:
/// S = 2π·Σ r_mid·√(1 + ((r_{k+1} − r_k)/Δy_k)²)·Δy_k. End caps excluded;
/// closed profiles taper to r = 0 so the caps vanish.
double surface_of_revolution(const RadiusProfile& rp);

/// Profiles every frame, revolves each, and averages. Per-frame failures
/// abort with the frame index attached. Aggregation is order-independent.
RevolveEstimate estimate_vertical(const std::vector<Mask>& frames);

/// Same, over profiles that were already extracted.
RevolveEstimate estimate_vertical_from_profiles(const std::vector<BoundaryProfile>& profiles);

} // namespace silhouvol
