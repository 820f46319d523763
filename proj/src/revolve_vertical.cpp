#include "silhouvol/revolve_vertical.hpp"

#include "silhouvol/errors.hpp"
#include "silhouvol/parallel.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace silhouvol {

namespace {

void check_profile(const RadiusProfile& rp) {
    if (rp.entries.size() < 2)
        throw GeometryError("radius profile needs at least 2 entries to revolve");
    for (std::size_t k = 0; k + 1 < rp.entries.size(); ++k) {
        if (!(rp.entries[k + 1].y > rp.entries[k].y))
            throw GeometryError("radius profile rows must strictly increase in y");
    }
}

} // namespace

double volume_of_revolution(const RadiusProfile& rp) {
    check_profile(rp);
    double v = 0.0;
    for (std::size_t k = 0; k + 1 < rp.entries.size(); ++k) {
        const double dy = rp.entries[k + 1].y - rp.entries[k].y;
        const double r_mid = (rp.entries[k].r + rp.entries[k + 1].r) / 2.0;
        v += r_mid * r_mid * dy;
    }
    return std::numbers::pi * v;
}

double surface_of_revolution(const RadiusProfile& rp) {
    check_profile(rp);
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < rp.entries.size(); ++k) {
        const double dy = rp.entries[k + 1].y - rp.entries[k].y;
        const double dr = rp.entries[k + 1].r - rp.entries[k].r;
        const double r_mid = (rp.entries[k].r + rp.entries[k + 1].r) / 2.0;
        s += r_mid * std::sqrt(1.0 + (dr / dy) * (dr / dy)) * dy;
    }
    return 2.0 * std::numbers::pi * s;
}

RevolveEstimate estimate_vertical_from_profiles(const std::vector<BoundaryProfile>& profiles) {
    if (profiles.empty()) throw ConfigError("no frames to estimate from");
    const std::size_t n = profiles.size();
    RevolveEstimate est;
    est.per_frame_volume.resize(n);
    est.per_frame_area.resize(n);
    parallel_for_index(n, [&](std::size_t i) {
        with_context("frame " + std::to_string(i), [&] {
            const RadiusProfile rp = radius_profile(profiles[i]);
            est.per_frame_volume[i] = volume_of_revolution(rp);
            est.per_frame_area[i] = surface_of_revolution(rp);
        });
    });
    for (std::size_t i = 0; i < n; ++i) {
        est.mean_volume += est.per_frame_volume[i];
        est.mean_area += est.per_frame_area[i];
    }
    est.mean_volume /= static_cast<double>(n);
    est.mean_area /= static_cast<double>(n);
    double acc = 0.0;
    for (double v : est.per_frame_volume) acc += (v - est.mean_volume) * (v - est.mean_volume);
    est.frame_std = std::sqrt(acc / static_cast<double>(n));
    return est;
}

RevolveEstimate estimate_vertical(const std::vector<Mask>& frames) {
    return estimate_vertical_from_profiles(profile_frames(frames));
}

} // namespace silhouvol
