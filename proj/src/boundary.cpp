#include "silhouvol/boundary.hpp"

#include "silhouvol/errors.hpp"
#include "silhouvol/parallel.hpp"

#include <sstream>

namespace silhouvol {

namespace {

/// Mean x of all foreground pixels in one row (ties at an extreme row).
double mean_foreground_x(const Mask& mask, int y) {
    long long sum = 0;
    long long count = 0;
    for (int x = 0; x < mask.width(); ++x) {
        if (mask.at(x, y)) {
            sum += x;
            ++count;
        }
    }
    return static_cast<double>(sum) / static_cast<double>(count);
}

} // namespace

BoundaryProfile extract_profile(const Mask& mask) {
    BoundaryProfile p;
    p.rows.reserve(mask.height());
    int prev_y = -1;
    for (int y = 0; y < mask.height(); ++y) {
        int x_left = -1;
        int x_right = -1;
        for (int x = 0; x < mask.width(); ++x) {
            if (!mask.at(x, y)) continue;
            if (x_left < 0) x_left = x;
            x_right = x;
        }
        if (x_left < 0) continue;
        if (prev_y >= 0 && y != prev_y + 1) {
            std::ostringstream msg;
            msg << "foreground rows are not contiguous (gap between y=" << prev_y << " and y=" << y
                << "); segmentation looks broken";
            throw SegmentationError(msg.str());
        }
        p.rows.push_back({y, x_left, x_right});
        prev_y = y;
    }
    if (p.rows.empty()) throw SegmentationError("mask has no foreground");
    if (p.rows.size() < 3)
        throw GeometryError("object spans fewer than 3 rows; too thin to profile");

    p.top = {mean_foreground_x(mask, p.rows.front().y), p.rows.front().y};
    p.bottom = {mean_foreground_x(mask, p.rows.back().y), p.rows.back().y};
    p.axis_x = (p.top.x + p.bottom.x) / 2.0;
    p.height = p.bottom.y - p.top.y + 1;
    p.center_x = p.axis_x;
    p.center_y = (p.top.y + p.bottom.y) / 2.0;
    return p;
}

RadiusProfile radius_profile(const BoundaryProfile& profile) {
    RadiusProfile rp;
    rp.entries.reserve(profile.rows.size());
    for (const auto& row : profile.rows)
        rp.entries.push_back({static_cast<double>(row.y), (row.x_right - row.x_left + 1) / 2.0});
    return rp;
}

std::vector<int> width_column(const BoundaryProfile& profile) {
    std::vector<int> widths;
    widths.reserve(profile.rows.size());
    for (const auto& row : profile.rows) widths.push_back(row.x_right - row.x_left + 1);
    return widths;
}

std::string profile_csv(const BoundaryProfile& profile) {
    std::ostringstream out;
    out << "y,x_left,x_right,r\n";
    for (const auto& row : profile.rows)
        out << row.y << ',' << row.x_left << ',' << row.x_right << ','
            << (row.x_right - row.x_left + 1) / 2.0 << '\n';
    return out.str();
}

std::vector<BoundaryProfile> profile_frames(const std::vector<Mask>& frames) {
    if (frames.empty()) throw ConfigError("no frames to profile");
    std::vector<BoundaryProfile> profiles(frames.size());
    parallel_for_index(frames.size(), [&](std::size_t i) {
        with_context("frame " + std::to_string(i),
                     [&] { profiles[i] = extract_profile(frames[i]); });
    });
    return profiles;
}

} // namespace silhouvol
