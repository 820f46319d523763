#include "silhouvol/slice_horizontal.hpp"

#include "silhouvol/errors.hpp"
#include "silhouvol/parallel.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace silhouvol {

int HeightCalibration::target() const {
    switch (mode) {
    case CalibrationMode::shortest: return h_short;
    case CalibrationMode::longest: return h_long;
    case CalibrationMode::average: return h_avg;
    }
    return h_avg;
}

HeightCalibration calibrate(const std::vector<BoundaryProfile>& frames, CalibrationMode mode) {
    if (frames.size() < 2) throw ConfigError("calibration needs at least 2 frames");
    HeightCalibration cal;
    cal.mode = mode;
    long long sum = 0;
    cal.h_short = frames.front().height;
    cal.h_long = frames.front().height;
    for (const auto& f : frames) {
        if (f.height <= 0) throw GeometryError("frame with nonpositive height cannot be calibrated");
        cal.h_short = std::min(cal.h_short, f.height);
        cal.h_long = std::max(cal.h_long, f.height);
        sum += f.height;
    }
    cal.h_avg = static_cast<int>(
        std::llround(static_cast<double>(sum) / static_cast<double>(frames.size())));
    const double target = cal.target();
    cal.per_frame_scale.reserve(frames.size());
    for (const auto& f : frames) cal.per_frame_scale.push_back(target / f.height);
    return cal;
}

namespace {

/// Linear interpolation of a piecewise-linear function through the points
/// (t + 0.5, values[t]), clamped to the end values outside the sampled span.
double interp_at(const std::vector<double>& values, double pos) {
    const double u = pos - 0.5;
    if (u <= 0.0) return values.front();
    const auto last = static_cast<double>(values.size() - 1);
    if (u >= last) return values.back();
    const auto t0 = static_cast<std::size_t>(u);
    const double frac = u - static_cast<double>(t0);
    return values[t0] + frac * (values[t0 + 1] - values[t0]);
}

/// Scales one frame's widths by `scale` and resamples them onto the centers
/// of `target` unit slices of the calibrated height.
std::vector<double> resample_widths(const BoundaryProfile& frame, double scale, int target) {
    const std::vector<int> raw = width_column(frame);
    std::vector<double> source(raw.begin(), raw.end());
    std::vector<double> out(static_cast<std::size_t>(target));
    for (int q = 0; q < target; ++q)
        out[q] = scale * interp_at(source, (q + 0.5) / scale);
    return out;
}

int folded_angle_count(const FrameSequenceMeta& meta, std::size_t n_frames) {
    const double half_turn_frames = meta.fps * meta.rotation_period / 2.0;
    const auto m = static_cast<int>(std::llround(half_turn_frames));
    if (std::fabs(half_turn_frames - m) > 1e-9)
        throw ConfigError("fps and rotation_period must put a whole number of frames into half a "
                          "revolution; got " +
                          std::to_string(half_turn_frames));
    if (m < 8) throw GeometryError("fewer than 8 angular samples per half revolution");
    if (n_frames < static_cast<std::size_t>(m))
        throw GeometryError("frame sequence covers less than half a revolution (" +
                            std::to_string(n_frames) + " of " + std::to_string(m) + " frames)");
    return m;
}

double slice_area_raw(const std::vector<double>& w, double delta_s, AreaSign sign) {
    const std::size_t n = w.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double prev = w[(i + n - 1) % n];
        const double next = w[(i + 1) % n];
        const double deriv = (next - prev) / (2.0 * delta_s);
        acc += sign == AreaSign::minus ? w[i] * w[i] - deriv * deriv : w[i] * w[i] + deriv * deriv;
    }
    return acc * delta_s / 4.0;
}

} // namespace

WidthMatrix width_matrix(const std::vector<BoundaryProfile>& frames, const HeightCalibration& cal,
                         const FrameSequenceMeta& meta) {
    if (!(meta.fps > 0.0) || !(meta.rotation_period > 0.0))
        throw ConfigError("fps and rotation_period must be positive");
    if (cal.per_frame_scale.size() != frames.size())
        throw ConfigError("calibration does not match the frame count");
    const int m = folded_angle_count(meta, frames.size());
    const int target = cal.target();

    WidthMatrix wm;
    wm.h_target = target;
    wm.delta_s = std::numbers::pi / m;
    wm.angles.resize(m);
    wm.L.assign(m, std::vector<double>(static_cast<std::size_t>(target), 0.0));
    // Bucket b collects frames b, b+m, b+2m, ... (the same angle modulo π).
    parallel_for_index(static_cast<std::size_t>(m), [&](std::size_t b) {
        wm.angles[b] = std::numbers::pi * static_cast<double>(b) / m;
        auto& row = wm.L[b];
        int count = 0;
        for (std::size_t i = b; i < frames.size(); i += m) {
            const std::vector<double> widths =
                resample_widths(frames[i], cal.per_frame_scale[i], target);
            for (int q = 0; q < target; ++q) row[q] += widths[q];
            ++count;
        }
        for (int q = 0; q < target; ++q) row[q] /= count;
    });
    return wm;
}

std::vector<double> fourier_smooth_period_pi(const std::vector<double>& samples, int harmonics) {
    const std::size_t n = samples.size();
    if (harmonics <= 0 || n < 3) return samples;
    const int k_max = std::min<int>(harmonics, static_cast<int>((n - 1) / 2));

    double c0 = 0.0;
    for (double v : samples) c0 += v;
    c0 /= static_cast<double>(n);

    std::vector<double> a(k_max + 1, 0.0), b(k_max + 1, 0.0);
    for (int k = 1; k <= k_max; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const double phase = 2.0 * std::numbers::pi * k * static_cast<double>(i) / n;
            a[k] += samples[i] * std::cos(phase);
            b[k] += samples[i] * std::sin(phase);
        }
        a[k] *= 2.0 / static_cast<double>(n);
        b[k] *= 2.0 / static_cast<double>(n);
    }

    std::vector<double> out(n, c0);
    for (int k = 1; k <= k_max; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const double phase = 2.0 * std::numbers::pi * k * static_cast<double>(i) / n;
            out[i] += a[k] * std::cos(phase) + b[k] * std::sin(phase);
        }
    }
    return out;
}

void smooth_width_matrix(WidthMatrix& wm, int harmonics) {
    if (harmonics <= 0) return;
    const std::size_t m = wm.L.size();
    parallel_for_index(static_cast<std::size_t>(wm.h_target), [&](std::size_t j) {
        std::vector<double> column(m);
        for (std::size_t b = 0; b < m; ++b) column[b] = wm.L[b][j];
        column = fourier_smooth_period_pi(column, harmonics);
        for (std::size_t b = 0; b < m; ++b) wm.L[b][j] = std::max(0.0, column[b]);
    });
}

double slice_area(const std::vector<double>& widths_over_s, AreaSign sign) {
    if (widths_over_s.size() < 8)
        throw GeometryError("slice area needs at least 8 width samples over the half turn");
    for (double w : widths_over_s)
        if (w < 0.0) throw ConfigError("slice widths must be nonnegative");
    const double delta_s = std::numbers::pi / static_cast<double>(widths_over_s.size());
    const double area = slice_area_raw(widths_over_s, delta_s, sign);
    if (sign == AreaSign::minus && area < 0.0)
        throw GeometryError("negative slice area; widths are non-convex or too noisy");
    return area;
}

HorizontalEstimate estimate_horizontal_from_profiles(const std::vector<BoundaryProfile>& profiles,
                                                     const FrameSequenceMeta& meta,
                                                     CalibrationMode mode, double thickness,
                                                     AreaSign sign, int smooth_harmonics) {
    if (!(thickness >= 1.0)) throw ConfigError("slice thickness must be at least 1 px");
    const HeightCalibration cal = calibrate(profiles, mode);
    WidthMatrix wm = width_matrix(profiles, cal, meta);
    smooth_width_matrix(wm, smooth_harmonics);

    const std::size_t m = wm.L.size();
    if (m < 8) throw GeometryError("fewer than 8 angular samples per half revolution");

    HorizontalEstimate est;
    est.h_target = wm.h_target;
    const auto n_slices =
        std::max<long long>(1, std::llround(static_cast<double>(wm.h_target) / thickness));
    est.slice_thickness = static_cast<double>(wm.h_target) / static_cast<double>(n_slices);
    est.slice_areas.reserve(static_cast<std::size_t>(n_slices));

    std::vector<double> widths(m);
    for (long long q = 1; q <= n_slices; ++q) {
        const double center = (static_cast<double>(q) - 0.5) * est.slice_thickness;
        for (std::size_t b = 0; b < m; ++b) widths[b] = interp_at(wm.L[b], center);
        double area = slice_area_raw(widths, wm.delta_s, sign);
        if (sign == AreaSign::minus && area < 0.0) {
            area = 0.0;
            est.clamped_slices.push_back(static_cast<int>(q - 1));
        }
        est.slice_areas.push_back(area);
        est.volume += area * est.slice_thickness;
    }
    return est;
}

HorizontalEstimate estimate_horizontal(const std::vector<Mask>& frames,
                                       const FrameSequenceMeta& meta, CalibrationMode mode,
                                       double thickness, AreaSign sign, int smooth_harmonics) {
    return estimate_horizontal_from_profiles(profile_frames(frames), meta, mode, thickness, sign,
                                             smooth_harmonics);
}

CalibrationMode parse_mode(const std::string& name) {
    if (name == "short") return CalibrationMode::shortest;
    if (name == "average") return CalibrationMode::average;
    if (name == "long") return CalibrationMode::longest;
    throw ConfigError("unknown calibration mode \"" + name + "\" (want short, average or long)");
}

const char* mode_name(CalibrationMode mode) {
    switch (mode) {
    case CalibrationMode::shortest: return "short";
    case CalibrationMode::longest: return "long";
    case CalibrationMode::average: return "average";
    }
    return "average";
}

AreaSign parse_sign(const std::string& name) {
    if (name == "minus") return AreaSign::minus;
    if (name == "plus") return AreaSign::plus;
    throw ConfigError("unknown area sign \"" + name + "\" (want minus or plus)");
}

const char* sign_name(AreaSign sign) { return sign == AreaSign::minus ? "minus" : "plus"; }

} // namespace silhouvol
