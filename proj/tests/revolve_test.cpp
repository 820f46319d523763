#include "silhouvol/errors.hpp"
#include "silhouvol/geometry_synth.hpp"
#include "silhouvol/revolve_vertical.hpp"

#include "test_util.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

using namespace silhouvol;

namespace {

RadiusProfile constant_profile(double r, int n_rows) {
    RadiusProfile rp;
    for (int i = 0; i < n_rows; ++i) rp.entries.push_back({static_cast<double>(i), r});
    return rp;
}

RadiusProfile sampled(double y0, double y1, double dy, double (*f)(double)) {
    RadiusProfile rp;
    for (double y = y0; y <= y1 + 1e-9; y += dy) rp.entries.push_back({y, f(y)});
    return rp;
}

RevolveEstimate estimate_sphere(double diameter, int dims, int n_frames) {
    SolidSpec spec;
    spec.full_axes = {diameter, diameter, diameter};
    spec.center_offset = {0.3, 0.3};
    FrameSequenceMeta meta;
    meta.fps = 4.0;
    meta.rotation_period = static_cast<double>(n_frames) / 4.0;
    meta.n_frames = n_frames;
    return estimate_vertical(render_rotation_sequence(spec, meta, {dims, dims}));
}

} // namespace

TEST_CASE("cylinder volume and lateral surface are exact") {
    const RadiusProfile rp = constant_profile(10.0, 21); // height 20
    CHECK(volume_of_revolution(rp) == doctest::Approx(std::numbers::pi * 100.0 * 20.0));
    CHECK(surface_of_revolution(rp) == doctest::Approx(2.0 * std::numbers::pi * 10.0 * 20.0));
}

TEST_CASE("cone matches the slant-surface formula at fine sampling") {
    const RadiusProfile rp = sampled(0.0, 10.0, 0.1, [](double y) { return y; });
    const double surface = surface_of_revolution(rp);
    const double expected = std::numbers::pi * 10.0 * std::sqrt(200.0);
    CHECK(std::fabs(surface - expected) / expected <= 0.01);
    const double volume = volume_of_revolution(rp);
    const double expected_v = std::numbers::pi * 1000.0 / 3.0;
    CHECK(std::fabs(volume - expected_v) / expected_v <= 0.01);
}

TEST_CASE("zero radius gives zero volume") {
    CHECK(volume_of_revolution(constant_profile(0.0, 5)) == doctest::Approx(0.0));
}

TEST_CASE("rasterized sphere recovers volume and surface") {
    SolidSpec spec;
    spec.full_axes = {200.0, 200.0, 200.0};
    spec.center_offset = {0.3, 0.3};
    const Mask disk = render_silhouette(spec, 0.0, {512, 512});
    const RadiusProfile rp = radius_profile(extract_profile(disk));
    const double v_true = 4.0 / 3.0 * std::numbers::pi * 1e6;
    const double s_true = 4.0 * std::numbers::pi * 1e4;
    CHECK(std::fabs(volume_of_revolution(rp) - v_true) / v_true <= 0.01);
    CHECK(std::fabs(surface_of_revolution(rp) - s_true) / s_true <= 0.02);
}

TEST_CASE("sphere frames agree and spread is zero") {
    const RevolveEstimate est = estimate_sphere(120.0, 192, 16);
    REQUIRE(est.per_frame_volume.size() == 16);
    for (double v : est.per_frame_volume) CHECK(v == doctest::Approx(est.per_frame_volume[0]));
    CHECK(est.frame_std <= 1e-6);
}

TEST_CASE("prolate spheroid volume lands within one percent") {
    SolidSpec spec;
    spec.full_axes = {300.0, 200.0, 200.0};
    spec.orientation = Orientation::vertical_long_axis;
    spec.center_offset = {0.3, 0.3};
    FrameSequenceMeta meta;
    meta.fps = 4.0;
    meta.rotation_period = 2.0;
    meta.n_frames = 8;
    const RevolveEstimate est =
        estimate_vertical(render_rotation_sequence(spec, meta, {512, 512}));
    const double v_true = 2.0 * std::numbers::pi * 1e6;
    CHECK(std::fabs(est.mean_volume - v_true) / v_true <= 0.01);
}

TEST_CASE("frame order does not change the aggregate") {
    SolidSpec spec;
    spec.kind = SolidKind::triaxial_ellipsoid;
    spec.full_axes = {120.0, 80.0, 40.0};
    spec.orientation = Orientation::horizontal_long_axis;
    FrameSequenceMeta meta;
    meta.fps = 4.0;
    meta.rotation_period = 4.0;
    meta.n_frames = 12;
    auto frames = render_rotation_sequence(spec, meta, {160, 160});
    const RevolveEstimate fwd = estimate_vertical(frames);
    std::reverse(frames.begin(), frames.end());
    const RevolveEstimate rev = estimate_vertical(frames);
    CHECK(fwd.mean_volume == doctest::Approx(rev.mean_volume));
    CHECK(fwd.mean_area == doctest::Approx(rev.mean_area));
    CHECK(fwd.frame_std == doctest::Approx(rev.frame_std));
}

TEST_CASE("row-wise larger radii give larger volume") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> radius(0.5, 20.0);
    std::uniform_real_distribution<double> bump(0.0, 5.0);
    for (int trial = 0; trial < 20; ++trial) {
        RadiusProfile a, b;
        for (int i = 0; i < 15; ++i) {
            const double r = radius(rng);
            a.entries.push_back({static_cast<double>(i), r});
            b.entries.push_back({static_cast<double>(i), r + bump(rng)});
        }
        CHECK(volume_of_revolution(a) <= volume_of_revolution(b));
    }
}

TEST_CASE("surface is at least the inscribed cylinder of minimal radius") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> radius(1.0, 30.0);
    RadiusProfile rp;
    double r_min = 1e30;
    for (int i = 0; i < 25; ++i) {
        const double r = radius(rng);
        r_min = std::min(r_min, r);
        rp.entries.push_back({static_cast<double>(i), r});
    }
    const double height = rp.entries.back().y - rp.entries.front().y;
    CHECK(surface_of_revolution(rp) >= 2.0 * std::numbers::pi * r_min * height - 1e-9);
}

TEST_CASE("doubling resolution scales volume by eight and area by four") {
    const RevolveEstimate low = estimate_sphere(100.0, 256, 8);
    const RevolveEstimate high = estimate_sphere(200.0, 512, 8);
    CHECK(std::fabs(high.mean_volume / low.mean_volume - 8.0) / 8.0 <= 0.01);
    CHECK(std::fabs(high.mean_area / low.mean_area - 4.0) / 4.0 <= 0.02);
}

TEST_CASE("volume error shrinks as resolution grows") {
    const double v50 = estimate_sphere(50.0, 96, 4).mean_volume;
    const double v100 = estimate_sphere(100.0, 192, 4).mean_volume;
    const double t50 = std::numbers::pi / 6.0 * 50.0 * 50.0 * 50.0;
    const double t100 = std::numbers::pi / 6.0 * 100.0 * 100.0 * 100.0;
    CHECK(std::fabs(v100 - t100) / t100 < std::fabs(v50 - t50) / t50);
}

TEST_CASE("degenerate inputs are rejected") {
    CHECK_THROWS_AS(volume_of_revolution(constant_profile(5.0, 1)), GeometryError);
    CHECK_THROWS_AS(surface_of_revolution(constant_profile(5.0, 1)), GeometryError);
    RadiusProfile unsorted;
    unsorted.entries = {{0.0, 1.0}, {0.0, 2.0}};
    CHECK_THROWS_AS(volume_of_revolution(unsorted), GeometryError);
    CHECK_THROWS_AS(estimate_vertical({}), ConfigError);
}
