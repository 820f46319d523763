#include "silhouvol/errors.hpp"
#include "silhouvol/geometry_synth.hpp"
#include "silhouvol/pipeline.hpp"
#include "silhouvol/segmentation.hpp"

#include "test_util.hpp"

#include "doctest.h"

#include <random>

using namespace silhouvol;

namespace {

RgbImage uniform_frame(int w, int h, unsigned char r, unsigned char g, unsigned char b) {
    RgbImage img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) img.set_pixel(x, y, r, g, b);
    return img;
}

Mask random_mask(std::mt19937& rng) {
    std::uniform_int_distribution<int> dim(8, 40);
    const int w = dim(rng), h = dim(rng);
    std::uniform_real_distribution<double> density(0.25, 0.7);
    std::bernoulli_distribution cell(density(rng));
    Mask m(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (cell(rng)) m.set(x, y, true);
    if (m.foreground_count() == 0) m.set(w / 2, h / 2, true);
    return m;
}

} // namespace

TEST_CASE("hsv conversion of primary colors") {
    CHECK(rgb_to_hsv(255, 0, 0).h == doctest::Approx(0.0));
    CHECK(rgb_to_hsv(0, 255, 0).h == doctest::Approx(120.0));
    CHECK(rgb_to_hsv(0, 0, 255).h == doctest::Approx(240.0));
    CHECK(rgb_to_hsv(255, 255, 0).h == doctest::Approx(60.0));
    const Hsv red = rgb_to_hsv(255, 0, 0);
    CHECK(red.s == doctest::Approx(1.0));
    CHECK(red.v == doctest::Approx(1.0));
    const Hsv gray = rgb_to_hsv(128, 128, 128);
    CHECK(gray.s == doctest::Approx(0.0));
    CHECK(gray.v == doctest::Approx(128.0 / 255.0));
}

TEST_CASE("chroma config validation") {
    CHECK_NOTHROW(ChromaKeyConfig{}.validate());
    ChromaKeyConfig bad;
    bad.hue_center = 360.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = {};
    bad.hue_tolerance = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = {};
    bad.hue_tolerance = 180.5;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = {};
    bad.min_saturation = -0.1;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = {};
    bad.min_value = 1.2;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("uniform green frame keys out entirely") {
    const RgbImage frame = uniform_frame(16, 16, 0, 255, 0);
    CHECK_THROWS_AS(chroma_key(frame, ChromaKeyConfig{}), SegmentationError);
}

TEST_CASE("single red pixel on green survives keying") {
    RgbImage frame = uniform_frame(16, 16, 0, 255, 0);
    frame.set_pixel(5, 5, 255, 0, 0);
    const Mask mask = chroma_key(frame, ChromaKeyConfig{});
    CHECK(mask.foreground_count() == 1);
    CHECK(mask.at(5, 5));
}

TEST_CASE("dark or washed-out green is not background") {
    // value 40/255 < 0.20: too dark to be keyed
    RgbImage dark = uniform_frame(4, 4, 0, 40, 0);
    CHECK(chroma_key(dark, ChromaKeyConfig{}).foreground_count() == 16);
    // saturation 20/220 < 0.25: too washed out
    RgbImage pale = uniform_frame(4, 4, 200, 220, 200);
    CHECK(chroma_key(pale, ChromaKeyConfig{}).foreground_count() == 16);
}

TEST_CASE("hue window is inclusive and circular") {
    ChromaKeyConfig cfg; // center 120, tolerance 50
    RgbImage in_window = uniform_frame(2, 2, 170, 255, 0); // hue 80, distance 40
    CHECK_THROWS_AS(chroma_key(in_window, cfg), SegmentationError);
    RgbImage outside = uniform_frame(2, 2, 255, 255, 0); // hue 60, distance 60
    CHECK(chroma_key(outside, cfg).foreground_count() == 4);

    cfg.hue_center = 10.0; // wraps: hue 350 is 20 degrees away
    RgbImage wrapped = uniform_frame(2, 2, 255, 0, 43);
    CHECK_THROWS_AS(chroma_key(wrapped, cfg), SegmentationError);
}

TEST_CASE("cleanup keeps the largest component") {
    Mask m(20, 20);
    for (int y = 2; y < 12; ++y)
        for (int x = 2; x < 12; ++x) m.set(x, y, true); // 100 px
    m.set(16, 16, true);
    m.set(17, 16, true);
    m.set(16, 17, true); // 3 px
    const Mask cleaned = cleanup(m);
    CHECK(cleaned.foreground_count() == 100);
    CHECK_FALSE(cleaned.at(16, 16));
}

TEST_CASE("cleanup resolves size ties by scan order") {
    Mask m(10, 4);
    m.set(1, 1, true);
    m.set(2, 1, true); // first 2-px component in row-major order
    m.set(6, 2, true);
    m.set(7, 2, true); // second
    const Mask cleaned = cleanup(m);
    CHECK(cleaned.foreground_count() == 2);
    CHECK(cleaned.at(1, 1));
    CHECK_FALSE(cleaned.at(6, 2));
}

TEST_CASE("cleanup fills enclosed holes but not border bays") {
    Mask m(9, 9);
    for (int y = 1; y < 8; ++y)
        for (int x = 1; x < 8; ++x) m.set(x, y, true);
    m.set(4, 4, false); // enclosed
    const Mask cleaned = cleanup(m);
    CHECK(cleaned.at(4, 4));

    // C-shape: the bay stays open to the border and must remain background
    Mask c(9, 9);
    for (int y = 0; y < 9; ++y)
        for (int x = 0; x < 9; ++x)
            if (x < 3 || y < 3 || y > 5) c.set(x, y, true);
    const Mask cleaned_c = cleanup(c);
    CHECK_FALSE(cleaned_c.at(8, 4));
    CHECK(cleaned_c.foreground_count() == c.foreground_count());
}

TEST_CASE("cleanup is idempotent on random masks") {
    std::mt19937 rng(20240817);
    for (int i = 0; i < 100; ++i) {
        const Mask m = random_mask(rng);
        const Mask once = cleanup(m);
        const Mask twice = cleanup(once);
        CHECK(once == twice);
        CHECK(once.foreground_count() >= test_util::largest_component_size(m));
    }
}

TEST_CASE("cleanup rejects empty masks") {
    CHECK_THROWS_AS(cleanup(Mask(5, 5)), SegmentationError);
}

TEST_CASE("keyed synthetic frames recover the generating masks") {
    SolidSpec spec;
    spec.kind = SolidKind::triaxial_ellipsoid;
    spec.full_axes = {90.0, 60.0, 30.0};
    spec.orientation = Orientation::horizontal_long_axis;
    spec.center_offset = {0.3, 0.3};
    for (double angle : {0.0, 0.7, 1.9, 2.8}) {
        const Mask truth = render_silhouette(spec, angle, {128, 128});
        const Mask keyed = cleanup(chroma_key(colorize_mask(truth), ChromaKeyConfig{}));
        CHECK(test_util::iou(truth, keyed) >= 0.99);
    }
}
