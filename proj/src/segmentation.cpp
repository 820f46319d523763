#include "silhouvol/segmentation.hpp"

#include "silhouvol/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace silhouvol {

Hsv rgb_to_hsv(unsigned char r8, unsigned char g8, unsigned char b8) {
    const double r = r8 / 255.0;
    const double g = g8 / 255.0;
    const double b = b8 / 255.0;
    const double mx = std::max({r, g, b});
    const double mn = std::min({r, g, b});
    const double delta = mx - mn;

    double h = 0.0;
    if (delta > 0.0) {
        if (mx == r) {
            h = 60.0 * std::fmod((g - b) / delta, 6.0);
        } else if (mx == g) {
            h = 60.0 * ((b - r) / delta + 2.0);
        } else {
            h = 60.0 * ((r - g) / delta + 4.0);
        }
        if (h < 0.0) h += 360.0;
    }
    const double s = mx > 0.0 ? delta / mx : 0.0;
    return Hsv{h, s, mx};
}

void ChromaKeyConfig::validate() const {
    if (!(hue_center >= 0.0 && hue_center < 360.0))
        throw ConfigError("hue_center must lie in [0, 360)");
    if (!(hue_tolerance > 0.0 && hue_tolerance <= 180.0))
        throw ConfigError("hue_tolerance must lie in (0, 180]");
    if (!(min_saturation >= 0.0 && min_saturation <= 1.0))
        throw ConfigError("min_saturation must lie in [0, 1]");
    if (!(min_value >= 0.0 && min_value <= 1.0))
        throw ConfigError("min_value must lie in [0, 1]");
}

namespace {

double circular_hue_distance(double a, double b) {
    double d = std::fabs(a - b);
    if (d > 180.0) d = 360.0 - d;
    return d;
}

} // namespace

Mask chroma_key(const RgbImage& frame, const ChromaKeyConfig& cfg) {
    cfg.validate();
    Mask out(frame.width(), frame.height());
    std::size_t foreground = 0;
    for (int y = 0; y < frame.height(); ++y) {
        for (int x = 0; x < frame.width(); ++x) {
            const unsigned char* px = frame.pixel(x, y);
            const Hsv hsv = rgb_to_hsv(px[0], px[1], px[2]);
            const bool background = circular_hue_distance(hsv.h, cfg.hue_center) <= cfg.hue_tolerance &&
                                    hsv.s >= cfg.min_saturation && hsv.v >= cfg.min_value;
            if (!background) {
                out.set(x, y, true);
                ++foreground;
            }
        }
    }
    if (foreground == 0)
        throw SegmentationError("chroma key left no foreground pixels");
    return out;
}

namespace {

/// Iterative 4-connected flood fill over a label grid. Labels pixels equal to
/// `from` reachable from (sx, sy) with `to`; returns the region size.
std::size_t flood4(std::vector<int>& labels, int width, int height, int sx, int sy, int from, int to) {
    std::vector<std::pair<int, int>> stack;
    stack.emplace_back(sx, sy);
    labels[static_cast<std::size_t>(sy) * width + sx] = to;
    std::size_t size = 0;
    while (!stack.empty()) {
        const auto [x, y] = stack.back();
        stack.pop_back();
        ++size;
        const int nx[4] = {x - 1, x + 1, x, x};
        const int ny[4] = {y, y, y - 1, y + 1};
        for (int k = 0; k < 4; ++k) {
            if (nx[k] < 0 || nx[k] >= width || ny[k] < 0 || ny[k] >= height) continue;
            int& cell = labels[static_cast<std::size_t>(ny[k]) * width + nx[k]];
            if (cell == from) {
                cell = to;
                stack.emplace_back(nx[k], ny[k]);
            }
        }
    }
    return size;
}

} // namespace

Mask cleanup(const Mask& mask) {
    const int w = mask.width();
    const int h = mask.height();
    if (mask.foreground_count() == 0)
        throw SegmentationError("cleanup requires at least one foreground pixel");

    // Pass 1: label foreground components; keep only the largest. Labels start
    // at 2 so 0/1 keep their mask meaning during the scan.
    std::vector<int> labels(static_cast<std::size_t>(w) * h, 0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            labels[static_cast<std::size_t>(y) * w + x] = mask.at(x, y) ? 1 : 0;

    int best_label = -1;
    std::size_t best_size = 0;
    int next_label = 2;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (labels[static_cast<std::size_t>(y) * w + x] != 1) continue;
            const std::size_t size = flood4(labels, w, h, x, y, 1, next_label);
            if (size > best_size) { // strict: ties keep the first-scanned component
                best_size = size;
                best_label = next_label;
            }
            ++next_label;
        }
    }

    Mask out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (labels[static_cast<std::size_t>(y) * w + x] == best_label) out.set(x, y, true);

    // Pass 2: background reachable from the border stays background; enclosed
    // background becomes foreground.
    std::vector<int> bg(static_cast<std::size_t>(w) * h, 0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            bg[static_cast<std::size_t>(y) * w + x] = out.at(x, y) ? 2 : 0;
    for (int x = 0; x < w; ++x) {
        if (bg[x] == 0) flood4(bg, w, h, x, 0, 0, 1);
        if (bg[static_cast<std::size_t>(h - 1) * w + x] == 0) flood4(bg, w, h, x, h - 1, 0, 1);
    }
    for (int y = 0; y < h; ++y) {
        if (bg[static_cast<std::size_t>(y) * w] == 0) flood4(bg, w, h, 0, y, 0, 1);
        if (bg[static_cast<std::size_t>(y) * w + (w - 1)] == 0) flood4(bg, w, h, w - 1, y, 0, 1);
    }
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (bg[static_cast<std::size_t>(y) * w + x] == 0) out.set(x, y, true);

    return out;
}

} // namespace silhouvol
