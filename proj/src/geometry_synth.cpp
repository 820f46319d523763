#include "silhouvol/geometry_synth.hpp"

#include "silhouvol/errors.hpp"
#include "silhouvol/parallel.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace silhouvol {

void SolidSpec::validate() const {
    for (double axis : full_axes) {
        if (!(axis > 0.0)) throw ConfigError("solid axes must be positive");
    }
}

void FrameSequenceMeta::validate() const {
    if (!(fps > 0.0)) throw ConfigError("fps must be positive");
    if (!(rotation_period > 0.0)) throw ConfigError("rotation_period must be positive");
    if (n_frames < 2) throw ConfigError("n_frames must be at least 2");
}

double FrameSequenceMeta::angle_of_frame(int k) const {
    return 2.0 * std::numbers::pi * k / (fps * rotation_period);
}

SilhouetteEllipse projected_ellipse(const SolidSpec& spec, double angle) {
    spec.validate();
    const double a = spec.full_axes[0] / 2.0;
    const double b = spec.full_axes[1] / 2.0;
    const double c = spec.full_axes[2] / 2.0;
    const double cs = std::cos(angle);
    const double sn = std::sin(angle);
    SilhouetteEllipse e;
    if (spec.orientation == Orientation::vertical_long_axis) {
        // local x stands vertical; rotation mixes the y/z semi-axes horizontally
        e.semi_vertical = a;
        e.semi_horizontal = std::hypot(b * cs, c * sn);
    } else {
        // local y stands vertical; rotation mixes the x/z semi-axes horizontally
        e.semi_vertical = b;
        e.semi_horizontal = std::hypot(a * cs, c * sn);
    }
    return e;
}

Mask render_silhouette(const SolidSpec& spec, double angle, Dims dims) {
    const SilhouetteEllipse e = projected_ellipse(spec, angle);
    const double cx = dims.width / 2.0 + spec.center_offset[0];
    const double cy = dims.height / 2.0 + spec.center_offset[1];
    if (cx - e.semi_horizontal < 0.0 || cx + e.semi_horizontal > dims.width ||
        cy - e.semi_vertical < 0.0 || cy + e.semi_vertical > dims.height) {
        std::ostringstream msg;
        msg << "silhouette out of bounds at angle " << angle << " (extent "
            << 2.0 * e.semi_horizontal << "x" << 2.0 * e.semi_vertical << " px in " << dims.width
            << "x" << dims.height << ")";
        throw GeometryError(msg.str());
    }

    Mask mask(dims.width, dims.height);
    const int row_lo = std::max(0, static_cast<int>(std::floor(cy - e.semi_vertical - 0.5)));
    const int row_hi = std::min(dims.height - 1, static_cast<int>(std::ceil(cy + e.semi_vertical - 0.5)));
    for (int row = row_lo; row <= row_hi; ++row) {
        const double dy = (row + 0.5 - cy) / e.semi_vertical;
        if (std::fabs(dy) > 1.0) continue;
        const double half = e.semi_horizontal * std::sqrt(1.0 - dy * dy);
        const int col_lo = static_cast<int>(std::ceil(cx - half - 0.5));
        const int col_hi = static_cast<int>(std::floor(cx + half - 0.5));
        for (int col = std::max(0, col_lo); col <= std::min(dims.width - 1, col_hi); ++col)
            mask.set(col, row, true);
    }
    return mask;
}

std::vector<Mask> render_rotation_sequence(const SolidSpec& spec, const FrameSequenceMeta& meta,
                                           Dims dims) {
    spec.validate();
    meta.validate();
    std::vector<Mask> frames(static_cast<std::size_t>(meta.n_frames), Mask(dims.width, dims.height));
    parallel_for_index(frames.size(), [&](std::size_t k) {
        frames[k] = render_silhouette(spec, meta.angle_of_frame(static_cast<int>(k)), dims);
    });
    return frames;
}

double analytic_volume(const SolidSpec& spec) {
    spec.validate();
    return std::numbers::pi / 6.0 * spec.full_axes[0] * spec.full_axes[1] * spec.full_axes[2];
}

double thomsen_surface_area(const SolidSpec& spec) {
    spec.validate();
    constexpr double p = 1.6075;
    const double a = std::pow(spec.full_axes[0] / 2.0, p);
    const double b = std::pow(spec.full_axes[1] / 2.0, p);
    const double c = std::pow(spec.full_axes[2] / 2.0, p);
    return 4.0 * std::numbers::pi * std::pow((a * b + a * c + b * c) / 3.0, 1.0 / p);
}

namespace {

const char* kind_name(SolidKind kind) {
    return kind == SolidKind::spheroid ? "spheroid" : "triaxial-ellipsoid";
}

const char* orientation_name(Orientation o) {
    return o == Orientation::vertical_long_axis ? "vertical-long-axis" : "horizontal-long-axis";
}

SolidKind parse_kind(const std::string& s) {
    if (s == "spheroid") return SolidKind::spheroid;
    if (s == "triaxial-ellipsoid") return SolidKind::triaxial_ellipsoid;
    throw ConfigError("unknown solid kind \"" + s + "\"");
}

Orientation parse_orientation(const std::string& s) {
    if (s == "vertical-long-axis") return Orientation::vertical_long_axis;
    if (s == "horizontal-long-axis") return Orientation::horizontal_long_axis;
    throw ConfigError("unknown orientation \"" + s + "\"");
}

} // namespace

Scene parse_scene(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("scene is not valid JSON: ") + e.what());
    }
    Scene scene;
    try {
        scene.solid.kind = parse_kind(j.at("kind").get<std::string>());
        const auto axes = j.at("full_axes");
        if (!axes.is_array() || axes.size() != 3) throw ConfigError("full_axes must be [A, B, C]");
        for (int i = 0; i < 3; ++i) scene.solid.full_axes[i] = axes[i].get<double>();
        scene.solid.orientation = parse_orientation(j.at("orientation").get<std::string>());
        const auto off = j.at("center_offset");
        if (!off.is_array() || off.size() != 2) throw ConfigError("center_offset must be [dx, dy]");
        for (int i = 0; i < 2; ++i) scene.solid.center_offset[i] = off[i].get<double>();
        scene.meta.fps = j.at("fps").get<double>();
        scene.meta.rotation_period = j.at("rotation_period_s").get<double>();
        scene.meta.n_frames = j.at("n_frames").get<int>();
        const auto dims = j.at("dims");
        if (!dims.is_array() || dims.size() != 2) throw ConfigError("dims must be [width, height]");
        scene.dims.width = dims[0].get<int>();
        scene.dims.height = dims[1].get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("scene field error: ") + e.what());
    }
    scene.solid.validate();
    scene.meta.validate();
    if (scene.dims.width <= 0 || scene.dims.height <= 0)
        throw ConfigError("scene dims must be positive");
    return scene;
}

Scene load_scene(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open scene file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return with_context("scene " + path, [&] { return parse_scene(buf.str()); });
}

std::string scene_to_json(const Scene& scene) {
    nlohmann::ordered_json j;
    j["kind"] = kind_name(scene.solid.kind);
    j["full_axes"] = {scene.solid.full_axes[0], scene.solid.full_axes[1], scene.solid.full_axes[2]};
    j["orientation"] = orientation_name(scene.solid.orientation);
    j["center_offset"] = {scene.solid.center_offset[0], scene.solid.center_offset[1]};
    j["fps"] = scene.meta.fps;
    j["rotation_period_s"] = scene.meta.rotation_period;
    j["n_frames"] = scene.meta.n_frames;
    j["dims"] = {scene.dims.width, scene.dims.height};
    return j.dump(2) + "\n";
}

} // namespace silhouvol
