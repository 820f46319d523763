#include "silhouvol/pipeline.hpp"

#include "silhouvol/boundary.hpp"
#include "silhouvol/errors.hpp"
#include "silhouvol/image_io.hpp"
#include "silhouvol/parallel.hpp"
#include "silhouvol/revolve_vertical.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace silhouvol {

namespace {

/// Length of the digit run a frame filename must end with (before the
/// extension); 0 when there is none.
std::size_t trailing_digits(const std::string& stem) {
    std::size_t n = 0;
    while (n < stem.size() && std::isdigit(static_cast<unsigned char>(stem[stem.size() - 1 - n])))
        ++n;
    return n;
}

/// Temp-file sibling that keeps the target's extension, so format dispatch by
/// suffix still works before the rename.
fs::path tmp_sibling(const fs::path& target) {
    return target.parent_path() / (target.stem().string() + ".tmp" + target.extension().string());
}

void rename_into_place(const fs::path& tmp, const fs::path& target) {
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw IoError("cannot move " + tmp.string() + " to " + target.string() + ": " + ec.message());
}

} // namespace

std::vector<std::string> list_frames(const std::string& dir,
                                     const std::vector<std::string>& extensions) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) throw ConfigError("not a directory: " + dir);
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = entry.path().extension().string();
        if (std::find(extensions.begin(), extensions.end(), ext) == extensions.end()) continue;
        names.push_back(entry.path().filename().string());
    }
    if (names.empty()) throw ConfigError("no frames found in " + dir);
    std::sort(names.begin(), names.end());

    std::size_t width = 0;
    for (const auto& name : names) {
        const std::size_t digits = trailing_digits(fs::path(name).stem().string());
        if (digits == 0)
            throw ConfigError("frame filename \"" + name + "\" has no trailing frame index");
        if (width == 0) width = digits;
        if (digits != width)
            throw ConfigError("frame indices are not zero-padded to one width (\"" + names.front() +
                              "\" vs \"" + name + "\")");
    }

    std::vector<std::string> paths;
    paths.reserve(names.size());
    for (const auto& name : names) paths.push_back((fs::path(dir) / name).string());
    return paths;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const fs::path target(path);
    std::error_code ec;
    if (fs::exists(target, ec) && !fs::is_regular_file(target, ec)) {
        // Pipes and device files cannot be swapped in by rename; stream to them.
        std::ofstream out(target, std::ios::binary);
        if (!out) throw IoError("cannot write " + path);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("short write to " + path);
        return;
    }
    if (target.has_parent_path()) {
        fs::create_directories(target.parent_path(), ec);
    }
    const fs::path tmp = tmp_sibling(target);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("short write to " + tmp.string());
    }
    rename_into_place(tmp, target);
}


std::vector<Mask> load_mask_dir(const std::string& dir) {
    const std::vector<std::string> paths = list_frames(dir, {".png", ".pgm"});
    std::vector<Mask> masks(paths.size(), Mask(1, 1));
    parallel_for_index(paths.size(), [&](std::size_t i) {
        with_context(paths[i], [&] { masks[i] = load_mask(paths[i]); });
    });
    return masks;
}

int segment_directory(const std::string& in_dir, const std::string& out_dir,
                      const ChromaKeyConfig& cfg) {
    cfg.validate();
    const std::vector<std::string> paths = list_frames(in_dir, {".png"});
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    parallel_for_index(paths.size(), [&](std::size_t i) {
        with_context(paths[i], [&] {
            const RgbImage frame = load_rgb_png(paths[i]);
            const Mask mask = cleanup(chroma_key(frame, cfg));
            const fs::path target = fs::path(out_dir) / fs::path(paths[i]).filename();
            const fs::path tmp = tmp_sibling(target);
            save_mask(mask, tmp.string());
            rename_into_place(tmp, target);
        });
    });
    return static_cast<int>(paths.size());
}

RgbImage colorize_mask(const Mask& mask) {
    // Flesh tone on green; both sit comfortably on their side of the default
    // chroma-key window.
    constexpr unsigned char kForeground[3] = {198, 134, 116};
    constexpr unsigned char kBackground[3] = {44, 160, 66};
    RgbImage img(mask.width(), mask.height());
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x) {
            const unsigned char* c = mask.at(x, y) ? kForeground : kBackground;
            img.set_pixel(x, y, c[0], c[1], c[2]);
        }
    return img;
}

int synth_to_directory(const Scene& scene, const std::string& out_dir, const std::string& format,
                       bool rgb) {
    if (format != "png" && format != "pgm")
        throw ConfigError("unknown output format \"" + format + "\" (want png or pgm)");
    scene.solid.validate();
    scene.meta.validate();
    std::error_code ec;
    fs::create_directories(out_dir, ec);

    const std::string ext = rgb ? "png" : format;
    std::size_t width = std::to_string(scene.meta.n_frames - 1).size();
    width = std::max<std::size_t>(width, 4);

    parallel_for_index(static_cast<std::size_t>(scene.meta.n_frames), [&](std::size_t k) {
        with_context("frame " + std::to_string(k), [&] {
            const Mask mask = render_silhouette(
                scene.solid, scene.meta.angle_of_frame(static_cast<int>(k)), scene.dims);
            std::string index = std::to_string(k);
            index.insert(0, width - index.size(), '0');
            const fs::path target = fs::path(out_dir) / ("frame_" + index + "." + ext);
            const fs::path tmp = tmp_sibling(target);
            if (rgb)
                save_rgb_png(colorize_mask(mask), tmp.string());
            else
                save_mask(mask, tmp.string());
            rename_into_place(tmp, target);
        });
    });
    return scene.meta.n_frames;
}

void RunConfig::validate() const {
    const int sources = (scene_file.empty() ? 0 : 1) + (frames_dir.empty() ? 0 : 1) +
                        (masks_dir.empty() ? 0 : 1);
    if (sources != 1)
        throw ConfigError("exactly one input source (scene, frames or masks) must be set");
    if (report_path.empty()) throw ConfigError("report path must be set");
    if (!(fps > 0.0)) throw ConfigError("fps must be positive");
    if (!(rotation_period_s > 0.0)) throw ConfigError("rotation_period_s must be positive");
    if (!(thickness >= 1.0)) throw ConfigError("thickness must be at least 1 px");
    if (smooth_harmonics < 0) throw ConfigError("smooth_harmonics must be nonnegative");
    if (cm_per_pixel < 0.0) throw ConfigError("cm_per_pixel must be nonnegative");
    if (manual_volume < 0.0) throw ConfigError("manual_volume must be nonnegative");
    chroma.validate();
}

namespace {

void reject_unknown_keys(const nlohmann::json& obj, const std::vector<std::string>& known,
                         const std::string& where) {
    for (const auto& item : obj.items()) {
        if (std::find(known.begin(), known.end(), item.key()) == known.end())
            throw ConfigError("unknown " + where + " key \"" + item.key() + "\"");
    }
}

} // namespace

RunConfig parse_run_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("run config is not valid JSON: ") + e.what());
    }
    RunConfig cfg;
    try {
        reject_unknown_keys(j, {"scene", "frames", "masks", "fps", "rotation_period_s", "mode",
                                "thickness", "eq45_sign", "smooth_harmonics", "chroma",
                                "cm_per_pixel", "manual_volume", "sample_id", "report", "scatter"},
                            "run config");
        if (j.contains("scene")) cfg.scene_file = j["scene"].get<std::string>();
        if (j.contains("frames")) cfg.frames_dir = j["frames"].get<std::string>();
        if (j.contains("masks")) cfg.masks_dir = j["masks"].get<std::string>();
        if (j.contains("fps")) cfg.fps = j["fps"].get<double>();
        if (j.contains("rotation_period_s")) cfg.rotation_period_s = j["rotation_period_s"].get<double>();
        if (j.contains("mode")) cfg.mode = parse_mode(j["mode"].get<std::string>());
        if (j.contains("thickness")) cfg.thickness = j["thickness"].get<double>();
        if (j.contains("eq45_sign")) cfg.sign = parse_sign(j["eq45_sign"].get<std::string>());
        if (j.contains("smooth_harmonics")) cfg.smooth_harmonics = j["smooth_harmonics"].get<int>();
        if (j.contains("chroma")) {
            const auto& c = j["chroma"];
            reject_unknown_keys(c, {"hue", "tol", "min_sat", "min_val"}, "chroma");
            if (c.contains("hue")) cfg.chroma.hue_center = c["hue"].get<double>();
            if (c.contains("tol")) cfg.chroma.hue_tolerance = c["tol"].get<double>();
            if (c.contains("min_sat")) cfg.chroma.min_saturation = c["min_sat"].get<double>();
            if (c.contains("min_val")) cfg.chroma.min_value = c["min_val"].get<double>();
        }
        if (j.contains("cm_per_pixel")) cfg.cm_per_pixel = j["cm_per_pixel"].get<double>();
        if (j.contains("manual_volume")) cfg.manual_volume = j["manual_volume"].get<double>();
        if (j.contains("sample_id")) cfg.sample_id = j["sample_id"].get<std::string>();
        if (j.contains("report")) cfg.report_path = j["report"].get<std::string>();
        if (j.contains("scatter")) cfg.scatter_path = j["scatter"].get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("run config field error: ") + e.what());
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open run config " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return with_context("run config " + path, [&] { return parse_run_config(buf.str()); });
}

Report run(const RunConfig& config) {
    config.validate();

    std::vector<Mask> masks;
    FrameSequenceMeta meta;
    double oracle_px3 = 0.0;
    if (!config.scene_file.empty()) {
        const Scene scene = load_scene(config.scene_file);
        masks = render_rotation_sequence(scene.solid, scene.meta, scene.dims);
        meta = scene.meta;
        oracle_px3 = analytic_volume(scene.solid);
    } else if (!config.frames_dir.empty()) {
        const std::vector<std::string> paths = list_frames(config.frames_dir, {".png"});
        masks.assign(paths.size(), Mask(1, 1));
        parallel_for_index(paths.size(), [&](std::size_t i) {
            with_context(paths[i], [&] {
                masks[i] = cleanup(chroma_key(load_rgb_png(paths[i]), config.chroma));
            });
        });
        meta.fps = config.fps;
        meta.rotation_period = config.rotation_period_s;
        meta.n_frames = static_cast<int>(masks.size());
    } else {
        masks = load_mask_dir(config.masks_dir);
        meta.fps = config.fps;
        meta.rotation_period = config.rotation_period_s;
        meta.n_frames = static_cast<int>(masks.size());
    }
    meta.validate();

    const std::vector<BoundaryProfile> profiles = profile_frames(masks);
    const RevolveEstimate vertical = estimate_vertical_from_profiles(profiles);
    const HorizontalEstimate h_short = estimate_horizontal_from_profiles(
        profiles, meta, CalibrationMode::shortest, config.thickness, config.sign,
        config.smooth_harmonics);
    const HorizontalEstimate h_avg = estimate_horizontal_from_profiles(
        profiles, meta, CalibrationMode::average, config.thickness, config.sign,
        config.smooth_harmonics);
    const HorizontalEstimate h_long = estimate_horizontal_from_profiles(
        profiles, meta, CalibrationMode::longest, config.thickness, config.sign,
        config.smooth_harmonics);

    double conv = 1.0;
    if (config.cm_per_pixel > 0.0) {
        const ScaleCalibration scale{config.cm_per_pixel};
        conv = to_physical(1.0, scale, 3);
    }
    double manual = config.manual_volume;
    if (manual <= 0.0) {
        if (config.scene_file.empty())
            throw ConfigError("manual_volume is required when the input is not a scene");
        manual = oracle_px3 * conv;
    }

    MeasurementRecord record;
    record.sample_id = config.sample_id;
    record.manual_volume = manual;
    record.vertical_volume = vertical.mean_volume * conv;
    record.horizontal_short = h_short.volume * conv;
    record.horizontal_average = h_avg.volume * conv;
    record.horizontal_long = h_long.volume * conv;

    const Report report = emit_report({record});
    write_file_atomic(config.report_path, report.json_text);
    if (!config.scatter_path.empty()) write_file_atomic(config.scatter_path, report.csv_text);
    return report;
}

} // namespace silhouvol
