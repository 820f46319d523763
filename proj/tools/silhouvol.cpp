#include "silhouvol/boundary.hpp"
#include "silhouvol/errors.hpp"
#include "silhouvol/geometry_synth.hpp"
#include "silhouvol/metrics_report.hpp"
#include "silhouvol/pipeline.hpp"
#include "silhouvol/revolve_vertical.hpp"
#include "silhouvol/slice_horizontal.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <iostream>
#include <string>

namespace sv = silhouvol;

namespace {

nlohmann::ordered_json horizontal_mode_json(const sv::HorizontalEstimate& est, double cm_per_pixel) {
    nlohmann::ordered_json j;
    j["volume_px3"] = est.volume;
    if (cm_per_pixel > 0.0)
        j["volume_cm3"] = sv::to_physical(est.volume, sv::ScaleCalibration{cm_per_pixel}, 3);
    j["h_target_px"] = est.h_target;
    j["slice_thickness_px"] = est.slice_thickness;
    j["slice_areas_px2"] = est.slice_areas;
    j["clamped_slices"] = est.clamped_slices;
    return j;
}

struct SynthArgs {
    std::string scene;
    std::string out;
    std::string format = "png";
    bool rgb = false;
};

struct SegmentArgs {
    std::string in;
    std::string out;
    sv::ChromaKeyConfig chroma;
};

struct VerticalArgs {
    std::string masks;
    double scale = 0.0;
    std::string report;
    std::string dump_profile;
};

struct HorizontalArgs {
    std::string masks;
    double fps = 30.0;
    double period = 20.0;
    std::string mode = "average";
    double thickness = 1.0;
    std::string sign = "minus";
    int smooth_harmonics = sv::kDefaultSmoothHarmonics;
    double scale = 0.0;
    std::string report;
};

struct ReportArgs {
    std::string in;
    std::string out;
    std::string scatter;
};

int do_synth(const SynthArgs& args) {
    const sv::Scene scene = sv::load_scene(args.scene);
    const int n = sv::synth_to_directory(scene, args.out, args.format, args.rgb);
    std::cout << "wrote " << n << (args.rgb ? " green-screen frames to " : " mask frames to ")
              << args.out << "\n";
    return sv::exit_code::ok;
}

int do_segment(const SegmentArgs& args) {
    const int n = sv::segment_directory(args.in, args.out, args.chroma);
    std::cout << "segmented " << n << " frames into " << args.out << "\n";
    return sv::exit_code::ok;
}

int do_vertical(const VerticalArgs& args) {
    const std::vector<sv::Mask> masks = sv::load_mask_dir(args.masks);
    if (!args.dump_profile.empty())
        sv::write_file_atomic(args.dump_profile, sv::profile_csv(sv::extract_profile(masks.front())));
    const sv::RevolveEstimate est = sv::estimate_vertical(masks);

    nlohmann::ordered_json doc;
    doc["frames"] = masks.size();
    doc["mean_volume_px3"] = est.mean_volume;
    doc["mean_area_px2"] = est.mean_area;
    doc["frame_std_px3"] = est.frame_std;
    if (args.scale > 0.0) {
        const sv::ScaleCalibration scale{args.scale};
        doc["cm_per_pixel"] = args.scale;
        doc["mean_volume_cm3"] = sv::to_physical(est.mean_volume, scale, 3);
        doc["mean_area_cm2"] = sv::to_physical(est.mean_area, scale, 2);
    }
    doc["per_frame_volume_px3"] = est.per_frame_volume;
    doc["per_frame_area_px2"] = est.per_frame_area;
    if (!args.report.empty()) sv::write_file_atomic(args.report, doc.dump(2) + "\n");

    std::cout << "vertical volume " << est.mean_volume << " px^3, surface " << est.mean_area
              << " px^2 over " << masks.size() << " frames";
    if (args.scale > 0.0)
        std::cout << " (" << sv::to_physical(est.mean_volume, sv::ScaleCalibration{args.scale}, 3)
                  << " cm^3)";
    std::cout << "\n";
    return sv::exit_code::ok;
}

int do_horizontal(const HorizontalArgs& args) {
    const std::vector<sv::Mask> masks = sv::load_mask_dir(args.masks);
    const std::vector<sv::BoundaryProfile> profiles = sv::profile_frames(masks);
    sv::FrameSequenceMeta meta;
    meta.fps = args.fps;
    meta.rotation_period = args.period;
    meta.n_frames = static_cast<int>(masks.size());
    meta.validate();
    const sv::AreaSign sign = sv::parse_sign(args.sign);
    const sv::CalibrationMode selected = sv::parse_mode(args.mode);

    const sv::HorizontalEstimate h_short = sv::estimate_horizontal_from_profiles(
        profiles, meta, sv::CalibrationMode::shortest, args.thickness, sign, args.smooth_harmonics);
    const sv::HorizontalEstimate h_avg = sv::estimate_horizontal_from_profiles(
        profiles, meta, sv::CalibrationMode::average, args.thickness, sign, args.smooth_harmonics);
    const sv::HorizontalEstimate h_long = sv::estimate_horizontal_from_profiles(
        profiles, meta, sv::CalibrationMode::longest, args.thickness, sign, args.smooth_harmonics);
    const sv::HorizontalEstimate& picked = selected == sv::CalibrationMode::shortest ? h_short
                                           : selected == sv::CalibrationMode::longest ? h_long
                                                                                      : h_avg;

    nlohmann::ordered_json doc;
    doc["frames"] = masks.size();
    doc["fps"] = args.fps;
    doc["rotation_period_s"] = args.period;
    doc["thickness_px"] = args.thickness;
    doc["eq45_sign"] = args.sign;
    doc["smooth_harmonics"] = args.smooth_harmonics;
    doc["mode"] = args.mode;
    doc["volume_px3"] = picked.volume;
    if (args.scale > 0.0) {
        doc["cm_per_pixel"] = args.scale;
        doc["volume_cm3"] = sv::to_physical(picked.volume, sv::ScaleCalibration{args.scale}, 3);
    }
    doc["modes"] = {{"short", horizontal_mode_json(h_short, args.scale)},
                    {"average", horizontal_mode_json(h_avg, args.scale)},
                    {"long", horizontal_mode_json(h_long, args.scale)}};
    if (!args.report.empty()) sv::write_file_atomic(args.report, doc.dump(2) + "\n");

    std::cout << "horizontal volume (" << args.mode << " mode) " << picked.volume << " px^3 over "
              << masks.size() << " frames";
    if (args.scale > 0.0)
        std::cout << " (" << sv::to_physical(picked.volume, sv::ScaleCalibration{args.scale}, 3)
                  << " cm^3)";
    if (!picked.clamped_slices.empty())
        std::cout << "; " << picked.clamped_slices.size() << " slices clamped to zero area";
    std::cout << "\n";
    return sv::exit_code::ok;
}

int do_report(const ReportArgs& args) {
    const std::vector<sv::MeasurementRecord> records = sv::load_records(args.in);
    const sv::Report report = sv::emit_report(records);
    sv::write_file_atomic(args.out, report.json_text);
    if (!args.scatter.empty()) sv::write_file_atomic(args.scatter, report.csv_text);

    const auto doc = nlohmann::json::parse(report.json_text);
    std::cout << records.size() << " samples: mae_vertical "
              << doc["summary"]["mae_vertical"].get<double>() << "%, mae_horizontal "
              << doc["summary"]["mae_horizontal"].get<double>() << "%\n";
    return sv::exit_code::ok;
}

int do_run(const sv::RunConfig& cfg) {
    const sv::Report report = sv::run(cfg);
    const auto doc = nlohmann::json::parse(report.json_text);
    const auto& row = doc["samples"][0];
    std::cout << "sample " << row["id"].get<std::string>() << ": manual "
              << row["manual_cm3"].get<double>() << ", vertical "
              << row["vertical_cm3"].get<double>() << " ("
              << row["vertical_err_pct"].get<double>() << "%), horizontal-average "
              << row["horizontal_cm3"]["average"].get<double>() << " ("
              << row["horizontal_err_pct"]["average"].get<double>() << "%)\n";
    std::cout << "report written to " << cfg.report_path << "\n";
    return sv::exit_code::ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Estimates object volume and surface area from turntable silhouette sequences"};
    app.require_subcommand(1);

    SynthArgs synth_args;
    CLI::App* synth = app.add_subcommand("synth", "Render silhouette frames of a scene file");
    synth->add_option("--scene", synth_args.scene, "Scene description JSON")->required();
    synth->add_option("--out", synth_args.out, "Output frame directory")->required();
    synth->add_option("--format", synth_args.format, "Mask file format")
        ->check(CLI::IsMember({"png", "pgm"}))
        ->capture_default_str();
    synth->add_flag("--rgb", synth_args.rgb, "Write green-screen RGB frames instead of masks");

    SegmentArgs segment_args;
    CLI::App* segment = app.add_subcommand("segment", "Chroma-key green-screen frames into masks");
    segment->add_option("--in", segment_args.in, "Input RGB frame directory")->required();
    segment->add_option("--out", segment_args.out, "Output mask directory")->required();
    segment->add_option("--hue", segment_args.chroma.hue_center, "Background hue center, degrees")
        ->capture_default_str();
    segment->add_option("--tol", segment_args.chroma.hue_tolerance, "Hue tolerance, degrees")
        ->capture_default_str();
    segment
        ->add_option("--min-sat", segment_args.chroma.min_saturation,
                     "Minimum background saturation")
        ->capture_default_str();
    segment->add_option("--min-val", segment_args.chroma.min_value, "Minimum background value")
        ->capture_default_str();

    VerticalArgs vertical_args;
    CLI::App* vertical =
        app.add_subcommand("estimate-vertical", "Average per-frame solids of revolution");
    vertical->add_option("--masks", vertical_args.masks, "Mask directory")->required();
    vertical->add_option("--scale", vertical_args.scale, "cm per pixel (omit for pixel units)");
    vertical->add_option("--report", vertical_args.report, "Report JSON path");
    vertical->add_option("--dump-profile", vertical_args.dump_profile,
                         "Write the first frame's boundary profile CSV here");

    HorizontalArgs horizontal_args;
    CLI::App* horizontal =
        app.add_subcommand("estimate-horizontal", "Sum calibrated slice areas across frames");
    horizontal->add_option("--masks", horizontal_args.masks, "Mask directory")->required();
    horizontal->add_option("--fps", horizontal_args.fps, "Capture frame rate")
        ->capture_default_str();
    horizontal->add_option("--period", horizontal_args.period, "Turntable seconds per revolution")
        ->capture_default_str();
    horizontal->add_option("--mode", horizontal_args.mode, "Height calibration mode")
        ->check(CLI::IsMember({"short", "average", "long"}))
        ->capture_default_str();
    horizontal->add_option("--thickness", horizontal_args.thickness, "Slice thickness, px")
        ->capture_default_str();
    horizontal->add_option("--eq45-sign", horizontal_args.sign, "Derivative term sign")
        ->check(CLI::IsMember({"minus", "plus"}))
        ->capture_default_str();
    horizontal
        ->add_option("--smooth-harmonics", horizontal_args.smooth_harmonics,
                     "Fourier harmonics kept when smoothing width functions (0 = off)")
        ->capture_default_str();
    horizontal->add_option("--scale", horizontal_args.scale, "cm per pixel (omit for pixel units)");
    horizontal->add_option("--report", horizontal_args.report, "Report JSON path");

    ReportArgs report_args;
    CLI::App* report = app.add_subcommand("report", "Summarize measurement records");
    report->add_option("--in", report_args.in, "Records JSON")->required();
    report->add_option("--out", report_args.out, "Report JSON path")->required();
    report->add_option("--scatter", report_args.scatter, "Scatter CSV path");

    std::string run_config_path;
    std::string run_mode, run_sign, run_report, run_scatter, run_sample_id;
    double run_fps = 0.0, run_period = 0.0, run_thickness = 0.0, run_scale = 0.0, run_manual = 0.0;
    int run_harmonics = 0;
    CLI::App* run_cmd = app.add_subcommand("run", "Full pipeline from a config file");
    run_cmd->add_option("--config", run_config_path, "Run config JSON")->required();
    run_cmd->add_option("--mode", run_mode, "Override: calibration mode")
        ->check(CLI::IsMember({"short", "average", "long"}));
    run_cmd->add_option("--eq45-sign", run_sign, "Override: derivative term sign")
        ->check(CLI::IsMember({"minus", "plus"}));
    run_cmd->add_option("--fps", run_fps, "Override: frame rate");
    run_cmd->add_option("--period", run_period, "Override: seconds per revolution");
    run_cmd->add_option("--thickness", run_thickness, "Override: slice thickness, px");
    run_cmd->add_option("--smooth-harmonics", run_harmonics, "Override: smoothing harmonics");
    run_cmd->add_option("--scale", run_scale, "Override: cm per pixel");
    run_cmd->add_option("--manual", run_manual, "Override: manual reference volume");
    run_cmd->add_option("--sample-id", run_sample_id, "Override: sample id");
    run_cmd->add_option("--report", run_report, "Override: report JSON path");
    run_cmd->add_option("--scatter", run_scatter, "Override: scatter CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? sv::exit_code::ok : sv::exit_code::config;
    }

    try {
        if (app.got_subcommand(synth)) return do_synth(synth_args);
        if (app.got_subcommand(segment)) return do_segment(segment_args);
        if (app.got_subcommand(vertical)) return do_vertical(vertical_args);
        if (app.got_subcommand(horizontal)) return do_horizontal(horizontal_args);
        if (app.got_subcommand(report)) return do_report(report_args);
        if (app.got_subcommand(run_cmd)) {
            sv::RunConfig cfg = sv::load_run_config(run_config_path);
            if (run_cmd->count("--mode")) cfg.mode = sv::parse_mode(run_mode);
            if (run_cmd->count("--eq45-sign")) cfg.sign = sv::parse_sign(run_sign);
            if (run_cmd->count("--fps")) cfg.fps = run_fps;
            if (run_cmd->count("--period")) cfg.rotation_period_s = run_period;
            if (run_cmd->count("--thickness")) cfg.thickness = run_thickness;
            if (run_cmd->count("--smooth-harmonics")) cfg.smooth_harmonics = run_harmonics;
            if (run_cmd->count("--scale")) cfg.cm_per_pixel = run_scale;
            if (run_cmd->count("--manual")) cfg.manual_volume = run_manual;
            if (run_cmd->count("--sample-id")) cfg.sample_id = run_sample_id;
            if (run_cmd->count("--report")) cfg.report_path = run_report;
            if (run_cmd->count("--scatter")) cfg.scatter_path = run_scatter;
            return do_run(cfg);
        }
    } catch (const sv::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return sv::exit_code::config;
    } catch (const sv::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return sv::exit_code::config;
    } catch (const sv::SegmentationError& e) {
        std::cerr << "segmentation error: " << e.what() << "\n";
        return sv::exit_code::segmentation;
    } catch (const sv::GeometryError& e) {
        std::cerr << "geometry error: " << e.what() << "\n";
        return sv::exit_code::geometry;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return sv::exit_code::ok;
}
