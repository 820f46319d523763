#pragma once

#include "silhouvol/geometry_synth.hpp"
#include "silhouvol/mask.hpp"
#include "silhouvol/metrics_report.hpp"
#include "silhouvol/segmentation.hpp"
#include "silhouvol/slice_horizontal.hpp"

#include <string>
#include <vector>

namespace silhouvol {

/// Frame files in a directory, sorted lexicographically. Filenames must end
/// in a run of digits before the extension and all runs must share one width
/// (zero-padded), so lexicographic and numeric order agree on every platform.
/// `extensions` holds the admissible suffixes, e.g. {".png", ".pgm"}.
std::vector<std::string> list_frames(const std::string& dir,
                                     const std::vector<std::string>& extensions);

/// Writes content to a sibling temp file, then renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

/// Loads every mask in the directory concurrently (PNG or PGM).
std::vector<Mask> load_mask_dir(const std::string& dir);

/// Keys and cleans every PNG frame of in_dir into out_dir (same filenames).
/// Returns the number of frames written.
int segment_directory(const std::string& in_dir, const std::string& out_dir,
                      const ChromaKeyConfig& cfg);

/// Renders a scene into out_dir as frame_<index>.<ext> with equal-width
/// zero-padded indices. format is "png" or "pgm" for masks; rgb = true writes
/// green-screen RGB PNGs (flesh tone on green) for exercising segmentation.
/// Returns the number of frames written.
int synth_to_directory(const Scene& scene, const std::string& out_dir, const std::string& format,
                       bool rgb);

/// Flat green-screen rendering of one mask (foreground flesh on green).
RgbImage colorize_mask(const Mask& mask);

/// One reproducible end-to-end run. Exactly one of scene_file / frames_dir /
/// masks_dir picks the input; fps and rotation_period_s describe non-scene
/// inputs. manual_volume (in output units) defaults to the analytic oracle
/// when the input is a scene and is required otherwise.
struct RunConfig {
    std::string scene_file;
    std::string frames_dir;
    std::string masks_dir;
    double fps = 30.0;
    double rotation_period_s = 20.0;
    CalibrationMode mode = CalibrationMode::average;
    double thickness = 1.0;
    AreaSign sign = AreaSign::minus;
    int smooth_harmonics = kDefaultSmoothHarmonics;
    ChromaKeyConfig chroma;
    double cm_per_pixel = 0.0;  ///< 0 → report in pixel units
    double manual_volume = 0.0; ///< 0 → analytic oracle (scene input only)
    std::string sample_id = "sample";
    std::string report_path;
    std::string scatter_path; ///< optional

    void validate() const;
};

RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

/// Runs the full pipeline (both estimators, all three calibration modes) and
/// writes the report JSON plus the optional scatter CSV atomically. Identical
/// config and inputs produce byte-identical files. Returns the report.
Report run(const RunConfig& config);

} // namespace silhouvol
