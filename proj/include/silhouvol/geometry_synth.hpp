#pragma once

#include "silhouvol/mask.hpp"

#include <array>
#include <string>
#include <vector>

namespace silhouvol {

enum class SolidKind { spheroid, triaxial_ellipsoid };
enum class Orientation { vertical_long_axis, horizontal_long_axis };

/// Parametric solid on the virtual turntable. full_axes are full lengths
/// (diameters) along the object-local x/y/z axes, in pixels.
struct SolidSpec {
    SolidKind kind = SolidKind::spheroid;
    std::array<double, 3> full_axes{0.0, 0.0, 0.0};
    Orientation orientation = Orientation::vertical_long_axis;
    std::array<double, 2> center_offset{0.0, 0.0}; ///< (dx, dy) from image center, px

    void validate() const; ///< throws ConfigError unless all axes are positive
};

/// Uniform-rotation capture parameters. Projection is orthographic; the angle
/// of frame k is 2π·k/(fps·rotation_period).
struct FrameSequenceMeta {
    double fps = 30.0;
    double rotation_period = 20.0; ///< seconds per full revolution
    int n_frames = 600;

    void validate() const; ///< throws ConfigError on nonpositive rates or n_frames < 2
    double angle_of_frame(int k) const;
};

struct Dims {
    int width = 0;
    int height = 0;
};

/// Semi-axes of the silhouette ellipse at turntable angle `angle`. Both
/// orientations keep a principal axis vertical, so the silhouette stays an
/// axis-aligned ellipse; rotation only modulates the horizontal semi-axis.
struct SilhouetteEllipse {
    double semi_horizontal = 0.0;
    double semi_vertical = 0.0;
};

SilhouetteEllipse projected_ellipse(const SolidSpec& spec, double angle);

/// Binary orthographic silhouette; a pixel is set iff its center lies inside
/// the projected ellipse. Throws GeometryError if the ellipse does not fit
/// entirely inside dims.
Mask render_silhouette(const SolidSpec& spec, double angle, Dims dims);

/// Frames k = 0..n_frames-1 at angles meta.angle_of_frame(k); deterministic,
/// rendered concurrently with order restored by frame index.
std::vector<Mask> render_rotation_sequence(const SolidSpec& spec, const FrameSequenceMeta& meta,
                                           Dims dims);

/// π/6·A·B·C, in px³.
double analytic_volume(const SolidSpec& spec);

/// Thomsen's ellipsoid surface approximation 4π·((aᵖbᵖ + aᵖcᵖ + bᵖcᵖ)/3)^(1/p)
/// over semi-axes a = A/2 etc., with p = 1.6075. In px².
double thomsen_surface_area(const SolidSpec& spec);

/// Scene description as stored on disk:
/// {kind, full_axes:[A,B,C], orientation, center_offset:[dx,dy],
///  fps, rotation_period_s, n_frames, dims:[w,h]}.
struct Scene {
    SolidSpec solid;
    FrameSequenceMeta meta;
    Dims dims;
};

Scene parse_scene(const std::string& json_text); ///< throws ConfigError on malformed input
Scene load_scene(const std::string& path);       ///< throws IoError / ConfigError
std::string scene_to_json(const Scene& scene);

} // namespace silhouvol
