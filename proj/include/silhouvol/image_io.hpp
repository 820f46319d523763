#pragma once

#include <filesystem>
#include <string>

#include "silhouvol/image.hpp"
#include "silhouvol/mask.hpp"

namespace silhouvol {

/// Loads a binary mask from a grayscale PNG or binary PGM (P5) file; the format
/// is detected from the file's magic bytes. Any nonzero pixel is foreground.
Mask load_mask(const std::filesystem::path& path);

/// Writes a mask as 0/255 grayscale. Format chosen by extension:
/// ".pgm" writes binary PGM (P5), anything else writes 8-bit grayscale PNG.
void save_mask(const Mask& mask, const std::filesystem::path& path);

/// Loads an 8-bit RGB frame from PNG (alpha stripped, palette/gray expanded).
RgbImage load_rgb_png(const std::filesystem::path& path);

/// Writes an 8-bit RGB PNG.
void save_rgb_png(const RgbImage& image, const std::filesystem::path& path);

} // namespace silhouvol
