#include "silhouvol/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>

namespace silhouvol {

namespace {

bool file_starts_with(const std::filesystem::path& path, const char* magic, std::size_t n,
                      std::string* err) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        *err = "cannot open " + path.string();
        return false;
    }
    std::string head(n, '\0');
    in.read(head.data(), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n) {
        *err = "file too short: " + path.string();
        return false;
    }
    return head.compare(0, n, magic, n) == 0;
}

// PGM "plain" whitespace/comment skipping per the Netpbm P5 header grammar.
int next_pgm_token(std::istream& in) {
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (!std::isspace(c)) {
            return c;
        }
        c = in.get();
    }
    return EOF;
}

long read_pgm_int(std::istream& in, const char* what, const std::filesystem::path& path) {
    int c = next_pgm_token(in);
    if (c == EOF || !std::isdigit(c)) {
        throw IoError("PGM: malformed " + std::string(what) + " in " + path.string());
    }
    long value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        if (value > std::numeric_limits<int>::max()) {
            throw IoError("PGM: " + std::string(what) + " out of range in " + path.string());
        }
        c = in.get();
    }
    return value;
}

Mask load_mask_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    char p, five;
    in.get(p);
    in.get(five);
    if (p != 'P' || five != '5') throw IoError("not a P5 PGM: " + path.string());
    const long w = read_pgm_int(in, "width", path);
    const long h = read_pgm_int(in, "height", path);
    const long maxval = read_pgm_int(in, "maxval", path);
    if (w <= 0 || h <= 0) throw IoError("PGM: zero-dimension image: " + path.string());
    if (maxval <= 0 || maxval > 255) {
        throw IoError("PGM: unsupported maxval " + std::to_string(maxval) + ": " + path.string());
    }
    // The maxval token is followed by exactly one whitespace byte, then raster data.
    std::vector<char> raw(static_cast<std::size_t>(w) * h);
    in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
        throw IoError("PGM: truncated raster: " + path.string());
    }
    Mask mask(static_cast<int>(w), static_cast<int>(h));
    for (std::size_t i = 0; i < raw.size(); ++i) {
        mask.bits()[i] = raw[i] != 0 ? 1 : 0;
    }
    return mask;
}

void save_mask_pgm(const Mask& mask, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << "P5\n" << mask.width() << " " << mask.height() << "\n255\n";
    std::vector<char> raw(mask.bits().size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        raw[i] = mask.bits()[i] ? static_cast<char>(0xFF) : 0;
    }
    out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
    if (!out) throw IoError("short write: " + path.string());
}

std::vector<std::uint8_t> read_png(const std::filesystem::path& path, png_uint_32 format,
                                   int* width, int* height, bool require_gray_source) {
    png_image img;
    std::memset(&img, 0, sizeof(img));
    img.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&img, path.string().c_str())) {
        std::string msg = img.message;
        png_image_free(&img);
        throw IoError("PNG decode failure: " + path.string() + ": " + msg);
    }
    if (img.width == 0 || img.height == 0) {
        png_image_free(&img);
        throw IoError("PNG: zero-dimension image: " + path.string());
    }
    if (require_gray_source && (img.format & PNG_FORMAT_FLAG_COLOR) != 0) {
        png_image_free(&img);
        throw IoError("PNG: mask must be single-channel, got a color image: " + path.string());
    }
    img.format = format;
    std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(img));
    if (!png_image_finish_read(&img, nullptr, buf.data(), 0, nullptr)) {
        std::string msg = img.message;
        png_image_free(&img);
        throw IoError("PNG decode failure: " + path.string() + ": " + msg);
    }
    *width = static_cast<int>(img.width);
    *height = static_cast<int>(img.height);
    return buf;
}

void write_png(const std::filesystem::path& path, png_uint_32 format, int width, int height,
               const std::uint8_t* data) {
    png_image img;
    std::memset(&img, 0, sizeof(img));
    img.version = PNG_IMAGE_VERSION;
    img.width = static_cast<png_uint_32>(width);
    img.height = static_cast<png_uint_32>(height);
    img.format = format;
    if (!png_image_write_to_file(&img, path.string().c_str(), 0, data, 0, nullptr)) {
        std::string msg = img.message;
        png_image_free(&img);
        throw IoError("PNG encode failure: " + path.string() + ": " + msg);
    }
}

} // namespace

Mask load_mask(const std::filesystem::path& path) {
    std::string err;
    if (file_starts_with(path, "P5", 2, &err)) {
        return load_mask_pgm(path);
    }
    if (!err.empty()) throw IoError(err);

    int w = 0, h = 0;
    auto gray = read_png(path, PNG_FORMAT_GRAY, &w, &h, /*require_gray_source=*/true);
    Mask mask(w, h);
    for (std::size_t i = 0; i < mask.bits().size(); ++i) {
        mask.bits()[i] = gray[i] != 0 ? 1 : 0;
    }
    return mask;
}

void save_mask(const Mask& mask, const std::filesystem::path& path) {
    if (path.extension() == ".pgm") {
        save_mask_pgm(mask, path);
        return;
    }
    std::vector<std::uint8_t> gray(mask.bits().size());
    for (std::size_t i = 0; i < gray.size(); ++i) {
        gray[i] = mask.bits()[i] ? 255 : 0;
    }
    write_png(path, PNG_FORMAT_GRAY, mask.width(), mask.height(), gray.data());
}

RgbImage load_rgb_png(const std::filesystem::path& path) {
    int w = 0, h = 0;
    auto rgb = read_png(path, PNG_FORMAT_RGB, &w, &h, /*require_gray_source=*/false);
    RgbImage image(w, h);
    image.data() = std::move(rgb);
    return image;
}

void save_rgb_png(const RgbImage& image, const std::filesystem::path& path) {
    write_png(path, PNG_FORMAT_RGB, image.width(), image.height(), image.data().data());
}

} // namespace silhouvol
