#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "silhouvol/errors.hpp"

namespace silhouvol {

/// 8-bit RGB image, row-major, 3 bytes per pixel.
class RgbImage {
public:
    RgbImage() = default;

    RgbImage(int width, int height) : width_(width), height_(height) {
        if (width <= 0 || height <= 0) {
            throw ConfigError("RgbImage: dimensions must be positive");
        }
        data_.assign(static_cast<std::size_t>(width) * height * 3, 0);
    }

    int width() const { return width_; }
    int height() const { return height_; }

    const std::uint8_t* pixel(int x, int y) const { return data_.data() + offset(x, y); }
    void set_pixel(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
        auto* p = data_.data() + offset(x, y);
        p[0] = r;
        p[1] = g;
        p[2] = b;
    }

    const std::vector<std::uint8_t>& data() const { return data_; }
    std::vector<std::uint8_t>& data() { return data_; }

private:
    std::size_t offset(int x, int y) const {
        return (static_cast<std::size_t>(y) * width_ + x) * 3;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

} // namespace silhouvol
