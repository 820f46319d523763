#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "silhouvol/errors.hpp"

namespace silhouvol {

/// Binary foreground image of one frame. Row-major, one byte per pixel,
/// 0 = background, 1 = foreground.
class Mask {
public:
    Mask() = default;

    Mask(int width, int height) : width_(width), height_(height) {
        if (width <= 0 || height <= 0) {
            throw ConfigError("Mask: dimensions must be positive, got " +
                              std::to_string(width) + "x" + std::to_string(height));
        }
        bits_.assign(static_cast<std::size_t>(width) * height, 0);
    }

    int width() const { return width_; }
    int height() const { return height_; }

    bool at(int x, int y) const { return bits_[index(x, y)] != 0; }
    void set(int x, int y, bool fg) { bits_[index(x, y)] = fg ? 1 : 0; }

    const std::vector<std::uint8_t>& bits() const { return bits_; }
    std::vector<std::uint8_t>& bits() { return bits_; }

    std::size_t foreground_count() const {
        std::size_t n = 0;
        for (auto b : bits_) n += b;
        return n;
    }

    bool operator==(const Mask& other) const {
        return width_ == other.width_ && height_ == other.height_ && bits_ == other.bits_;
    }
    bool operator!=(const Mask& other) const { return !(*this == other); }

private:
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * width_ + x;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> bits_;
};

} // namespace silhouvol
