#pragma once

#include <stdexcept>
#include <string>

namespace silhouvol {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid configuration, invalid arguments, missing or malformed inputs. Exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// File decode/encode failures. Treated as an input problem (exit code 2).
class IoError : public Error {
public:
    using Error::Error;
};

/// Segmentation produced no usable object (empty foreground, broken mask). Exit code 3.
class SegmentationError : public Error {
public:
    using Error::Error;
};

/// Geometric estimation failure (degenerate profile, negative slice area,
/// insufficient angular coverage). Exit code 4.
class GeometryError : public Error {
public:
    using Error::Error;
};

namespace exit_code {
constexpr int ok = 0;
constexpr int config = 2;
constexpr int segmentation = 3;
constexpr int geometry = 4;
} // namespace exit_code

/// Runs fn and prefixes any library error with `context` (e.g. "frame 17"),
/// preserving the error type so exit-code mapping stays intact.
template <typename Fn>
decltype(auto) with_context(const std::string& context, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        throw ConfigError(context + ": " + e.what());
    } catch (const IoError& e) {
        throw IoError(context + ": " + e.what());
    } catch (const SegmentationError& e) {
        throw SegmentationError(context + ": " + e.what());
    } catch (const GeometryError& e) {
        throw GeometryError(context + ": " + e.what());
    }
}

} // namespace silhouvol
