#pragma once

#include <stdexcept>
#include <string>

namespace fusionwalk {

/// Thrown when an operation needs fusion products that leave a truncated window.
struct TruncationOverflow : std::runtime_error {
    explicit TruncationOverflow(const std::string& what) : std::runtime_error(what) {}
};

struct NotFinite : std::runtime_error {
    explicit NotFinite(const std::string& what) : std::runtime_error(what) {}
};

struct NotConnected : std::runtime_error {
    explicit NotConnected(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidSpec : std::runtime_error {
    explicit InvalidSpec(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct ShapeMismatch : std::runtime_error {
    explicit ShapeMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct SupportViolation : std::runtime_error {
    explicit SupportViolation(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroMatrix : std::runtime_error {
    explicit ZeroMatrix(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyWindow : std::runtime_error {
    explicit EmptyWindow(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fusionwalk
