#pragma once

#include <stdexcept>
#include <string>

namespace esd {

// Base class for every error this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

struct NonHermitianInput : Error {
    explicit NonHermitianInput(const std::string& what) : Error(what) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& what) : Error(what) {}
};

struct InvalidLevel : Error {
    explicit InvalidLevel(const std::string& what) : Error(what) {}
};

struct ZeroDetuning : Error {
    explicit ZeroDetuning(const std::string& what) : Error(what) {}
};

struct SeriesNotConverged : Error {
    explicit SeriesNotConverged(const std::string& what) : Error(what) {}
};

struct InvalidState : Error {
    explicit InvalidState(const std::string& what) : Error(what) {}
};

struct UnsupportedInitialState : Error {
    explicit UnsupportedInitialState(const std::string& what) : Error(what) {}
};

struct EmptySeries : Error {
    explicit EmptySeries(const std::string& what) : Error(what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

struct UnknownPreset : Error {
    explicit UnknownPreset(const std::string& what) : Error(what) {}
};

struct NumericalFailure : Error {
    explicit NumericalFailure(const std::string& what) : Error(what) {}
};

} // namespace esd
