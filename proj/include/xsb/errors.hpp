#ifndef XSB_ERRORS_HPP
#define XSB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace xsb {

// Error classes map 1:1 onto CLI exit codes (see cli documentation).
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
    virtual int exit_code() const { return 1; }
};

struct ConfigError : Error {
    using Error::Error;
    int exit_code() const override { return 2; }
};

// tau_max too small to contain the parabola tau = |xi|^2 with margin.
struct ParabolaClipError : Error {
    using Error::Error;
    int exit_code() const override { return 3; }
};

// Requested support is empty on this grid.
struct RegionOutOfRangeError : Error {
    using Error::Error;
    int exit_code() const override { return 4; }
};

// Convolution mass escaped the representable grid beyond tolerance.
struct SupportOverflowError : Error {
    explicit SupportOverflowError(const std::string& msg, double fraction)
        : Error(msg), cropped_fraction(fraction) {}
    int exit_code() const override { return 5; }
    double cropped_fraction = 0.0;
};

// w*f exceeded the representable range.
struct WeightOverflowError : Error {
    using Error::Error;
    int exit_code() const override { return 6; }
};

// Nonlinear flow hit the pole 1 + i*t*u0 ~ 0.
struct BlowupStepError : Error {
    using Error::Error;
    int exit_code() const override { return 7; }
};

// Picard iterates grew beyond the divergence threshold.
struct NoContractionError : Error {
    using Error::Error;
    int exit_code() const override { return 8; }
};

struct IoError : Error {
    using Error::Error;
    int exit_code() const override { return 9; }
};

} // namespace xsb

#endif
