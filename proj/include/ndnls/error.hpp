#pragma once

#include <stdexcept>
#include <string>

namespace ndnls {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// Potential lies outside the small-norm regime.
class GateError : public Error {
public:
    GateError(const std::string& what, double value)
        : Error(what), value_(value) {}
    double value() const noexcept { return value_; }

private:
    double value_;
};

// a or d came too close to zero on the spectral grid.
class SpectralSingularityError : public Error {
public:
    using Error::Error;
};

class BranchError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual, double contraction)
        : Error(what), residual_(residual), contraction_(contraction) {}
    double residual() const noexcept { return residual_; }
    double contraction() const noexcept { return contraction_; }

private:
    double residual_;
    double contraction_;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class BlowUpError : public Error {
public:
    BlowUpError(const std::string& what, double last_t) : Error(what), last_t_(last_t) {}
    double last_valid_time() const noexcept { return last_t_; }

private:
    double last_t_;
};

class DomainError : public Error {
public:
    using Error::Error;
};

} // namespace ndnls
