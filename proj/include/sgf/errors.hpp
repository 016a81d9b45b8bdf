#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace sgf {

/// Root of all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad grid spec, alpha out of range, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Configuration could not be parsed or failed validation. `key` is the JSON path.
class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& what)
        : Error(key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Base for failures raised while integrating or solving (CLI exit code 3).
class NumericalFailure : public Error {
public:
    using Error::Error;
};

/// A field picked up NaN or Inf.
class NonFiniteError : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

/// NaN detected inside a time step; carries where it happened.
class StepFailure : public NumericalFailure {
public:
    StepFailure(double time, int stage, const std::string& what)
        : NumericalFailure("step failed at t=" + std::to_string(time) + " stage " +
                           std::to_string(stage) + ": " + what),
          time_(time), stage_(stage) {}
    double time() const noexcept { return time_; }
    int stage() const noexcept { return stage_; }

private:
    double time_;
    int stage_;
};

class CflViolation : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

/// Vorticity reached the truncation radius.
class TailMassBreach : public NumericalFailure {
public:
    TailMassBreach(double time, double tail, double threshold)
        : NumericalFailure(describe(time, tail, threshold)),
          time_(time), tail_(tail) {}
    double time() const noexcept { return time_; }
    double tail() const noexcept { return tail_; }

private:
    static std::string describe(double time, double tail, double threshold)
    {
        char buf[128];
        std::snprintf(buf, sizeof buf, "tail mass %.3e exceeds %.3e at t=%.6g", tail, threshold, time);
        return buf;
    }

    double time_;
    double tail_;
};

class SingularFactorization : public NumericalFailure {
public:
    SingularFactorization(int mode, int info)
        : NumericalFailure("singular banded factorization for mode " + std::to_string(mode) +
                           " (info=" + std::to_string(info) + ")"),
          mode_(mode) {}
    int mode() const noexcept { return mode_; }

private:
    int mode_;
};

/// The mode-0 Poisson problem was handed a vorticity with nonzero total integral.
class IllPosedMode0 : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

/// Rate fit cannot be formed (too few points, nonpositive values).
class DegenerateFit : public Error {
public:
    using Error::Error;
};

/// A resolution requirement (cells per collar width) is not met.
class UnresolvedError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Snapshot times or grids of two trajectories do not line up.
class MismatchError : public Error {
public:
    using Error::Error;
};

}  // namespace sgf
