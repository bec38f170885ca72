#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyperselect {

// Base of every error the library throws. `code()` is a stable machine-readable tag
// used by the CLI error record.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error("DimensionMismatch", what) {}
};

class MissingProbes : public Error {
public:
    explicit MissingProbes(const std::string& what) : Error("MissingProbes", what) {}
};

class UnsupportedNorm : public Error {
public:
    explicit UnsupportedNorm(const std::string& what) : Error("UnsupportedNorm", what) {}
};

class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what) : Error("PreconditionError", what) {}
};

class EmptyIntersection : public Error {
public:
    explicit EmptyIntersection(const std::string& what) : Error("EmptyIntersection", what) {}
};

// Raised when the primal and dual evaluations of a quotient distance disagree.
// This signals a bug, never bad input.
class DualityMismatch : public Error {
public:
    DualityMismatch(double primal, double dual)
        : Error("DualityMismatch", "primal " + std::to_string(primal) + " vs dual " +
                                       std::to_string(dual)),
          primal_(primal), dual_(dual) {}
    double primal() const noexcept { return primal_; }
    double dual() const noexcept { return dual_; }

private:
    double primal_;
    double dual_;
};

class NotACover : public Error {
public:
    explicit NotACover(std::size_t point)
        : Error("NotACover", "domain point " + std::to_string(point) + " is not covered"),
          point_(point) {}
    std::size_t point() const noexcept { return point_; }

private:
    std::size_t point_;
};

class NetTooCoarse : public Error {
public:
    explicit NetTooCoarse(std::size_t point)
        : Error("NetTooCoarse",
                "no net point is close enough to the value at domain point " +
                    std::to_string(point)),
          point_(point) {}
    std::size_t point() const noexcept { return point_; }

private:
    std::size_t point_;
};

class IterationStall : public Error {
public:
    IterationStall(std::size_t point, int round)
        : Error("IterationStall", "fattened intersection empty at domain point " +
                                      std::to_string(point) + ", round " +
                                      std::to_string(round)),
          point_(point), round_(round) {}
    std::size_t point() const noexcept { return point_; }
    int round() const noexcept { return round_; }

private:
    std::size_t point_;
    int round_;
};

class CapExceeded : public Error {
public:
    explicit CapExceeded(const std::string& what) : Error("CapExceeded", what) {}
};

class DepthInsufficient : public Error {
public:
    DepthInsufficient(std::size_t row, std::size_t depth, long family = -1)
        : Error("DepthInsufficient",
                "row " + std::to_string(row) + " undecidable at depth " + std::to_string(depth) +
                    (family >= 0 ? " (family " + std::to_string(family) + ")" : "")),
          row_(row), depth_(depth), family_(family) {}
    std::size_t row() const noexcept { return row_; }
    std::size_t depth() const noexcept { return depth_; }
    long family() const noexcept { return family_; }

private:
    std::size_t row_;
    std::size_t depth_;
    long family_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error("ConfigError", what) {}
};

// A scenario-level property failed on computed output.
class InvariantViolation : public Error {
public:
    explicit InvariantViolation(const std::string& what) : Error("InvariantViolation", what) {}
};

}  // namespace hyperselect
