#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cgs {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed edge-list input; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// An edge joining a vertex to itself.
class SelfLoopError : public Error {
public:
    explicit SelfLoopError(const std::string& what) : Error(what) {}
};

/// Fewer than two distinct vertices in the input.
class TooSmallError : public Error {
public:
    explicit TooSmallError(const std::string& what) : Error(what) {}
};

/// Graph is not connected; carries a vertex unreachable from vertex 0.
class NotConnectedError : public Error {
public:
    explicit NotConnectedError(int unreachable)
        : Error("graph is not connected: vertex " + std::to_string(unreachable) +
                " is unreachable from vertex 0"),
          unreachable_(unreachable) {}
    int unreachable_vertex() const { return unreachable_; }

private:
    int unreachable_;
};

/// Random-graph sampler exhausted its retry budget without a connected sample.
class DisconnectedSampleError : public Error {
public:
    explicit DisconnectedSampleError(const std::string& what) : Error(what) {}
};

/// Path enumeration would exceed the requested cap.
class CapExceededError : public Error {
public:
    explicit CapExceededError(const std::string& what) : Error(what) {}
};

/// Eigensolver failed to reach its convergence threshold.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& what) : Error(what) {}
};

/// Path-strategy flow violates conservation or feasibility.
class InvalidFlowError : public Error {
public:
    explicit InvalidFlowError(const std::string& what) : Error(what) {}
};

/// Bound formula denominator is not positive for the given inputs.
class NonPositiveDenominatorError : public Error {
public:
    NonPositiveDenominatorError() : Error("bound denominator is not positive for these inputs") {}
};

/// Quotient input vector is (numerically) constant.
class ConstantVectorError : public Error {
public:
    ConstantVectorError() : Error("input vector is constant; quotient undefined") {}
};

/// A benchmark trial violated a guaranteed bound ordering; carries the trial seed.
class BenchInvariantError : public Error {
public:
    BenchInvariantError(const std::string& what, std::uint64_t seed)
        : Error(what + " (seed " + std::to_string(seed) + ")"), seed_(seed) {}
    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
};

} // namespace cgs
