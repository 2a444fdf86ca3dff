#pragma once

#include <stdexcept>
#include <string>

namespace abring {

/// Base class for every failure raised by the library. `kind()` is a stable
/// identifier used in machine-readable diagnostics.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class InvalidParameter : public Error {
public:
    explicit InvalidParameter(const std::string& what) : Error("InvalidParameter", what) {}
};

/// Bloch momentum outside the open interval (0, pi).
class NonPropagatingMode : public Error {
public:
    explicit NonPropagatingMode(const std::string& what) : Error("NonPropagatingMode", what) {}
};

class SolveFailure : public Error {
public:
    explicit SolveFailure(const std::string& what) : Error("SolveFailure", what) {}
};

/// A closed-form denominator vanished; the oracle is authoritative there.
class SingularPoint : public Error {
public:
    explicit SingularPoint(const std::string& what) : Error("SingularPoint", what) {}
};

/// Fano asymmetry parameter is infinite (flux phase at pi); the lineshape is Lorentzian.
class InfiniteQ : public Error {
public:
    explicit InfiniteQ(const std::string& what) : Error("InfiniteQ", what) {}
};

class EmptyResult : public Error {
public:
    explicit EmptyResult(const std::string& what) : Error("EmptyResult", what) {}
};

class FitDiverged : public Error {
public:
    explicit FitDiverged(const std::string& what) : Error("FitDiverged", what) {}
};

}  // namespace abring
