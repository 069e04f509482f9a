#pragma once

#include <stdexcept>
#include <string>

namespace ltheory {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// oracle
struct InconsistentDescriptor : Error {
    using Error::Error;
};
struct HorizonExhausted : Error {
    using Error::Error;
};

// hyperreal / internal
struct ContextMismatch : Error {
    using Error::Error;
};
struct DivisionByZero : Error {
    using Error::Error;
};
struct DomainViolation : Error {
    using Error::Error;
};
struct Undecided : Error {
    using Error::Error;
};

// galerkin / variational
struct LevelMismatch : Error {
    using Error::Error;
};
struct QuadratureFailure : Error {
    using Error::Error;
};
struct UnsupportedBasis : Error {
    using Error::Error;
};

// cli
struct UsageError : Error {
    using Error::Error;
};

}  // namespace ltheory
