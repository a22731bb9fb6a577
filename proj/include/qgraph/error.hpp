#pragma once

#include <stdexcept>
#include <string>

namespace qgraph {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A dimension or size precondition was violated (K < 2, mismatched matrices, ...).
class SizeError : public Error {
public:
    using Error::Error;
};

/// A closed form was evaluated at a pole (1+g, 1+h or 1+z vanishing) or outside its range.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Input matrix does not have the required structure (asymmetric, indefinite, non-finite).
class StructureError : public Error {
public:
    using Error::Error;
};

/// A numerical routine failed to produce a result.
class ComputationError : public Error {
public:
    using Error::Error;
};

}  // namespace qgraph
