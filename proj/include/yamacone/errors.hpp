#pragma once

#include <stdexcept>
#include <string>

namespace yamacone {

/// Input outside the mathematical domain of an operation (vertex angles,
/// nonpositive volumes, dimensions too small for the formula).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Structurally invalid data: mismatched lengths, fractions outside [0,1],
/// negative samples handed to a rearrangement.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A grid too coarse for the requested dilation radius.
class ResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The requested bound does not apply to the given manifold data.
class FormulaInapplicable : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Malformed manifold spec strings or catalog files.
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace yamacone
