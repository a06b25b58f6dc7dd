#pragma once

#include <stdexcept>
#include <string>

namespace framemul {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Shape or index-count mismatch between operands.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Invalid input values or an unmet precondition (non-finite entries,
// family not a frame / Riesz basis, degenerate symbol, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// A factorization failed or an internal cross-check disagreed.
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace framemul
