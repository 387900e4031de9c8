#pragma once

#include <stdexcept>
#include <string>

namespace gme {

// Shape and size violations: empty matrices, d < 2, mismatched tensor fields.
class dimension_error : public std::invalid_argument {
public:
    explicit dimension_error(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical consistency violations: imaginary residue on a coefficient that
// must be real, non-monotone data where monotonicity is assumed.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gme
