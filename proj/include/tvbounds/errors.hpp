#pragma once

#include <stdexcept>
#include <string>

namespace tvbounds {

// Raised when a computation cannot produce a trustworthy value
// (e.g. an importance weight of zero at a point with nonzero integrand).
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tvbounds
