#pragma once

#include <stdexcept>
#include <string>

namespace hyplab {

// Precondition or invariant violation on user-supplied parameters.
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Integrand pole sitting on the integration path.
class PinchError : public std::runtime_error {
public:
    PinchError(const std::string& what, long index) : std::runtime_error(what), index_(index) {}
    long index() const { return index_; }

private:
    long index_;
};

}  // namespace hyplab
