#pragma once

#include <stdexcept>
#include <string>

namespace gamify {

// Precondition violations on operation inputs (negative time, non-finite
// values, degenerate fractions, out-of-range thresholds).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Raised by fit_logistic when the training data cannot define a boundary.
class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

}  // namespace detail
}  // namespace gamify
