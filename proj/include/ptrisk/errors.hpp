#pragma once

#include <stdexcept>
#include <string>

namespace ptrisk {

/// Estimator received fewer observations than it needs.
struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The requested fit has no solution in the model's parameter space.
struct FitInfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operation not available for this model (e.g. closed-form CDF of a t copula).
struct UnsupportedOperationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ptrisk
