#pragma once

#include <stdexcept>

namespace horolab {

// A configured budget (enumeration cap, sample budget, quadrature resolution
// cap) would be exceeded; the operation refuses rather than under-resolving.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical pathology: an iteration that must terminate did not.
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace horolab
