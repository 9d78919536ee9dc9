#pragma once

#include <cstdint>

namespace horolab {

// Central numeric policy: every structural tolerance and resource cap in the
// library reads from here, so experiments can tighten or relax them in one place.
struct NumericPolicy {
    double structural_tol = 1e-9;   // matrix identities, domain membership
    double quadrature_tol = 1e-6;   // quadrature refinement targets
    std::int64_t enumeration_cap = 1'000'000;  // candidate matrices per lattice enumeration
    int reduce_iteration_cap = 1'000'000;      // fundamental-domain reduction steps
};

NumericPolicy& policy();

}  // namespace horolab
