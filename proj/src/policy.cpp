#include "horolab/policy.hpp"

namespace horolab {

NumericPolicy& policy() {
    static NumericPolicy p;
    return p;
}

}  // namespace horolab
