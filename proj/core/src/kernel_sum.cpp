// Built with -ffast-math (see CMakeLists) so the exp call vectorizes via
// libmvec. Nothing else may live here: the relaxed FP flags must not leak
// into code that relies on strict IEEE semantics, and mixing Eigen headers
// across differently-tuned translation units is an ODR hazard.

#include "kernel_sum.hpp"

#include <cmath>

namespace centro::detail {

double kernel_exp_sum(const double* a, const double* b, long n, double inv_two_sigma_sq) {
    double acc = 0.0;
    for (long i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += std::exp(-d * d * inv_two_sigma_sq);
    }
    return acc;
}

}  // namespace centro::detail
