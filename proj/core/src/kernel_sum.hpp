// Private: the raw exp-sum at the bottom of every correntropy estimate.
// Lives in its own translation unit so the loop can be built with relaxed
// FP flags without affecting any other code.
#pragma once

namespace centro::detail {

// sum_i exp(-(a[i] - b[i])^2 * inv_two_sigma_sq)
double kernel_exp_sum(const double* a, const double* b, long n, double inv_two_sigma_sq);

}  // namespace centro::detail
