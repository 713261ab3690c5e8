#pragma once

#include <Eigen/Dense>
#include <span>

#include "centro/signal.hpp"

namespace centro {

/// Gaussian kernel width and its Silverman reference value.
struct KernelConfig {
    double sigma = 0.0;
    double sigma_star = 0.0;
    double shrink_factor = 1.5;
};

/// kappa_sigma(u) = exp(-u^2 / (2 sigma^2)) / (sqrt(2 pi) sigma)
double gaussian_kernel(double u, double sigma);

/// Silverman's rule of thumb, 1.06 * s * N^(-1/5), with s the population
/// standard deviation of the whole trace. Equals 1.06 * N^(-1/5) for
/// z-scored input.
double silverman_bandwidth(const Trace& trace);

/// sigma_star = Silverman bandwidth, sigma = sigma_star / shrink.
KernelConfig kernel_from_trace(const Trace& trace, double shrink = 1.5);

/// (1/N) sum_i kappa_sigma(x_i - y_i). Lengths must match.
double correntropy_estimate(std::span<const double> x, std::span<const double> y, double sigma);

/// Non-overlapping w-long consecutive segments of a trace, one per column.
struct WindowMatrix {
    Eigen::MatrixXd data;   // w x n_cols
    int w = 0;
    int n_cols = 0;
    long dropped_tail = 0;  // trailing samples that do not fill a window
};

/// Requires w >= 2 and at least two complete windows.
WindowMatrix windowize(const Trace& trace, int w);

struct CorrentropyMatrix {
    Eigen::MatrixXd values;  // n_cols x n_cols, symmetric
    double sigma = 0.0;
    double kappa0 = 0.0;     // kernel value at zero, the diagonal constant
};

/// Pairwise correntropy between all column pairs. Only the upper triangle is
/// computed and mirrored, so symmetry is exact. Entries may be computed by
/// several workers; the result is identical for any worker count.
CorrentropyMatrix correntropy_matrix(const WindowMatrix& xm, double sigma, int workers = 1);

struct SimilarityVector {
    Eigen::VectorXd z;  // per-column sum over the correntropy matrix
};

SimilarityVector similarity_vector(const CorrentropyMatrix& c);

}  // namespace centro
