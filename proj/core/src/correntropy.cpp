#include "centro/correntropy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "kernel_sum.hpp"

namespace centro {

double gaussian_kernel(double u, double sigma) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("gaussian_kernel: sigma must be positive");
    const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * sigma);
    return norm * std::exp(-(u * u) / (2.0 * sigma * sigma));
}

double silverman_bandwidth(const Trace& trace) {
    validate(trace);
    const std::size_t n = trace.samples.size();
    if (n < 2)
        throw std::invalid_argument("silverman: need at least two samples");
    const double sd = population_std(trace.samples);
    if (sd <= 0.0)
        throw std::invalid_argument("silverman: degenerate trace");
    return 1.06 * sd * std::pow(static_cast<double>(n), -0.2);
}

KernelConfig kernel_from_trace(const Trace& trace, double shrink) {
    if (!(shrink > 0.0))
        throw std::invalid_argument("kernel_from_trace: shrink factor must be positive");
    KernelConfig cfg;
    cfg.shrink_factor = shrink;
    cfg.sigma_star = silverman_bandwidth(trace);
    cfg.sigma = cfg.sigma_star / shrink;
    return cfg;
}

namespace {

// Mean Gaussian kernel of elementwise differences; shared by the estimate
// and the matrix.
inline double kernel_mean(const double* a, const double* b, long n, double inv_two_sigma_sq,
                          double norm) {
    return norm * detail::kernel_exp_sum(a, b, n, inv_two_sigma_sq) / static_cast<double>(n);
}

}  // namespace

double correntropy_estimate(std::span<const double> x, std::span<const double> y, double sigma) {
    if (x.size() != y.size())
        throw std::invalid_argument("correntropy_estimate: length mismatch");
    if (x.empty())
        throw std::invalid_argument("correntropy_estimate: empty input");
    if (!(sigma > 0.0))
        throw std::invalid_argument("correntropy_estimate: sigma must be positive");
    const double inv = 1.0 / (2.0 * sigma * sigma);
    const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * sigma);
    return kernel_mean(x.data(), y.data(), static_cast<long>(x.size()), inv, norm);
}

WindowMatrix windowize(const Trace& trace, int w) {
    validate(trace);
    if (w < 2)
        throw std::invalid_argument("windowize: w must be at least 2");
    const long n = static_cast<long>(trace.samples.size());
    const long n_cols = n / w;
    if (n_cols < 2)
        throw std::invalid_argument("windowize: fewer than two complete windows");

    WindowMatrix xm;
    xm.w = w;
    xm.n_cols = static_cast<int>(n_cols);
    xm.dropped_tail = n - n_cols * w;
    xm.data.resize(w, n_cols);
    for (long c = 0; c < n_cols; ++c)
        for (long i = 0; i < w; ++i)
            xm.data(i, c) = trace.samples[static_cast<std::size_t>(c * w + i)];
    return xm;
}

CorrentropyMatrix correntropy_matrix(const WindowMatrix& xm, double sigma, int workers) {
    if (xm.n_cols < 2 || xm.w < 2)
        throw std::invalid_argument("correntropy_matrix: invalid window matrix");
    if (!(sigma > 0.0))
        throw std::invalid_argument("correntropy_matrix: sigma must be positive");

    const int n = xm.n_cols;
    const long w = xm.w;
    const double inv = 1.0 / (2.0 * sigma * sigma);
    const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * sigma);

    CorrentropyMatrix c;
    c.sigma = sigma;
    c.kappa0 = norm;  // exp(0) / (sqrt(2 pi) sigma)
    c.values.resize(n, n);

    const long total_pairs = static_cast<long>(n) * (n + 1) / 2;
    if (workers < 1)
        workers = 1;
    workers = static_cast<int>(std::min<long>(workers, total_pairs));

    // Upper triangle (j <= k) as a flat index range, mirrored on write.
    // Each pair is written exactly once, so the result does not depend on
    // how pairs are distributed over workers.
    auto run_range = [&](long begin, long end) {
        // Recover (j, k) from the flat index of the first pair, then walk.
        long j = 0;
        long remaining = begin;
        while (remaining >= n - j) {
            remaining -= n - j;
            ++j;
        }
        long k = j + remaining;
        for (long idx = begin; idx < end; ++idx) {
            const double v =
                kernel_mean(xm.data.col(j).data(), xm.data.col(k).data(), w, inv, norm);
            c.values(j, k) = v;
            c.values(k, j) = v;
            if (++k == n) {
                ++j;
                k = j;
            }
        }
    };

    if (workers == 1) {
        run_range(0, total_pairs);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        const long chunk = (total_pairs + workers - 1) / workers;
        for (int t = 0; t < workers; ++t) {
            const long begin = static_cast<long>(t) * chunk;
            const long end = std::min(total_pairs, begin + chunk);
            if (begin >= end)
                break;
            pool.emplace_back(run_range, begin, end);
        }
        for (std::thread& th : pool) th.join();
    }
    return c;
}

SimilarityVector similarity_vector(const CorrentropyMatrix& c) {
    if (c.values.rows() == 0 || c.values.rows() != c.values.cols())
        throw std::invalid_argument("similarity_vector: invalid correntropy matrix");
    SimilarityVector s;
    s.z = c.values.colwise().sum();
    return s;
}

}  // namespace centro
