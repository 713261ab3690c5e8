// Test-side reference implementations, kept deliberately naive and separate
// from the library code they check.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>
#include <span>
#include <vector>

namespace oracle {

inline double gauss_kernel(double u, double sigma) {
    return std::exp(-(u * u) / (2.0 * sigma * sigma)) /
           (std::sqrt(2.0 * std::numbers::pi) * sigma);
}

// Triple loop over Eq.-style sums: one kernel call per (row, col-pair).
inline Eigen::MatrixXd naive_correntropy_matrix(const Eigen::MatrixXd& x, double sigma) {
    const Eigen::Index w = x.rows();
    const Eigen::Index n = x.cols();
    Eigen::MatrixXd c(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            double acc = 0.0;
            for (Eigen::Index i = 0; i < w; ++i) acc += gauss_kernel(x(i, j) - x(i, k), sigma);
            c(j, k) = acc / static_cast<double>(w);
        }
    }
    return c;
}

inline Eigen::VectorXd naive_similarity(const Eigen::MatrixXd& c) {
    Eigen::VectorXd z(c.cols());
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
        double acc = 0.0;
        for (Eigen::Index k = 0; k < c.rows(); ++k) acc += c(k, j);
        z(j) = acc;
    }
    return z;
}

// Single-frequency magnitude of the DTFT of a finite sequence.
inline double dtft_magnitude(std::span<const double> x, double freq_hz, double rate_hz) {
    double re = 0.0;
    double im = 0.0;
    const double w = 2.0 * std::numbers::pi * freq_hz / rate_hz;
    for (std::size_t n = 0; n < x.size(); ++n) {
        re += x[n] * std::cos(w * static_cast<double>(n));
        im -= x[n] * std::sin(w * static_cast<double>(n));
    }
    return std::sqrt(re * re + im * im);
}

inline double rms(std::span<const double> x) {
    double ss = 0.0;
    for (double v : x) ss += v * v;
    return std::sqrt(ss / static_cast<double>(x.size()));
}

// Log-log least-squares slope of the periodogram between f_lo and f_hi,
// computed bin by bin with a direct DFT.
inline double periodogram_slope(std::span<const double> x, double rate_hz, double f_lo,
                                double f_hi) {
    const std::size_t n = x.size();
    const double df = rate_hz / static_cast<double>(n);
    std::vector<double> log_f;
    std::vector<double> log_p;
    for (std::size_t k = 1; k < n / 2; ++k) {
        const double f = static_cast<double>(k) * df;
        if (f < f_lo || f > f_hi)
            continue;
        const double mag = dtft_magnitude(x, f, rate_hz);
        if (mag <= 0.0)
            continue;
        log_f.push_back(std::log(f));
        log_p.push_back(std::log(mag * mag));
    }
    const double m = static_cast<double>(log_f.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < log_f.size(); ++i) {
        sx += log_f[i];
        sy += log_p[i];
        sxx += log_f[i] * log_f[i];
        sxy += log_f[i] * log_p[i];
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

inline double skewness(std::span<const double> v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double m2 = 0.0, m3 = 0.0;
    for (double x : v) {
        const double d = x - mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= static_cast<double>(v.size());
    m3 /= static_cast<double>(v.size());
    return m3 / std::pow(m2, 1.5);
}

inline Eigen::MatrixXd random_matrix(int rows, int cols, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = g(rng);
    return m;
}

}  // namespace oracle
