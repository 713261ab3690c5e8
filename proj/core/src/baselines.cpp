#include "centro/baselines.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace centro {

Eigen::MatrixXd soft_threshold(const Eigen::MatrixXd& m, double tau) {
    if (tau < 0.0)
        throw std::invalid_argument("soft_threshold: tau must be non-negative");
    return m.unaryExpr([tau](double v) {
        const double mag = std::abs(v) - tau;
        return mag > 0.0 ? (v > 0.0 ? mag : -mag) : 0.0;
    });
}

Eigen::MatrixXd singular_value_threshold(const Eigen::MatrixXd& m, double tau) {
    if (tau < 0.0)
        throw std::invalid_argument("svt: tau must be non-negative");
    if (!m.allFinite())
        throw std::invalid_argument("svt: input must be finite");
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success)
        throw std::runtime_error("svt: singular value decomposition failed");
    Eigen::VectorXd sv = svd.singularValues();
    for (Eigen::Index i = 0; i < sv.size(); ++i) sv(i) = std::max(sv(i) - tau, 0.0);
    return svd.matrixU() * sv.asDiagonal() * svd.matrixV().transpose();
}

namespace {

double spectral_norm(const Eigen::MatrixXd& x) {
    // power iteration on X^T X; ample accuracy for scale constants
    Eigen::VectorXd v = Eigen::VectorXd::Ones(x.cols());
    v.normalize();
    double sigma = 0.0;
    for (int it = 0; it < 50; ++it) {
        Eigen::VectorXd u = x * v;
        const double nu = u.norm();
        if (nu == 0.0)
            return 0.0;
        v = x.transpose() * (u / nu);
        const double next = v.norm();
        v /= next;
        if (std::abs(next - sigma) <= 1e-12 * std::max(1.0, next))
            return next;
        sigma = next;
    }
    return sigma;
}

}  // namespace

RpcaResult rpca_ialm(const Eigen::MatrixXd& x, const RpcaConfig& cfg) {
    if (x.rows() < 2 || x.cols() < 2)
        throw std::invalid_argument("rpca: input must be at least 2x2");
    if (!x.allFinite())
        throw std::invalid_argument("rpca: input must be finite");
    if (!(cfg.mu_growth > 1.0))
        throw std::invalid_argument("rpca: mu_growth must exceed 1");
    if (!(cfg.tol > 0.0) || cfg.max_iter < 1)
        throw std::invalid_argument("rpca: tol and max_iter must be positive");

    const double lambda =
        cfg.lambda.value_or(1.0 / std::sqrt(static_cast<double>(std::max(x.rows(), x.cols()))));
    if (!(lambda > 0.0))
        throw std::invalid_argument("rpca: lambda must be positive");

    const double x_norm_f = x.norm();
    if (x_norm_f == 0.0)
        throw std::invalid_argument("rpca: zero matrix");
    const double sigma1 = spectral_norm(x);
    const double dual = std::max(sigma1, x.lpNorm<Eigen::Infinity>() / lambda);

    Eigen::MatrixXd y = x / dual;
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(x.rows(), x.cols());
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(x.rows(), x.cols());
    double mu = cfg.mu0.value_or(1.25 / sigma1);
    if (!(mu > 0.0))
        throw std::invalid_argument("rpca: mu0 must be positive");

    RpcaResult result;
    double best_residual = std::numeric_limits<double>::infinity();
    Eigen::MatrixXd best_l;
    Eigen::MatrixXd best_s;

    for (int it = 1; it <= cfg.max_iter; ++it) {
        l = singular_value_threshold(x - s + y / mu, 1.0 / mu);
        s = soft_threshold(x - l + y / mu, lambda / mu);
        const Eigen::MatrixXd r = x - l - s;
        const double residual = r.norm() / x_norm_f;
        result.residual_history.push_back(residual);
        result.iterations = it;

        if (residual < best_residual) {
            best_residual = residual;
            best_l = l;
            best_s = s;
        }
        if (residual <= cfg.tol) {
            result.l_matrix = std::move(l);
            result.s_matrix = std::move(s);
            result.residual = residual;
            result.converged = true;
            return result;
        }
        y += mu * r;
        mu *= cfg.mu_growth;
    }

    result.l_matrix = std::move(best_l);
    result.s_matrix = std::move(best_s);
    result.residual = best_residual;
    result.converged = false;
    return result;
}

EmbeddingResult embedding_transform(const Trace& trace, int w, int r) {
    if (r < 1 || r > 99)
        throw std::invalid_argument("embedding: r must lie in 1..99");
    const WindowMatrix xm = windowize(trace, w);

    EmbeddingResult out;
    out.norms.resize(xm.n_cols);
    for (int j = 0; j < xm.n_cols; ++j) out.norms(j) = xm.data.col(j).norm();

    std::vector<double> sorted(out.norms.data(), out.norms.data() + xm.n_cols);
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() == sorted.back())
        throw std::invalid_argument("embedding: all column norms equal, no tail to split");

    // Background is the lower mass of the norm distribution, events the upper
    // tail. Same Gaussianity-test selection as the correntropy sweep, with
    // the background candidate growing as rho grows: keep the largest
    // candidate that passes, fall back to the most symmetric.
    const int n = xm.n_cols;
    int last_pass = 0;
    int arg_min = 0;
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> thresholds(static_cast<std::size_t>(r) + 1, 0.0);
    for (int rho = 1; rho <= r; ++rho) {
        const double h = (static_cast<double>(rho) / 100.0) * static_cast<double>(n - 1);
        const std::size_t lo = static_cast<std::size_t>(h);
        const std::size_t hi = std::min(lo + 1, static_cast<std::size_t>(n - 1));
        const double t = sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
        thresholds[static_cast<std::size_t>(rho)] = t;

        const std::size_t below =
            static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), t) -
                                     sorted.begin());
        if (below < 3)
            continue;
        double mean = 0.0;
        for (std::size_t i = 0; i < below; ++i) mean += sorted[i];
        mean /= static_cast<double>(below);
        double m2 = 0.0;
        double m3 = 0.0;
        for (std::size_t i = 0; i < below; ++i) {
            const double d = sorted[i] - mean;
            m2 += d * d;
            m3 += d * d * d;
        }
        m2 /= static_cast<double>(below);
        m3 /= static_cast<double>(below);
        const double skew = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
        if (std::abs(skew) <= kSkewnessAcceptance)
            last_pass = rho;
        if (std::abs(skew) < best) {
            best = std::abs(skew);
            arg_min = rho;
        }
    }
    if (arg_min == 0)
        throw std::runtime_error("embedding: every percentile step degenerate");
    out.rho_star = last_pass != 0 ? last_pass : arg_min;

    const double t = thresholds[static_cast<std::size_t>(out.rho_star)];
    double gamma = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
        if (out.norms(j) > t) {
            out.s_indices.push_back(j);
            gamma = std::min(gamma, out.norms(j));
        }
    }
    if (out.s_indices.empty())
        throw std::runtime_error("embedding: no columns above the selected percentile");
    out.gamma = gamma;
    return out;
}

RpcaThresholdResult rpca_threshold(const Trace& trace, int w, int m, const RpcaConfig& cfg,
                                   double flag_ratio) {
    if (!(flag_ratio > 0.0))
        throw std::invalid_argument("rpca_threshold: flag ratio must be positive");
    const WindowMatrix xm = windowize(trace, w);
    const RpcaResult rpca = rpca_ialm(xm.data, cfg);

    RpcaThresholdResult out;
    out.iterations = rpca.iterations;
    out.residual = rpca.residual;
    out.converged = rpca.converged;
    for (int j = 0; j < xm.n_cols; ++j) {
        const double xn = xm.data.col(j).norm();
        if (xn == 0.0)
            continue;
        if (rpca.s_matrix.col(j).norm() / xn > flag_ratio)
            out.flagged.push_back(j);
    }
    if (out.flagged.empty())
        throw std::runtime_error("rpca_threshold: no event-flagged columns, gamma undefined");
    out.snippets = find_snippets(trace, out.flagged, w, m);
    out.gamma = threshold_gamma(out.snippets);
    return out;
}

}  // namespace centro
