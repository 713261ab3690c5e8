#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "centro/decomposition.hpp"
#include "centro/signal.hpp"

namespace centro {

struct RpcaConfig {
    std::optional<double> lambda;  // sparsity weight; default 1/sqrt(max(rows, cols))
    std::optional<double> mu0;     // initial penalty; default 1.25 / ||X||_2
    double mu_growth = 1.5;
    double tol = 1e-7;             // relative Frobenius residual
    int max_iter = 1000;
};

struct RpcaResult {
    Eigen::MatrixXd l_matrix;
    Eigen::MatrixXd s_matrix;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
    std::vector<double> residual_history;
};

/// Elementwise sign(x) * max(|x| - tau, 0).
Eigen::MatrixXd soft_threshold(const Eigen::MatrixXd& m, double tau);

/// Full SVD, soft-threshold the singular values by tau, reconstruct.
Eigen::MatrixXd singular_value_threshold(const Eigen::MatrixXd& m, double tau);

/// Inexact augmented Lagrange multiplier RPCA:
///   L <- SVT(X - S + Y/mu, 1/mu);  S <- shrink(X - L + Y/mu, lambda/mu);
///   Y <- Y + mu (X - L - S);       mu <- mu * mu_growth
/// until the relative residual reaches tol. On non-convergence the best
/// iterate seen is returned with converged = false.
RpcaResult rpca_ialm(const Eigen::MatrixXd& x, const RpcaConfig& cfg = {});

struct EmbeddingResult {
    Eigen::VectorXd norms;       // per-column l2 norm of the window matrix
    std::vector<int> s_indices;  // columns above the selected percentile
    int rho_star = 0;
    double gamma = 0.0;          // minimum norm over the S side
};

/// The l2-norm map baseline: window columns reduce to their norms, the
/// background forms the lower mass of the norm distribution and events its
/// upper tail. The split percentile comes from the same skewness-based
/// Gaussianity test as the correntropy sweep, applied to the retained norms
/// (largest background candidate that passes; most symmetric as fallback).
EmbeddingResult embedding_transform(const Trace& trace, int w, int r = 99);

/// A column counts as event-bearing when its sparse-part energy dominates:
/// ||S_col|| / ||X_col|| above this ratio.
inline constexpr double kRpcaFlagRatio = 0.25;

struct RpcaThresholdResult {
    double gamma = 0.0;
    std::vector<int> flagged;
    std::vector<Snippet> snippets;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

/// RPCA route to the detection threshold: windowize, decompose with
/// rpca_ialm, flag event columns by sparse-energy ratio, then share the
/// snippet/threshold path of the correntropy pipeline. Rejects when no
/// column is flagged.
RpcaThresholdResult rpca_threshold(const Trace& trace, int w, int m,
                                   const RpcaConfig& cfg = {},
                                   double flag_ratio = kRpcaFlagRatio);

}  // namespace centro
