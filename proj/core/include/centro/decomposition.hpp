#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "centro/correntropy.hpp"
#include "centro/signal.hpp"

namespace centro {

/// Thrown when no percentile step yields a usable background candidate
/// (e.g. every similarity value is identical). The caller should treat the
/// input as having no separable sparse component.
struct DegenerateSplitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Biased sample skewness g1 = m3 / m2^(3/2) with central moments
/// m_k = (1/n) sum (x - mean)^k. Requires n >= 3 and nonzero variance.
double sample_skewness(std::span<const double> values);

/// Linear-interpolation percentile: on sorted values v_1..v_n the rank is
/// h = 1 + (p/100)(n-1) and the result interpolates between the two
/// bracketing order statistics.
double percentile(std::span<const double> values, double p);

struct SplitIndices {
    std::vector<int> l;  // columns with z strictly above the percentile
    std::vector<int> s;  // columns with z strictly below it
};

/// Strict-inequality split at percentile rho; columns exactly at the
/// threshold belong to neither set. Rejects an empty L side.
SplitIndices split_by_percentile(const SimilarityVector& z, int rho);

/// Record of the percentile sweep: the skewness statistic per rho (NaN where
/// the background candidate was empty) and the chosen rho*.
struct PercentileSweep {
    std::vector<int> rho_grid;
    std::vector<double> skewness_by_rho;
    int rho_star = 0;
    bool test_passed = false;  // false when the argmin fallback decided rho*
};

struct Snippet {
    long start_sample = 0;
    int length = 0;
    std::vector<double> samples;
    double norm = 0.0;  // l2 norm of samples
};

struct DecompositionResult {
    std::vector<int> l_indices;
    std::vector<int> s_indices;
    int rho_star = 0;
    std::optional<double> gamma;
    std::vector<Snippet> snippets;
    double sigma_used = 0.0;
    int w_used = 0;
    PercentileSweep sweep;
};

/// Acceptance bound for the background Gaussianity test: the smallest rho
/// whose retained similarity values have |skewness| within this bound is
/// selected; if no rho passes, the most symmetric one wins (smallest rho on
/// ties). A single event column left among the retained values drags the
/// statistic far outside the bound, so the selection stops right at the
/// event/background boundary.
inline constexpr double kSkewnessAcceptance = 0.5;

/// Splits the columns of xm into background (L) and transient (S) index sets
/// by sweeping percentile splits of the similarity vector. gamma and snippets
/// are left unset; see find_snippets / threshold_gamma.
DecompositionResult decompose(const WindowMatrix& xm, double sigma, int r = 99, int workers = 1);

/// Merges runs of consecutive S-class columns into events, then emits one
/// m-sample snippet per event at the position of maximum sliding-window
/// energy inside the event's sample span. Spans shorter than m are extended
/// symmetrically around their energy peak, then clamped to the trace.
std::vector<Snippet> find_snippets(const Trace& trace, const std::vector<int>& s_indices,
                                   int w, int m);

/// Minimum l2 norm over the detected snippets. Rejects an empty list.
double threshold_gamma(const std::vector<Snippet>& snippets);

struct SweepPoint {
    int w = 0;
    std::optional<double> gamma;
};

struct WSweepResult {
    std::vector<SweepPoint> curve;
    int w_star = 0;  // grid value with the maximum threshold (smallest w on ties)
};

/// Per-w threshold curve: normalize, derive sigma once (Silverman / shrink),
/// then windowize, decompose and extract gamma for every grid value. Grid
/// points where the pipeline fails or finds no events report an absent gamma.
WSweepResult sweep_w(const Trace& trace, const std::vector<int>& w_grid, int m,
                     int r = 99, double shrink = 1.5, int workers = 1);

/// Writes the classified columns back to their sample positions: first the
/// background sequence (L columns plus unclassified boundary columns), then
/// the transient sequence (S columns). Samples outside any window are zero in
/// both.
std::pair<std::vector<double>, std::vector<double>>
reconstruct_components(const Trace& trace, const DecompositionResult& result);

}  // namespace centro
