#include "centro/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace centro {

double sample_skewness(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 3)
        throw std::invalid_argument("skewness: need at least three values");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    double m2 = 0.0;
    double m3 = 0.0;
    for (double v : values) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);
    if (m2 <= 0.0)
        throw std::invalid_argument("skewness: zero variance");
    return m3 / std::pow(m2, 1.5);
}

double percentile(std::span<const double> values, double p) {
    if (values.empty())
        throw std::invalid_argument("percentile: empty input");
    if (!(p >= 0.0 && p <= 100.0))
        throw std::invalid_argument("percentile: p must lie in [0, 100]");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double h = (p / 100.0) * static_cast<double>(n - 1);  // 0-based rank
    const std::size_t lo = static_cast<std::size_t>(h);
    const std::size_t hi = std::min(lo + 1, n - 1);
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

SplitIndices split_by_percentile(const SimilarityVector& z, int rho) {
    if (z.z.size() == 0)
        throw std::invalid_argument("split: empty similarity vector");
    if (rho < 1 || rho > 99)
        throw std::invalid_argument("split: rho must lie in 1..99");
    const double t =
        percentile(std::span<const double>(z.z.data(), static_cast<std::size_t>(z.z.size())),
                   static_cast<double>(rho));
    SplitIndices out;
    for (int j = 0; j < static_cast<int>(z.z.size()); ++j) {
        if (z.z(j) > t)
            out.l.push_back(j);
        else if (z.z(j) < t)
            out.s.push_back(j);
    }
    if (out.l.empty())
        throw DegenerateSplitError("split: background side empty at rho " + std::to_string(rho));
    return out;
}

namespace {

// Skewness of the similarity values kept on the background side, for every
// percentile step, from suffix power sums over the sorted (and globally
// centered) values. An empty candidate is NaN; a constant one counts as
// perfectly symmetric.
struct SweepTable {
    std::vector<double> skew_by_rho;   // index 0 unused
    std::vector<double> thresholds;    // percentile value per rho
};

SweepTable sweep_similarity_skewness(const Eigen::VectorXd& z, int r) {
    const int n = static_cast<int>(z.size());
    std::vector<double> sorted(z.data(), z.data() + n);
    std::sort(sorted.begin(), sorted.end());
    const double center = [&] {
        double m = 0.0;
        for (double v : sorted) m += v;
        return m / static_cast<double>(n);
    }();

    // suffix[i] = sums over sorted[i..n) of centered powers
    std::vector<double> s1(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> s2(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> s3(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = n - 1; i >= 0; --i) {
        const double d = sorted[static_cast<std::size_t>(i)] - center;
        s1[static_cast<std::size_t>(i)] = s1[static_cast<std::size_t>(i) + 1] + d;
        s2[static_cast<std::size_t>(i)] = s2[static_cast<std::size_t>(i) + 1] + d * d;
        s3[static_cast<std::size_t>(i)] = s3[static_cast<std::size_t>(i) + 1] + d * d * d;
    }

    SweepTable table;
    table.skew_by_rho.assign(static_cast<std::size_t>(r) + 1,
                             std::numeric_limits<double>::quiet_NaN());
    table.thresholds.assign(static_cast<std::size_t>(r) + 1, 0.0);
    for (int rho = 1; rho <= r; ++rho) {
        const double h = (static_cast<double>(rho) / 100.0) * static_cast<double>(n - 1);
        const std::size_t lo = static_cast<std::size_t>(h);
        const std::size_t hi = std::min(lo + 1, static_cast<std::size_t>(n - 1));
        const double t = sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
        table.thresholds[static_cast<std::size_t>(rho)] = t;

        // first index strictly above t
        const std::size_t first =
            static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), t) -
                                     sorted.begin());
        const long count = n - static_cast<long>(first);
        if (count < 3)
            continue;  // too small to test; stays NaN
        const double c = static_cast<double>(count);
        const double mu = s1[first] / c;
        const double m2 = s2[first] / c - mu * mu;
        const double m3 = s3[first] / c - 3.0 * mu * (s2[first] / c) + 2.0 * mu * mu * mu;
        table.skew_by_rho[static_cast<std::size_t>(rho)] =
            m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
    }
    return table;
}

}  // namespace

DecompositionResult decompose(const WindowMatrix& xm, double sigma, int r, int workers) {
    if (r < 1 || r > 99)
        throw std::invalid_argument("decompose: r must lie in 1..99");

    const CorrentropyMatrix c = correntropy_matrix(xm, sigma, workers);
    const SimilarityVector sim = similarity_vector(c);
    const SweepTable table = sweep_similarity_skewness(sim.z, r);

    // Smallest rho whose background candidate passes the Gaussianity test;
    // otherwise the most symmetric candidate (smallest rho on ties).
    int first_pass = 0;
    int arg_min = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int rho = 1; rho <= r; ++rho) {
        const double s = table.skew_by_rho[static_cast<std::size_t>(rho)];
        if (std::isnan(s))
            continue;
        if (first_pass == 0 && std::abs(s) <= kSkewnessAcceptance)
            first_pass = rho;
        if (std::abs(s) < best) {
            best = std::abs(s);
            arg_min = rho;
        }
    }
    if (arg_min == 0)
        throw DegenerateSplitError("decompose: every percentile step degenerate");
    const int rho_star = first_pass != 0 ? first_pass : arg_min;

    DecompositionResult out;
    out.rho_star = rho_star;
    out.sigma_used = sigma;
    out.w_used = xm.w;
    out.sweep.rho_grid.resize(static_cast<std::size_t>(r));
    for (int rho = 1; rho <= r; ++rho)
        out.sweep.rho_grid[static_cast<std::size_t>(rho - 1)] = rho;
    out.sweep.skewness_by_rho.assign(table.skew_by_rho.begin() + 1, table.skew_by_rho.end());
    out.sweep.rho_star = rho_star;
    out.sweep.test_passed = first_pass != 0;

    const double t = table.thresholds[static_cast<std::size_t>(rho_star)];
    for (int j = 0; j < xm.n_cols; ++j) {
        if (sim.z(j) > t)
            out.l_indices.push_back(j);
        else if (sim.z(j) < t)
            out.s_indices.push_back(j);
    }
    if (out.l_indices.empty())
        throw DegenerateSplitError("decompose: background side empty at rho* " +
                                   std::to_string(rho_star));
    return out;
}

std::vector<Snippet> find_snippets(const Trace& trace, const std::vector<int>& s_indices,
                                   int w, int m) {
    validate(trace);
    if (m < 1)
        throw std::invalid_argument("find_snippets: m must be positive");
    const long n = static_cast<long>(trace.samples.size());
    if (m > n)
        throw std::invalid_argument("find_snippets: m exceeds the trace length");
    if (w < 1)
        throw std::invalid_argument("find_snippets: w must be positive");
    if (s_indices.empty())
        return {};

    std::vector<int> idx = s_indices;
    std::sort(idx.begin(), idx.end());
    const long n_cols = n / w;
    if (idx.front() < 0 || idx.back() >= n_cols)
        throw std::invalid_argument("find_snippets: column index out of range");

    // prefix sums of squared samples for O(1) window energies
    std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 0.0);
    for (long i = 0; i < n; ++i)
        prefix[static_cast<std::size_t>(i) + 1] =
            prefix[static_cast<std::size_t>(i)] + trace.samples[static_cast<std::size_t>(i)] *
                                                      trace.samples[static_cast<std::size_t>(i)];
    auto window_energy = [&](long start) {
        return prefix[static_cast<std::size_t>(start + m)] - prefix[static_cast<std::size_t>(start)];
    };

    std::vector<Snippet> snippets;
    std::size_t i = 0;
    while (i < idx.size()) {
        std::size_t j = i;
        while (j + 1 < idx.size() && idx[j + 1] == idx[j] + 1) ++j;
        const long span_begin = static_cast<long>(idx[i]) * w;
        const long span_end = (static_cast<long>(idx[j]) + 1) * w;
        i = j + 1;

        long start;
        if (span_end - span_begin >= m) {
            // max-energy m-window fully inside the span, earliest on ties
            long best_start = span_begin;
            double best_energy = window_energy(span_begin);
            for (long p = span_begin + 1; p + m <= span_end; ++p) {
                const double e = window_energy(p);
                if (e > best_energy) {
                    best_energy = e;
                    best_start = p;
                }
            }
            start = best_start;
        } else {
            // extend symmetrically around the strongest sample of the span
            long peak = span_begin;
            double best = trace.samples[static_cast<std::size_t>(span_begin)] *
                          trace.samples[static_cast<std::size_t>(span_begin)];
            for (long p = span_begin + 1; p < span_end; ++p) {
                const double e = trace.samples[static_cast<std::size_t>(p)] *
                                 trace.samples[static_cast<std::size_t>(p)];
                if (e > best) {
                    best = e;
                    peak = p;
                }
            }
            start = peak - m / 2;
        }
        start = std::clamp<long>(start, 0, n - m);

        Snippet s;
        s.start_sample = start;
        s.length = m;
        s.samples.assign(trace.samples.begin() + start, trace.samples.begin() + start + m);
        double ss = 0.0;
        for (double v : s.samples) ss += v * v;
        s.norm = std::sqrt(ss);
        snippets.push_back(std::move(s));
    }
    return snippets;
}

double threshold_gamma(const std::vector<Snippet>& snippets) {
    if (snippets.empty())
        throw std::invalid_argument("threshold: no snippets, gamma undefined");
    double g = snippets.front().norm;
    for (const Snippet& s : snippets) g = std::min(g, s.norm);
    return g;
}

WSweepResult sweep_w(const Trace& trace, const std::vector<int>& w_grid, int m,
                     int r, double shrink, int workers) {
    if (w_grid.empty())
        throw std::invalid_argument("sweep_w: empty grid");
    const Trace normalized = zscore_normalize(trace);
    const KernelConfig kernel = kernel_from_trace(normalized, shrink);

    WSweepResult out;
    bool any = false;
    double best_gamma = -std::numeric_limits<double>::infinity();
    for (int w : w_grid) {
        SweepPoint point;
        point.w = w;
        try {
            const WindowMatrix xm = windowize(normalized, w);
            const DecompositionResult dec = decompose(xm, kernel.sigma, r, workers);
            const std::vector<Snippet> snippets =
                find_snippets(normalized, dec.s_indices, w, m);
            if (!snippets.empty())
                point.gamma = threshold_gamma(snippets);
        } catch (const std::exception&) {
            // grid point reports an absent threshold
        }
        if (point.gamma && *point.gamma > best_gamma) {
            best_gamma = *point.gamma;
            out.w_star = w;
            any = true;
        }
        out.curve.push_back(point);
    }
    if (!any)
        throw std::runtime_error("sweep_w: no grid point produced a threshold");
    return out;
}

std::pair<std::vector<double>, std::vector<double>>
reconstruct_components(const Trace& trace, const DecompositionResult& result) {
    validate(trace);
    const long n = static_cast<long>(trace.samples.size());
    const int w = result.w_used;
    if (w < 1)
        throw std::invalid_argument("reconstruct: invalid window length");
    const long n_cols = n / w;

    std::vector<double> low(static_cast<std::size_t>(n), 0.0);
    std::vector<double> sparse(static_cast<std::size_t>(n), 0.0);
    std::vector<bool> is_sparse(static_cast<std::size_t>(n_cols), false);
    for (int j : result.s_indices)
        if (j >= 0 && j < n_cols)
            is_sparse[static_cast<std::size_t>(j)] = true;

    // Unclassified boundary columns go to the background side.
    for (long c = 0; c < n_cols; ++c) {
        std::vector<double>& dst = is_sparse[static_cast<std::size_t>(c)] ? sparse : low;
        for (long i = c * w; i < (c + 1) * w; ++i)
            dst[static_cast<std::size_t>(i)] = trace.samples[static_cast<std::size_t>(i)];
    }
    return {std::move(low), std::move(sparse)};
}

}  // namespace centro
