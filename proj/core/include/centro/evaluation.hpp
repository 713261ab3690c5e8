#pragma once

#include <functional>
#include <string>
#include <vector>

#include "centro/decomposition.hpp"
#include "centro/synth.hpp"

namespace centro {

struct MatchCounts {
    long true_pos = 0;
    long false_pos = 0;
    long false_neg = 0;
};

/// A detection or ground-truth interval in samples.
struct EventSpan {
    long onset = 0;
    long length = 0;
};

std::vector<EventSpan> to_spans(const std::vector<Snippet>& snippets);
std::vector<EventSpan> to_spans(const GroundTruth& truth);

/// Greedy one-to-one matching in onset order: a detection matches the first
/// unmatched truth event whose interval overlaps it or whose onset is within
/// tol_s seconds.
MatchCounts match_events(std::vector<EventSpan> detected, std::vector<EventSpan> truth,
                         double tol_s, double rate_hz);

struct Prf {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Standard precision/recall/F1; F1 is zero when precision + recall is zero.
/// Rejects all-zero counts.
Prf prf(const MatchCounts& counts);

struct BenchRecord {
    std::string method_name;
    long trace_len = 0;
    double wall_ms = 0.0;
    int workers = 1;
    bool converged = true;
};

double median_of(std::vector<double> values);

/// Runs the callable once for warm-up, then `repetitions` timed passes, and
/// reports the median wall time. Requires repetitions >= 3.
BenchRecord benchmark(const std::string& method_name, const std::function<void()>& runnable,
                      int repetitions);

}  // namespace centro
