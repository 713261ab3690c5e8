#pragma once

#include <optional>
#include <string>
#include <vector>

#include "centro/baselines.hpp"
#include "centro/decomposition.hpp"
#include "centro/io.hpp"
#include "centro/signal.hpp"

namespace centro {

/// End-to-end detection parameters. An unset w selects the segment length by
/// sweeping the default grid and keeping the one with the maximum threshold.
struct PipelineParams {
    double band_low = 11.0;
    double band_high = 16.0;
    int n_taps = 401;
    std::optional<int> w;
    int m = 150;
    double shrink = 1.5;
    int r = 99;
    int workers = 1;
    std::optional<double> resample_hz;
};

std::vector<int> default_w_grid();  // 50..300 step 5

struct DetectOutput {
    Trace conditioned;  // resampled, bandpassed, normalized
    double sigma_star = 0.0;
    DecompositionResult decomposition;
    std::optional<WSweepResult> sweep;  // present when w was auto-selected
};

/// resample? -> bandpass -> zscore -> (sweep when w unset) -> windowize ->
/// decompose -> snippets -> gamma. gamma stays unset when no snippet emerges.
DetectOutput run_detect(const Trace& raw, const PipelineParams& params);

/// Fills the non-metric fields of a result document from a detection run.
ResultDocument make_result(const DetectOutput& out, const PipelineParams& params,
                           const std::string& input_name, std::uint64_t seed);

struct CompareRow {
    std::string method;
    std::optional<double> gamma;
    double wall_ms = 0.0;
    std::string status = "ok";  // or "failed: <reason>"
};

struct CompareOutput {
    std::vector<CompareRow> rows;           // correntropy, embedding, rpca
    Trace conditioned;
    int w_used = 0;
    std::vector<double> sorted_z;           // descending
    std::vector<char> sorted_class;         // 'S', 'L' or '-' per sorted entry
    WSweepResult sweep;                     // threshold-vs-w curve
};

/// Runs all three methods on identical conditioned input and times each one
/// end to end. A method failure is recorded in its row; the others proceed.
CompareOutput run_compare(const Trace& raw, const PipelineParams& params);

}  // namespace centro
