#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "centro/decomposition.hpp"
#include "centro/evaluation.hpp"
#include "centro/signal.hpp"
#include "centro/synth.hpp"

namespace centro {

/// One sample per line. Rejects non-numeric lines with their line number.
Trace read_csv_trace(const std::string& path, double rate_hz);
void write_csv_trace(const std::string& path, const Trace& trace);

struct EventAnnotation {
    double onset_s = 0.0;
    double duration_s = 0.0;
    int scorer_id = 0;
};

/// Whitespace-delimited "onset_s duration_s" lines; a leading non-numeric
/// header line is skipped. Column positions are configurable (0-based) for
/// annotation files with extra columns. Output is sorted by onset.
std::vector<EventAnnotation> read_annotations(const std::string& path, int scorer_id,
                                              int onset_col = 0, int dur_col = 1);
void write_annotations(const std::string& path, const std::vector<EventAnnotation>& annotations);

std::vector<EventSpan> to_spans(const std::vector<EventAnnotation>& annotations, double rate_hz);

struct MetricsBlock {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    long tp = 0;
    long fp = 0;
    long fn = 0;
    double tol_s = 0.0;
};

/// The persisted outcome of a detection run. `run_wall_ms` is the dedicated
/// timing field excluded from determinism comparisons.
struct ResultDocument {
    std::string input;
    double rate_hz = 0.0;
    double band_low = 0.0;
    double band_high = 0.0;
    int w_used = 0;
    int m = 0;
    int r = 0;
    double shrink = 0.0;
    std::uint64_t seed = 0;
    double sigma_star = 0.0;
    double sigma_used = 0.0;
    int rho_star = 0;
    std::optional<double> gamma;
    std::vector<int> l_indices;
    std::vector<int> s_indices;
    struct SnippetRow {
        long start = 0;
        int length = 0;
        double norm = 0.0;
    };
    std::vector<SnippetRow> snippets;
    std::vector<std::pair<int, std::optional<double>>> sweep;  // (w, gamma)
    std::optional<MetricsBlock> metrics;
    std::vector<BenchRecord> bench;
    double run_wall_ms = 0.0;
};

/// JSON with a stable field order. With include_run_info = false the timing
/// field is omitted, which is the form determinism checks compare.
std::string result_to_json(const ResultDocument& doc, bool include_run_info = true);

void write_result(const std::string& path, const ResultDocument& doc);
ResultDocument read_result(const std::string& path);

}  // namespace centro
