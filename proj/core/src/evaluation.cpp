#include "centro/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace centro {

std::vector<EventSpan> to_spans(const std::vector<Snippet>& snippets) {
    std::vector<EventSpan> spans;
    spans.reserve(snippets.size());
    for (const Snippet& s : snippets) spans.push_back(EventSpan{s.start_sample, s.length});
    return spans;
}

std::vector<EventSpan> to_spans(const GroundTruth& truth) {
    std::vector<EventSpan> spans;
    spans.reserve(truth.events.size());
    for (const GroundTruth::Event& e : truth.events)
        spans.push_back(EventSpan{e.onset_sample, e.length_samples});
    return spans;
}

MatchCounts match_events(std::vector<EventSpan> detected, std::vector<EventSpan> truth,
                         double tol_s, double rate_hz) {
    if (tol_s < 0.0)
        throw std::invalid_argument("match_events: tolerance must be non-negative");
    if (!(rate_hz > 0.0))
        throw std::invalid_argument("match_events: rate_hz must be positive");
    const double tol_samples = tol_s * rate_hz;

    auto by_onset = [](const EventSpan& a, const EventSpan& b) { return a.onset < b.onset; };
    std::sort(detected.begin(), detected.end(), by_onset);
    std::sort(truth.begin(), truth.end(), by_onset);

    std::vector<bool> used(truth.size(), false);
    MatchCounts counts;
    for (const EventSpan& d : detected) {
        bool matched = false;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            if (used[i])
                continue;
            const EventSpan& t = truth[i];
            const bool overlap = d.onset < t.onset + t.length && t.onset < d.onset + d.length;
            const bool close = std::abs(static_cast<double>(d.onset - t.onset)) <= tol_samples;
            if (overlap || close) {
                used[i] = true;
                matched = true;
                break;
            }
        }
        if (matched)
            ++counts.true_pos;
        else
            ++counts.false_pos;
    }
    for (bool u : used)
        if (!u)
            ++counts.false_neg;
    return counts;
}

Prf prf(const MatchCounts& counts) {
    if (counts.true_pos < 0 || counts.false_pos < 0 || counts.false_neg < 0)
        throw std::invalid_argument("prf: negative counts");
    if (counts.true_pos + counts.false_pos + counts.false_neg == 0)
        throw std::invalid_argument("prf: all counts zero");
    Prf out;
    const double tp = static_cast<double>(counts.true_pos);
    out.precision =
        counts.true_pos + counts.false_pos > 0 ? tp / static_cast<double>(counts.true_pos + counts.false_pos) : 0.0;
    out.recall =
        counts.true_pos + counts.false_neg > 0 ? tp / static_cast<double>(counts.true_pos + counts.false_neg) : 0.0;
    out.f1 = out.precision + out.recall > 0.0
                 ? 2.0 * out.precision * out.recall / (out.precision + out.recall)
                 : 0.0;
    return out;
}

double median_of(std::vector<double> values) {
    if (values.empty())
        throw std::invalid_argument("median: empty input");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1)
        return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

BenchRecord benchmark(const std::string& method_name, const std::function<void()>& runnable,
                      int repetitions) {
    if (repetitions < 3)
        throw std::invalid_argument("benchmark: need at least 3 repetitions");
    if (!runnable)
        throw std::invalid_argument("benchmark: empty runnable");

    runnable();  // warm-up
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(repetitions));
    for (int i = 0; i < repetitions; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        runnable();
        const auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    BenchRecord rec;
    rec.method_name = method_name;
    rec.wall_ms = median_of(times);
    return rec;
}

}  // namespace centro
