#include "centro/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace centro {

void validate(const Trace& trace) {
    if (trace.samples.empty())
        throw std::invalid_argument("trace: no samples");
    if (!std::isfinite(trace.rate_hz) || trace.rate_hz <= 0.0)
        throw std::invalid_argument("trace: rate_hz must be finite and positive");
    for (std::size_t i = 0; i < trace.samples.size(); ++i) {
        if (!std::isfinite(trace.samples[i]))
            throw std::invalid_argument("trace: non-finite sample at index " + std::to_string(i));
    }
}

double population_std(const std::vector<double>& values) {
    if (values.empty())
        return 0.0;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) {
        const double d = v - mean;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(values.size()));
}

std::vector<double> bandpass_taps(double low_hz, double high_hz, int n_taps, double rate_hz) {
    if (rate_hz <= 0.0)
        throw std::invalid_argument("bandpass: rate_hz must be positive");
    if (!(0.0 < low_hz && low_hz < high_hz && high_hz < rate_hz / 2.0))
        throw std::invalid_argument("bandpass: band edges must satisfy 0 < low < high < rate/2");
    if (n_taps < 11)
        throw std::invalid_argument("bandpass: n_taps must be at least 11");
    if (n_taps % 2 == 0)
        throw std::invalid_argument("bandpass: n_taps must be odd");

    const int mid = (n_taps - 1) / 2;
    const double wl = 2.0 * std::numbers::pi * low_hz / rate_hz;
    const double wh = 2.0 * std::numbers::pi * high_hz / rate_hz;
    std::vector<double> h(static_cast<std::size_t>(n_taps));
    for (int k = 0; k < n_taps; ++k) {
        const int t = k - mid;
        double ideal;
        if (t == 0) {
            ideal = (wh - wl) / std::numbers::pi;
        } else {
            ideal = (std::sin(wh * t) - std::sin(wl * t)) / (std::numbers::pi * t);
        }
        const double hamming =
            0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * k / (n_taps - 1));
        h[static_cast<std::size_t>(k)] = ideal * hamming;
    }
    return h;
}

namespace {

// Causal FIR pass, zero initial state, output truncated to the input length.
std::vector<double> filter_forward(const std::vector<double>& x, const std::vector<double>& h) {
    const long n = static_cast<long>(x.size());
    const long t = static_cast<long>(h.size());
    std::vector<double> y(static_cast<std::size_t>(n), 0.0);
    for (long i = 0; i < n; ++i) {
        const long kmax = std::min<long>(t - 1, i);
        double acc = 0.0;
        for (long k = 0; k <= kmax; ++k) acc += h[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(i - k)];
        y[static_cast<std::size_t>(i)] = acc;
    }
    return y;
}

}  // namespace

Trace bandpass_fir(const Trace& trace, double low_hz, double high_hz, int n_taps) {
    validate(trace);
    const std::vector<double> h = bandpass_taps(low_hz, high_hz, n_taps, trace.rate_hz);

    std::vector<double> y = filter_forward(trace.samples, h);
    std::reverse(y.begin(), y.end());
    y = filter_forward(y, h);
    std::reverse(y.begin(), y.end());
    return Trace{std::move(y), trace.rate_hz};
}

Trace zscore_normalize(const Trace& trace) {
    validate(trace);
    double mean = 0.0;
    for (double v : trace.samples) mean += v;
    mean /= static_cast<double>(trace.samples.size());
    double ss = 0.0;
    for (double v : trace.samples) {
        const double d = v - mean;
        ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(trace.samples.size()));
    if (sd <= 0.0)
        throw std::invalid_argument("zscore: constant trace has no scale");

    Trace out;
    out.rate_hz = trace.rate_hz;
    out.samples.resize(trace.samples.size());
    for (std::size_t i = 0; i < trace.samples.size(); ++i)
        out.samples[i] = (trace.samples[i] - mean) / sd;
    return out;
}

Trace resample_linear(const Trace& trace, double target_hz) {
    validate(trace);
    if (!(target_hz > 0.0))
        throw std::invalid_argument("resample: target_hz must be positive");
    if (target_hz == trace.rate_hz)
        return trace;

    const long n = static_cast<long>(trace.samples.size());
    const long out_len =
        n == 1 ? 1
               : static_cast<long>(std::llround(static_cast<double>(n - 1) * target_hz / trace.rate_hz)) + 1;
    Trace out;
    out.rate_hz = target_hz;
    out.samples.resize(static_cast<std::size_t>(std::max<long>(out_len, 1)));
    const double step = trace.rate_hz / target_hz;
    for (long i = 0; i < out_len; ++i) {
        double src = static_cast<double>(i) * step;
        if (src >= static_cast<double>(n - 1)) {
            out.samples[static_cast<std::size_t>(i)] = trace.samples[static_cast<std::size_t>(n - 1)];
            continue;
        }
        const long j = static_cast<long>(src);
        const double frac = src - static_cast<double>(j);
        const double a = trace.samples[static_cast<std::size_t>(j)];
        const double b = trace.samples[static_cast<std::size_t>(j + 1)];
        out.samples[static_cast<std::size_t>(i)] = a + frac * (b - a);
    }
    return out;
}

}  // namespace centro
