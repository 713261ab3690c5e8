#pragma once

#include <cstddef>
#include <vector>

namespace centro {

/// A uniformly sampled single-channel signal.
struct Trace {
    std::vector<double> samples;
    double rate_hz = 0.0;

    std::size_t size() const { return samples.size(); }
    double duration_s() const { return rate_hz > 0.0 ? static_cast<double>(samples.size()) / rate_hz : 0.0; }
};

/// Throws std::invalid_argument if the trace is empty, has a non-positive or
/// non-finite rate, or contains NaN/Inf samples.
void validate(const Trace& trace);

/// Population (1/N) standard deviation.
double population_std(const std::vector<double>& values);

/// Linear-phase windowed-sinc (Hamming) bandpass taps for the given band.
std::vector<double> bandpass_taps(double low_hz, double high_hz, int n_taps, double rate_hz);

/// Zero-phase bandpass: the FIR filter is applied causally forward, then
/// backward over the reversed output, so the net response is |H|^2 with no
/// phase distortion. Output length equals input length.
Trace bandpass_fir(const Trace& trace, double low_hz, double high_hz, int n_taps = 401);

/// Shifts to zero mean and scales to unit population standard deviation.
/// Rejects constant traces.
Trace zscore_normalize(const Trace& trace);

/// Resamples by linear interpolation. Output length is
/// round((N-1) * target_hz / rate_hz) + 1, so both endpoints are preserved
/// and target_hz == rate_hz is an exact identity.
Trace resample_linear(const Trace& trace, double target_hz);

}  // namespace centro
