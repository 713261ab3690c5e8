#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "centro/signal.hpp"

namespace centro {

/// Parameters of the two-component synthetic trace: a 1/f^alpha Gaussian
/// background at unit RMS plus sparse Hann-windowed sinusoidal bursts.
struct SynthConfig {
    double duration_s = 600.0;
    double rate_hz = 200.0;
    int n_events = 20;
    double event_freq_hz = 13.0;
    int event_dur_samples = 150;
    double event_amplitude = 4.0;  // peak amplitude as a multiple of background RMS
    double noise_exponent = 1.0;   // spectral slope of the background power spectrum
    std::uint64_t seed = 0;
};

struct GroundTruth {
    struct Event {
        long onset_sample = 0;
        long length_samples = 0;
    };
    std::vector<Event> events;  // sorted by onset, pairwise disjoint
};

/// Generates a background-plus-events trace. The background is white Gaussian
/// noise shaped in the frequency domain to power ~ 1/f^noise_exponent (DC bin
/// zeroed) and rescaled to unit RMS. Events are placed uniformly at random
/// without overlap; placement failure after a bounded number of draws is an
/// error. Deterministic for a fixed seed.
std::pair<Trace, GroundTruth> synth_trace(const SynthConfig& cfg);

}  // namespace centro
