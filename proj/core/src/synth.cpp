#include "centro/synth.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>

namespace centro {

namespace {

// The FFTW planner is not reentrant; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// White Gaussian noise shaped in the frequency domain to power ~ 1/f^alpha,
// DC removed, rescaled to unit RMS.
std::vector<double> shaped_background(long n, double rate_hz, double alpha, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    double* time = static_cast<double*>(fftw_malloc(sizeof(double) * static_cast<std::size_t>(n)));
    const long n_bins = n / 2 + 1;
    fftw_complex* freq =
        static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(n_bins)));
    if (time == nullptr || freq == nullptr) {
        fftw_free(time);
        fftw_free(freq);
        throw std::runtime_error("synth: allocation failure");
    }

    for (long i = 0; i < n; ++i) time[i] = gauss(rng);

    fftw_plan fwd;
    fftw_plan inv;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), time, freq, FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_1d(static_cast<int>(n), freq, time, FFTW_ESTIMATE);
    }
    fftw_execute(fwd);

    freq[0][0] = 0.0;
    freq[0][1] = 0.0;
    for (long k = 1; k < n_bins; ++k) {
        const double f = static_cast<double>(k) * rate_hz / static_cast<double>(n);
        const double gain = std::pow(f, -alpha / 2.0);
        freq[k][0] *= gain;
        freq[k][1] *= gain;
    }
    fftw_execute(inv);  // unnormalized: scales by n

    std::vector<double> out(static_cast<std::size_t>(n));
    double ss = 0.0;
    for (long i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = time[i];
        ss += time[i] * time[i];
    }
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(inv);
    }
    fftw_free(time);
    fftw_free(freq);

    const double rms = std::sqrt(ss / static_cast<double>(n));
    if (rms <= 0.0)
        throw std::runtime_error("synth: degenerate background");
    for (double& v : out) v /= rms;
    return out;
}

}  // namespace

std::pair<Trace, GroundTruth> synth_trace(const SynthConfig& cfg) {
    if (cfg.rate_hz <= 0.0 || cfg.duration_s <= 0.0)
        throw std::invalid_argument("synth: duration and rate must be positive");
    if (cfg.n_events < 0)
        throw std::invalid_argument("synth: n_events must be non-negative");
    if (cfg.n_events > 0 && cfg.event_dur_samples < 1)
        throw std::invalid_argument("synth: event_dur_samples must be positive");

    const long n = std::llround(cfg.duration_s * cfg.rate_hz);
    const long dur = cfg.event_dur_samples;
    if (n < dur * static_cast<long>(cfg.n_events))
        throw std::invalid_argument("synth: trace too short for the requested events");

    std::mt19937_64 rng(cfg.seed);
    std::vector<double> x = shaped_background(n, cfg.rate_hz, cfg.noise_exponent, rng);

    // Uniform random non-overlapping placement by rejection.
    struct Placed {
        long onset;
        double phase;
    };
    std::vector<Placed> placed;
    placed.reserve(static_cast<std::size_t>(cfg.n_events));
    std::uniform_int_distribution<long> pick(0, n - dur);
    std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * std::numbers::pi);
    const long max_attempts = 10000L * std::max(1, cfg.n_events);
    long attempts = 0;
    while (static_cast<int>(placed.size()) < cfg.n_events) {
        if (++attempts > max_attempts)
            throw std::runtime_error("synth: could not place " + std::to_string(cfg.n_events) +
                                     " disjoint events");
        const long onset = pick(rng);
        bool clear = true;
        for (const Placed& p : placed) {
            if (onset < p.onset + dur && p.onset < onset + dur) {
                clear = false;
                break;
            }
        }
        if (clear)
            placed.push_back(Placed{onset, phase_dist(rng)});
    }
    std::sort(placed.begin(), placed.end(),
              [](const Placed& a, const Placed& b) { return a.onset < b.onset; });

    GroundTruth truth;
    for (const Placed& p : placed) {
        for (long i = 0; i < dur; ++i) {
            const double env =
                dur > 1 ? 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                               static_cast<double>(dur - 1))
                        : 1.0;
            const double carrier =
                std::sin(2.0 * std::numbers::pi * cfg.event_freq_hz * static_cast<double>(i) /
                             cfg.rate_hz +
                         p.phase);
            x[static_cast<std::size_t>(p.onset + i)] += cfg.event_amplitude * env * carrier;
        }
        truth.events.push_back(GroundTruth::Event{p.onset, dur});
    }

    return {Trace{std::move(x), cfg.rate_hz}, std::move(truth)};
}

}  // namespace centro
