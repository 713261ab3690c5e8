// centro: correntropy-based separation of band-limited time series into a
// structured background and sparse transient events, with the embedding
// transform and RPCA as reference baselines.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "centro/baselines.hpp"
#include "centro/edf.hpp"
#include "centro/io.hpp"
#include "centro/pipeline.hpp"
#include "centro/synth.hpp"

namespace {

constexpr int kExitBadInput = 1;
constexpr int kExitNoEvents = 2;

struct CommonOpts {
    std::string input;
    double rate_hz = 200.0;
    std::string band = "11,16";
    std::string w = "auto";
    int m = 150;
    double shrink = 1.5;
    int r = 99;
    std::uint64_t seed = 0;
    int workers = 0;
    std::string out;
    std::optional<double> resample_hz;
    int channel = 0;
};

std::pair<double, double> parse_band(const std::string& band) {
    const std::size_t comma = band.find(',');
    if (comma == std::string::npos)
        throw std::runtime_error("--band expects LOW,HIGH");
    return {std::stod(band.substr(0, comma)), std::stod(band.substr(comma + 1))};
}

int effective_workers(int requested) {
    if (requested > 0)
        return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

centro::Trace load_trace(const CommonOpts& opts) {
    const std::filesystem::path path(opts.input);
    if (path.extension() == ".edf" || path.extension() == ".EDF") {
        centro::EdfRecording rec = centro::read_edf(opts.input);
        if (opts.channel < 0 || opts.channel >= static_cast<int>(rec.traces.size()))
            throw std::runtime_error("channel " + std::to_string(opts.channel) +
                                     " out of range; file has " +
                                     std::to_string(rec.traces.size()) + " signal(s)");
        return rec.traces[static_cast<std::size_t>(opts.channel)];
    }
    return centro::read_csv_trace(opts.input, opts.rate_hz);
}

centro::PipelineParams make_params(const CommonOpts& opts) {
    centro::PipelineParams params;
    const auto [lo, hi] = parse_band(opts.band);
    params.band_low = lo;
    params.band_high = hi;
    if (opts.w != "auto")
        params.w = std::stoi(opts.w);
    params.m = opts.m;
    params.shrink = opts.shrink;
    params.r = opts.r;
    params.workers = effective_workers(opts.workers);
    params.resample_hz = opts.resample_hz;
    return params;
}

int cmd_synth(const centro::SynthConfig& cfg, const std::string& out,
              const std::string& truth_out) {
    auto [trace, truth] = centro::synth_trace(cfg);
    centro::write_csv_trace(out, trace);
    std::vector<centro::EventAnnotation> annotations;
    for (const centro::GroundTruth::Event& e : truth.events) {
        centro::EventAnnotation a;
        a.onset_s = static_cast<double>(e.onset_sample) / cfg.rate_hz;
        a.duration_s = static_cast<double>(e.length_samples) / cfg.rate_hz;
        annotations.push_back(a);
    }
    centro::write_annotations(truth_out, annotations);
    std::printf("wrote %zu samples to %s, %zu events to %s\n", trace.samples.size(), out.c_str(),
                annotations.size(), truth_out.c_str());
    return 0;
}

int cmd_detect(const CommonOpts& opts) {
    const centro::Trace raw = load_trace(opts);
    const centro::PipelineParams params = make_params(opts);

    const auto t0 = std::chrono::steady_clock::now();
    centro::DetectOutput out;
    try {
        out = centro::run_detect(raw, params);
    } catch (const centro::DegenerateSplitError& e) {
        std::cerr << "no separable events: " << e.what() << "\n";
        return kExitNoEvents;
    }
    const auto t1 = std::chrono::steady_clock::now();

    centro::ResultDocument doc = centro::make_result(out, params, opts.input, opts.seed);
    doc.run_wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (!opts.out.empty())
        centro::write_result(opts.out, doc);

    std::printf("w=%d sigma=%.6g rho*=%d |L|=%zu |S|=%zu snippets=%zu\n", doc.w_used,
                doc.sigma_used, doc.rho_star, doc.l_indices.size(), doc.s_indices.size(),
                doc.snippets.size());
    if (doc.gamma) {
        std::printf("gamma=%.6g\n", *doc.gamma);
        return 0;
    }
    std::printf("no events detected; gamma undefined\n");
    return kExitNoEvents;
}

int cmd_sweep(const CommonOpts& opts, const std::string& grid_spec) {
    const centro::Trace raw = load_trace(opts);
    const centro::PipelineParams params = make_params(opts);

    std::vector<int> grid;
    if (grid_spec.empty()) {
        grid = centro::default_w_grid();
    } else {
        int lo = 0, hi = 0, step = 0;
        if (std::sscanf(grid_spec.c_str(), "%d:%d:%d", &lo, &hi, &step) != 3 || step <= 0 ||
            lo > hi)
            throw std::runtime_error("--grid expects LO:HI:STEP");
        for (int w = lo; w <= hi; w += step) grid.push_back(w);
    }

    centro::Trace work = raw;
    if (params.resample_hz)
        work = centro::resample_linear(work, *params.resample_hz);
    work = centro::bandpass_fir(work, params.band_low, params.band_high, params.n_taps);
    const centro::WSweepResult sweep =
        centro::sweep_w(work, grid, params.m, params.r, params.shrink, params.workers);

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!opts.out.empty()) {
        file.open(opts.out);
        if (!file)
            throw std::runtime_error("cannot write " + opts.out);
        os = &file;
    }
    *os << "w,gamma\n";
    for (const centro::SweepPoint& p : sweep.curve) {
        if (p.gamma)
            *os << p.w << "," << *p.gamma << "\n";
        else
            *os << p.w << ",\n";
    }
    std::printf("w*=%d\n", sweep.w_star);
    return 0;
}

int cmd_compare(const CommonOpts& opts) {
    const centro::Trace raw = load_trace(opts);
    const centro::PipelineParams params = make_params(opts);
    const centro::CompareOutput cmp = centro::run_compare(raw, params);

    std::printf("%-12s %-14s %-12s %s\n", "method", "gamma", "wall_ms", "status");
    for (const centro::CompareRow& row : cmp.rows) {
        if (row.gamma)
            std::printf("%-12s %-14.6g %-12.2f %s\n", row.method.c_str(), *row.gamma, row.wall_ms,
                        row.status.c_str());
        else
            std::printf("%-12s %-14s %-12.2f %s\n", row.method.c_str(), "-", row.wall_ms,
                        row.status.c_str());
    }
    // pairwise relative differences of defined thresholds
    for (std::size_t a = 0; a < cmp.rows.size(); ++a) {
        for (std::size_t b = a + 1; b < cmp.rows.size(); ++b) {
            if (cmp.rows[a].gamma && cmp.rows[b].gamma && *cmp.rows[b].gamma != 0.0) {
                const double rel =
                    std::abs(*cmp.rows[a].gamma - *cmp.rows[b].gamma) / *cmp.rows[b].gamma;
                std::printf("rel |%s - %s| / %s = %.4f\n", cmp.rows[a].method.c_str(),
                            cmp.rows[b].method.c_str(), cmp.rows[b].method.c_str(), rel);
            }
        }
    }

    if (!opts.out.empty()) {
        {
            std::ofstream zf(opts.out + ".sorted_z.csv");
            if (!zf)
                throw std::runtime_error("cannot write " + opts.out + ".sorted_z.csv");
            zf << "rank,z,class\n";
            for (std::size_t i = 0; i < cmp.sorted_z.size(); ++i)
                zf << i << "," << cmp.sorted_z[i] << "," << cmp.sorted_class[i] << "\n";
        }
        {
            std::ofstream sf(opts.out + ".sweep.csv");
            if (!sf)
                throw std::runtime_error("cannot write " + opts.out + ".sweep.csv");
            sf << "w,gamma\n";
            for (const centro::SweepPoint& p : cmp.sweep.curve) {
                if (p.gamma)
                    sf << p.w << "," << *p.gamma << "\n";
                else
                    sf << p.w << ",\n";
            }
        }
        std::ofstream tf(opts.out);
        if (!tf)
            throw std::runtime_error("cannot write " + opts.out);
        tf << "method,gamma,wall_ms,status\n";
        for (const centro::CompareRow& row : cmp.rows) {
            tf << row.method << ",";
            if (row.gamma)
                tf << *row.gamma;
            tf << "," << row.wall_ms << "," << row.status << "\n";
        }
    }
    return 0;
}

int cmd_eval(const std::string& result_path, const std::string& truth_path, double tol_s,
             const std::string& scorer_cols) {
    centro::ResultDocument doc = centro::read_result(result_path);

    int onset_col = 0;
    int dur_col = 1;
    if (!scorer_cols.empty()) {
        if (std::sscanf(scorer_cols.c_str(), "%d,%d", &onset_col, &dur_col) != 2)
            throw std::runtime_error("--scorer-cols expects ONSET,DUR (1-based)");
        --onset_col;
        --dur_col;
    }
    const std::vector<centro::EventAnnotation> truth =
        centro::read_annotations(truth_path, 1, onset_col, dur_col);

    std::vector<centro::EventSpan> detected;
    for (const centro::ResultDocument::SnippetRow& s : doc.snippets)
        detected.push_back(centro::EventSpan{s.start, s.length});
    const centro::MatchCounts counts =
        centro::match_events(detected, centro::to_spans(truth, doc.rate_hz), tol_s, doc.rate_hz);
    const centro::Prf scores = centro::prf(counts);

    centro::MetricsBlock metrics;
    metrics.precision = scores.precision;
    metrics.recall = scores.recall;
    metrics.f1 = scores.f1;
    metrics.tp = counts.true_pos;
    metrics.fp = counts.false_pos;
    metrics.fn = counts.false_neg;
    metrics.tol_s = tol_s;
    doc.metrics = metrics;
    centro::write_result(result_path, doc);

    std::printf("tp=%ld fp=%ld fn=%ld precision=%.4f recall=%.4f f1=%.4f\n", counts.true_pos,
                counts.false_pos, counts.false_neg, scores.precision, scores.recall, scores.f1);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"correntropy-based background/event decomposition of time series"};
    app.require_subcommand(1);

    // synth
    centro::SynthConfig synth_cfg;
    std::string synth_out;
    std::string synth_truth_out;
    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic trace plus ground truth");
    synth->add_option("--duration", synth_cfg.duration_s, "trace duration in seconds");
    synth->add_option("--rate", synth_cfg.rate_hz, "sampling rate in Hz");
    synth->add_option("--events", synth_cfg.n_events, "number of transient events");
    synth->add_option("--event-freq", synth_cfg.event_freq_hz, "event carrier frequency in Hz");
    synth->add_option("--event-dur", synth_cfg.event_dur_samples, "event length in samples");
    synth->add_option("--event-amp", synth_cfg.event_amplitude,
                      "event peak amplitude as multiple of background RMS");
    synth->add_option("--noise-exponent", synth_cfg.noise_exponent,
                      "background spectral slope (1 = pink)");
    synth->add_option("--seed", synth_cfg.seed, "random seed");
    synth->add_option("--out", synth_out, "output CSV path")->required();
    synth->add_option("--truth-out", synth_truth_out,
                      "ground-truth annotation path (default: <out>.truth)");

    // shared options builder
    auto add_common = [](CLI::App* cmd, CommonOpts& opts, bool need_input) {
        auto* in = cmd->add_option("--input", opts.input, "input trace (CSV, or .edf)");
        if (need_input)
            in->required();
        cmd->add_option("--rate", opts.rate_hz, "sampling rate of CSV input (Hz)");
        cmd->add_option("--band", opts.band, "bandpass edges LOW,HIGH in Hz");
        cmd->add_option("--w", opts.w, "segment length in samples, or 'auto'");
        cmd->add_option("--m", opts.m, "event snippet length in samples");
        cmd->add_option("--shrink", opts.shrink, "kernel width shrink factor");
        cmd->add_option("--r", opts.r, "percentile sweep upper bound");
        cmd->add_option("--seed", opts.seed, "seed echoed into the result document");
        cmd->add_option("--workers", opts.workers, "worker threads (0 = hardware)");
        cmd->add_option("--out", opts.out, "output path");
        cmd->add_option_function<double>(
            "--resample", [target = &opts.resample_hz](const double& v) { *target = v; },
            "resample input to this rate before filtering");
        cmd->add_option("--channel", opts.channel, "EDF signal index");
    };

    CommonOpts detect_opts;
    CLI::App* detect = app.add_subcommand("detect", "detect transient events in a recording");
    add_common(detect, detect_opts, true);

    CommonOpts sweep_opts;
    std::string grid_spec;
    CLI::App* sweep = app.add_subcommand("sweep", "threshold-vs-segment-length curve");
    add_common(sweep, sweep_opts, true);
    sweep->add_option("--grid", grid_spec, "segment grid LO:HI:STEP (default 50:300:5)");

    CommonOpts compare_opts;
    CLI::App* compare =
        app.add_subcommand("compare", "run correntropy, embedding and RPCA on the same input");
    add_common(compare, compare_opts, true);

    std::string eval_result;
    std::string eval_truth;
    double eval_tol = 0.5;
    std::string eval_cols;
    CLI::App* eval = app.add_subcommand("eval", "score a detection result against annotations");
    eval->add_option("--result", eval_result, "result document from detect")->required();
    eval->add_option("--truth", eval_truth, "ground-truth annotation file")->required();
    eval->add_option("--tol", eval_tol, "onset tolerance in seconds");
    eval->add_option("--scorer-cols", eval_cols, "1-based onset,duration column indices");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) {
            if (synth_truth_out.empty())
                synth_truth_out = synth_out + ".truth";
            return cmd_synth(synth_cfg, synth_out, synth_truth_out);
        }
        if (detect->parsed())
            return cmd_detect(detect_opts);
        if (sweep->parsed())
            return cmd_sweep(sweep_opts, grid_spec);
        if (compare->parsed())
            return cmd_compare(compare_opts);
        if (eval->parsed())
            return cmd_eval(eval_result, eval_truth, eval_tol, eval_cols);
    } catch (const centro::DegenerateSplitError& e) {
        std::cerr << "no separable events: " << e.what() << "\n";
        return kExitNoEvents;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return 0;
}
