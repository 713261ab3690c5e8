#include "centro/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace centro {

std::vector<int> default_w_grid() {
    std::vector<int> grid;
    for (int w = 50; w <= 300; w += 5) grid.push_back(w);
    return grid;
}

DetectOutput run_detect(const Trace& raw, const PipelineParams& params) {
    validate(raw);
    Trace work = raw;
    if (params.resample_hz)
        work = resample_linear(work, *params.resample_hz);
    work = bandpass_fir(work, params.band_low, params.band_high, params.n_taps);
    work = zscore_normalize(work);

    DetectOutput out;
    const KernelConfig kernel = kernel_from_trace(work, params.shrink);
    out.sigma_star = kernel.sigma_star;

    int w = 0;
    if (params.w) {
        w = *params.w;
    } else {
        out.sweep = sweep_w(work, default_w_grid(), params.m, params.r, params.shrink,
                            params.workers);
        w = out.sweep->w_star;
    }

    const WindowMatrix xm = windowize(work, w);
    out.decomposition = decompose(xm, kernel.sigma, params.r, params.workers);
    out.decomposition.snippets = find_snippets(work, out.decomposition.s_indices, w, params.m);
    if (!out.decomposition.snippets.empty())
        out.decomposition.gamma = threshold_gamma(out.decomposition.snippets);
    out.conditioned = std::move(work);
    return out;
}

ResultDocument make_result(const DetectOutput& out, const PipelineParams& params,
                           const std::string& input_name, std::uint64_t seed) {
    ResultDocument doc;
    doc.input = input_name;
    doc.rate_hz = out.conditioned.rate_hz;
    doc.band_low = params.band_low;
    doc.band_high = params.band_high;
    doc.w_used = out.decomposition.w_used;
    doc.m = params.m;
    doc.r = params.r;
    doc.shrink = params.shrink;
    doc.seed = seed;
    doc.sigma_star = out.sigma_star;
    doc.sigma_used = out.decomposition.sigma_used;
    doc.rho_star = out.decomposition.rho_star;
    doc.gamma = out.decomposition.gamma;
    doc.l_indices = out.decomposition.l_indices;
    doc.s_indices = out.decomposition.s_indices;
    for (const Snippet& s : out.decomposition.snippets)
        doc.snippets.push_back(ResultDocument::SnippetRow{s.start_sample, s.length, s.norm});
    if (out.sweep) {
        for (const SweepPoint& p : out.sweep->curve) doc.sweep.emplace_back(p.w, p.gamma);
    }
    return doc;
}

CompareOutput run_compare(const Trace& raw, const PipelineParams& params) {
    validate(raw);
    Trace work = raw;
    if (params.resample_hz)
        work = resample_linear(work, *params.resample_hz);
    work = bandpass_fir(work, params.band_low, params.band_high, params.n_taps);
    work = zscore_normalize(work);

    CompareOutput out;
    const KernelConfig kernel = kernel_from_trace(work, params.shrink);

    out.sweep = sweep_w(work, default_w_grid(), params.m, params.r, params.shrink, params.workers);
    out.w_used = params.w ? *params.w : out.sweep.w_star;
    const int w = out.w_used;

    auto timed = [](const std::function<void()>& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        return std::chrono::duration<double, std::milli>(t1 - t0).count();
    };

    // correntropy model
    {
        CompareRow row;
        row.method = "correntropy";
        try {
            DecompositionResult dec;
            row.wall_ms = timed([&] {
                const WindowMatrix xm = windowize(work, w);
                dec = decompose(xm, kernel.sigma, params.r, params.workers);
                dec.snippets = find_snippets(work, dec.s_indices, w, params.m);
                if (!dec.snippets.empty())
                    dec.gamma = threshold_gamma(dec.snippets);
            });
            row.gamma = dec.gamma;
            if (!row.gamma)
                row.status = "failed: no events detected";

            // sorted similarity curve with class labels (descending)
            const WindowMatrix xm = windowize(work, w);
            const SimilarityVector sim =
                similarity_vector(correntropy_matrix(xm, kernel.sigma, params.workers));
            std::vector<int> order(static_cast<std::size_t>(xm.n_cols));
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(),
                      [&](int a, int b) { return sim.z(a) > sim.z(b); });
            std::vector<char> cls(static_cast<std::size_t>(xm.n_cols), '-');
            for (int j : dec.l_indices) cls[static_cast<std::size_t>(j)] = 'L';
            for (int j : dec.s_indices) cls[static_cast<std::size_t>(j)] = 'S';
            for (int j : order) {
                out.sorted_z.push_back(sim.z(j));
                out.sorted_class.push_back(cls[static_cast<std::size_t>(j)]);
            }
        } catch (const std::exception& e) {
            row.status = std::string("failed: ") + e.what();
        }
        out.rows.push_back(row);
    }

    // embedding transform
    {
        CompareRow row;
        row.method = "embedding";
        try {
            EmbeddingResult emb;
            row.wall_ms = timed([&] { emb = embedding_transform(work, w, params.r); });
            row.gamma = emb.gamma;
        } catch (const std::exception& e) {
            row.status = std::string("failed: ") + e.what();
        }
        out.rows.push_back(row);
    }

    // RPCA
    {
        CompareRow row;
        row.method = "rpca";
        try {
            RpcaThresholdResult rp;
            row.wall_ms = timed([&] { rp = rpca_threshold(work, w, params.m); });
            row.gamma = rp.gamma;
            if (!rp.converged)
                row.status = "ok (not converged)";
        } catch (const std::exception& e) {
            row.status = std::string("failed: ") + e.what();
        }
        out.rows.push_back(row);
    }

    out.conditioned = std::move(work);
    return out;
}

}  // namespace centro
