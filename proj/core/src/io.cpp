#include "centro/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace centro {

using ordered_json = nlohmann::ordered_json;

Trace read_csv_trace(const std::string& path, double rate_hz) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("csv: cannot open '" + path + "'");
    Trace trace;
    trace.rate_hz = rate_hz;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        try {
            std::size_t used = 0;
            const double v = std::stod(line, &used);
            while (used < line.size() && (line[used] == ' ' || line[used] == '\r')) ++used;
            if (used != line.size())
                throw std::invalid_argument(line);
            trace.samples.push_back(v);
        } catch (const std::exception&) {
            throw std::runtime_error("csv: line " + std::to_string(line_no) +
                                     " is not a number: '" + line + "'");
        }
    }
    if (trace.samples.empty())
        throw std::runtime_error("csv: '" + path + "' holds no samples");
    validate(trace);
    return trace;
}

void write_csv_trace(const std::string& path, const Trace& trace) {
    validate(trace);
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("csv: cannot write '" + path + "'");
    char buf[64];
    for (double v : trace.samples) {
        std::snprintf(buf, sizeof buf, "%.17g\n", v);
        out << buf;
    }
}

namespace {

std::vector<std::string> split_columns(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> cols;
    std::string tok;
    while (ss >> tok) cols.push_back(tok);
    return cols;
}

bool numeric_token(const std::string& tok) {
    try {
        std::size_t used = 0;
        (void)std::stod(tok, &used);
        return used == tok.size();
    } catch (const std::exception&) {
        return false;
    }
}

// A first line whose configured columns do not parse as numbers is a header.
// A short but fully numeric first line is malformed data, not a header.
bool looks_like_header(const std::string& line, int onset_col, int dur_col) {
    const std::vector<std::string> cols = split_columns(line);
    const int needed = std::max(onset_col, dur_col) + 1;
    if (static_cast<int>(cols.size()) < needed) {
        for (const std::string& tok : cols)
            if (!numeric_token(tok))
                return true;
        return false;
    }
    return !numeric_token(cols[static_cast<std::size_t>(onset_col)]) ||
           !numeric_token(cols[static_cast<std::size_t>(dur_col)]);
}

}  // namespace

std::vector<EventAnnotation> read_annotations(const std::string& path, int scorer_id,
                                              int onset_col, int dur_col) {
    if (onset_col < 0 || dur_col < 0)
        throw std::invalid_argument("annotations: column indices must be non-negative");
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("annotations: cannot open '" + path + "'");

    std::vector<EventAnnotation> out;
    std::string line;
    long line_no = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        if (first_content) {
            first_content = false;
            if (looks_like_header(line, onset_col, dur_col))
                continue;
        }
        const std::vector<std::string> cols = split_columns(line);
        const int needed = std::max(onset_col, dur_col) + 1;
        if (static_cast<int>(cols.size()) < needed)
            throw std::runtime_error("annotations: line " + std::to_string(line_no) +
                                     " has " + std::to_string(cols.size()) +
                                     " column(s), need " + std::to_string(needed));
        EventAnnotation a;
        a.scorer_id = scorer_id;
        try {
            std::size_t used = 0;
            a.onset_s = std::stod(cols[static_cast<std::size_t>(onset_col)], &used);
            if (used != cols[static_cast<std::size_t>(onset_col)].size())
                throw std::invalid_argument("onset");
            a.duration_s = std::stod(cols[static_cast<std::size_t>(dur_col)], &used);
            if (used != cols[static_cast<std::size_t>(dur_col)].size())
                throw std::invalid_argument("duration");
        } catch (const std::exception&) {
            throw std::runtime_error("annotations: line " + std::to_string(line_no) +
                                     " is not parseable: '" + line + "'");
        }
        if (a.onset_s < 0.0 || a.duration_s <= 0.0)
            throw std::runtime_error("annotations: line " + std::to_string(line_no) +
                                     ": onset must be >= 0 and duration > 0");
        out.push_back(a);
    }
    std::sort(out.begin(), out.end(),
              [](const EventAnnotation& a, const EventAnnotation& b) { return a.onset_s < b.onset_s; });
    return out;
}

void write_annotations(const std::string& path, const std::vector<EventAnnotation>& annotations) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("annotations: cannot write '" + path + "'");
    char buf[96];
    for (const EventAnnotation& a : annotations) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", a.onset_s, a.duration_s);
        out << buf;
    }
}

std::vector<EventSpan> to_spans(const std::vector<EventAnnotation>& annotations, double rate_hz) {
    std::vector<EventSpan> spans;
    spans.reserve(annotations.size());
    for (const EventAnnotation& a : annotations) {
        EventSpan e;
        e.onset = std::llround(a.onset_s * rate_hz);
        e.length = std::max<long>(1, std::llround(a.duration_s * rate_hz));
        spans.push_back(e);
    }
    return spans;
}

namespace {

ordered_json result_json(const ResultDocument& doc, bool include_run_info) {
    ordered_json j;
    j["format"] = "centro-result-v1";
    j["input"] = doc.input;
    j["rate_hz"] = doc.rate_hz;
    j["band"] = {doc.band_low, doc.band_high};
    j["w"] = doc.w_used;
    j["m"] = doc.m;
    j["r"] = doc.r;
    j["shrink"] = doc.shrink;
    j["seed"] = doc.seed;
    j["sigma_star"] = doc.sigma_star;
    j["sigma"] = doc.sigma_used;
    j["rho_star"] = doc.rho_star;
    if (doc.gamma)
        j["gamma"] = *doc.gamma;
    else
        j["gamma"] = nullptr;
    j["l_indices"] = doc.l_indices;
    j["s_indices"] = doc.s_indices;
    ordered_json snips = ordered_json::array();
    for (const ResultDocument::SnippetRow& s : doc.snippets) {
        ordered_json row;
        row["start"] = s.start;
        row["length"] = s.length;
        row["norm"] = s.norm;
        snips.push_back(row);
    }
    j["snippets"] = snips;
    ordered_json sweep = ordered_json::array();
    for (const auto& [w, gamma] : doc.sweep) {
        ordered_json row;
        row["w"] = w;
        if (gamma)
            row["gamma"] = *gamma;
        else
            row["gamma"] = nullptr;
        sweep.push_back(row);
    }
    j["sweep"] = sweep;
    if (doc.metrics) {
        ordered_json m;
        m["precision"] = doc.metrics->precision;
        m["recall"] = doc.metrics->recall;
        m["f1"] = doc.metrics->f1;
        m["tp"] = doc.metrics->tp;
        m["fp"] = doc.metrics->fp;
        m["fn"] = doc.metrics->fn;
        m["tol_s"] = doc.metrics->tol_s;
        j["metrics"] = m;
    } else {
        j["metrics"] = nullptr;
    }
    ordered_json bench = ordered_json::array();
    for (const BenchRecord& b : doc.bench) {
        ordered_json row;
        row["method"] = b.method_name;
        row["trace_len"] = b.trace_len;
        row["wall_ms"] = b.wall_ms;
        row["workers"] = b.workers;
        row["converged"] = b.converged;
        bench.push_back(row);
    }
    j["bench"] = bench;
    if (include_run_info) {
        ordered_json info;
        info["wall_ms"] = doc.run_wall_ms;
        j["run_info"] = info;
    }
    return j;
}

}  // namespace

std::string result_to_json(const ResultDocument& doc, bool include_run_info) {
    return result_json(doc, include_run_info).dump(2) + "\n";
}

void write_result(const std::string& path, const ResultDocument& doc) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("result: cannot write '" + path + "'");
    out << result_to_json(doc, true);
}

ResultDocument read_result(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("result: cannot open '" + path + "'");
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("result: '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.contains("format") || j["format"] != "centro-result-v1")
        throw std::runtime_error("result: '" + path + "' is not a centro result document");

    ResultDocument doc;
    doc.input = j.at("input").get<std::string>();
    doc.rate_hz = j.at("rate_hz").get<double>();
    doc.band_low = j.at("band").at(0).get<double>();
    doc.band_high = j.at("band").at(1).get<double>();
    doc.w_used = j.at("w").get<int>();
    doc.m = j.at("m").get<int>();
    doc.r = j.at("r").get<int>();
    doc.shrink = j.at("shrink").get<double>();
    doc.seed = j.at("seed").get<std::uint64_t>();
    doc.sigma_star = j.at("sigma_star").get<double>();
    doc.sigma_used = j.at("sigma").get<double>();
    doc.rho_star = j.at("rho_star").get<int>();
    if (!j.at("gamma").is_null())
        doc.gamma = j.at("gamma").get<double>();
    doc.l_indices = j.at("l_indices").get<std::vector<int>>();
    doc.s_indices = j.at("s_indices").get<std::vector<int>>();
    for (const auto& row : j.at("snippets")) {
        ResultDocument::SnippetRow s;
        s.start = row.at("start").get<long>();
        s.length = row.at("length").get<int>();
        s.norm = row.at("norm").get<double>();
        doc.snippets.push_back(s);
    }
    for (const auto& row : j.at("sweep")) {
        std::optional<double> g;
        if (!row.at("gamma").is_null())
            g = row.at("gamma").get<double>();
        doc.sweep.emplace_back(row.at("w").get<int>(), g);
    }
    if (!j.at("metrics").is_null()) {
        MetricsBlock m;
        const auto& mj = j.at("metrics");
        m.precision = mj.at("precision").get<double>();
        m.recall = mj.at("recall").get<double>();
        m.f1 = mj.at("f1").get<double>();
        m.tp = mj.at("tp").get<long>();
        m.fp = mj.at("fp").get<long>();
        m.fn = mj.at("fn").get<long>();
        m.tol_s = mj.at("tol_s").get<double>();
        doc.metrics = m;
    }
    for (const auto& row : j.at("bench")) {
        BenchRecord b;
        b.method_name = row.at("method").get<std::string>();
        b.trace_len = row.at("trace_len").get<long>();
        b.wall_ms = row.at("wall_ms").get<double>();
        b.workers = row.at("workers").get<int>();
        b.converged = row.at("converged").get<bool>();
        doc.bench.push_back(b);
    }
    if (j.contains("run_info") && j["run_info"].contains("wall_ms"))
        doc.run_wall_ms = j["run_info"]["wall_ms"].get<double>();
    return doc;
}

}  // namespace centro
