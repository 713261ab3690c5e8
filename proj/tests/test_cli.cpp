#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "centro/io.hpp"

#ifndef CENTRO_TOOL_PATH
#error "CENTRO_TOOL_PATH must point at the centro binary"
#endif

namespace {

namespace fs = std::filesystem;

std::string tmp(const std::string& name) {
    return (fs::temp_directory_path() / name).string();
}

int run(const std::string& args) {
    const std::string cmd = std::string(CENTRO_TOOL_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

long count_lines(const std::string& path) {
    std::ifstream f(path);
    long n = 0;
    std::string line;
    while (std::getline(f, line))
        if (!line.empty())
            ++n;
    return n;
}

}  // namespace

TEST_CASE("synth writes a trace and its ground truth") {
    const std::string out = tmp("cli_synth.csv");
    const std::string truth = out + ".truth";
    REQUIRE(run("synth --duration 30 --events 5 --seed 9 --out " + out) == 0);
    CHECK(fs::exists(out));
    CHECK(fs::exists(truth));
    CHECK(count_lines(out) == 6000);
    CHECK(count_lines(truth) == 5);

    // same seed, byte-identical outputs
    const std::string out2 = tmp("cli_synth2.csv");
    REQUIRE(run("synth --duration 30 --events 5 --seed 9 --out " + out2) == 0);
    CHECK(slurp(out) == slurp(out2));
    CHECK(slurp(truth) == slurp(out2 + ".truth"));

    // no events: empty annotation file
    const std::string out3 = tmp("cli_synth3.csv");
    REQUIRE(run("synth --duration 30 --events 0 --seed 9 --out " + out3) == 0);
    CHECK(count_lines(out3 + ".truth") == 0);

    for (const auto& p : {out, truth, out2, out2 + ".truth", out3, out3 + ".truth"})
        fs::remove(p);
}

TEST_CASE("detect then eval round trip with exit code 0") {
    const std::string trace = tmp("cli_trace.csv");
    const std::string result = tmp("cli_result.json");
    REQUIRE(run("synth --duration 300 --events 10 --event-amp 4 --seed 2 --out " + trace) == 0);
    REQUIRE(run("detect --input " + trace + " --w 150 --workers 1 --out " + result) == 0);

    const centro::ResultDocument doc = centro::read_result(result);
    CHECK(doc.w_used == 150);
    CHECK(doc.gamma.has_value());
    CHECK(!doc.snippets.empty());
    CHECK(!doc.metrics.has_value());

    REQUIRE(run("eval --result " + result + " --truth " + trace + ".truth --tol 0.5") == 0);
    const centro::ResultDocument scored = centro::read_result(result);
    REQUIRE(scored.metrics.has_value());
    CHECK(scored.metrics->f1 >= 0.7);
    CHECK(scored.metrics->tol_s == 0.5);

    fs::remove(trace);
    fs::remove(trace + ".truth");
    fs::remove(result);
}

TEST_CASE("detect is deterministic across invocations") {
    const std::string trace = tmp("cli_det.csv");
    const std::string r1 = tmp("cli_det1.json");
    const std::string r2 = tmp("cli_det2.json");
    REQUIRE(run("synth --duration 120 --events 4 --seed 33 --out " + trace) == 0);
    REQUIRE(run("detect --input " + trace + " --w 150 --seed 33 --workers 1 --out " + r1) == 0);
    REQUIRE(run("detect --input " + trace + " --w 150 --seed 33 --workers 1 --out " + r2) == 0);

    const centro::ResultDocument a = centro::read_result(r1);
    const centro::ResultDocument b = centro::read_result(r2);
    CHECK(centro::result_to_json(a, false) == centro::result_to_json(b, false));

    fs::remove(trace);
    fs::remove(trace + ".truth");
    fs::remove(r1);
    fs::remove(r2);
}

TEST_CASE("degenerate input exits with the no-events code") {
    // two windows leave every background candidate below the three values a
    // skewness test needs, so no split exists
    const std::string trace = tmp("cli_twocol.csv");
    {
        std::ofstream f(trace);
        std::mt19937_64 rng(3);
        std::normal_distribution<double> g;
        for (int i = 0; i < 420; ++i) f << g(rng) << "\n";
    }
    CHECK(run("detect --input " + trace + " --w 200") == 2);
    fs::remove(trace);
}

TEST_CASE("missing and malformed inputs exit with the error code") {
    CHECK(run("detect --input /nonexistent/file.csv --w 150") == 1);
    const std::string bad = tmp("cli_badtrace.csv");
    {
        std::ofstream f(bad);
        f << "1.0\nbroken\n";
    }
    CHECK(run("detect --input " + bad + " --w 150") == 1);
    fs::remove(bad);
}

TEST_CASE("sweep emits a csv curve") {
    const std::string trace = tmp("cli_sweep.csv");
    const std::string curve = tmp("cli_curve.csv");
    REQUIRE(run("synth --duration 120 --events 4 --seed 5 --out " + trace) == 0);
    REQUIRE(run("sweep --input " + trace + " --grid 100:200:50 --out " + curve) == 0);
    const std::string text = slurp(curve);
    CHECK(text.find("w,gamma") == 0);
    CHECK(count_lines(curve) == 4);  // header + three grid points
    fs::remove(trace);
    fs::remove(trace + ".truth");
    fs::remove(curve);
}

TEST_CASE("compare writes the table and plot data") {
    const std::string trace = tmp("cli_cmp.csv");
    const std::string out = tmp("cli_cmp_out.csv");
    REQUIRE(run("synth --duration 300 --events 10 --event-amp 4 --seed 2 --out " + trace) == 0);
    REQUIRE(run("compare --input " + trace + " --w 150 --workers 1 --out " + out) == 0);
    CHECK(fs::exists(out));
    CHECK(fs::exists(out + ".sorted_z.csv"));
    CHECK(fs::exists(out + ".sweep.csv"));
    const std::string table = slurp(out);
    CHECK(table.find("correntropy") != std::string::npos);
    CHECK(table.find("embedding") != std::string::npos);
    CHECK(table.find("rpca") != std::string::npos);
    fs::remove(trace);
    fs::remove(trace + ".truth");
    fs::remove(out);
    fs::remove(out + ".sorted_z.csv");
    fs::remove(out + ".sweep.csv");
}

TEST_CASE("eval honors 1-based scorer columns") {
    const std::string trace = tmp("cli_sc.csv");
    const std::string result = tmp("cli_sc.json");
    const std::string truth = tmp("cli_sc.truth");
    REQUIRE(run("synth --duration 300 --events 8 --event-amp 4 --seed 3 --out " + trace) == 0);
    REQUIRE(run("detect --input " + trace + " --w 150 --out " + result) == 0);

    // rebuild the truth file with a leading junk column
    {
        std::ifstream in(trace + ".truth");
        std::ofstream out_f(truth);
        double onset = 0.0, dur = 0.0;
        while (in >> onset >> dur) out_f << "id " << onset << " " << dur << "\n";
    }
    REQUIRE(run("eval --result " + result + " --truth " + truth + " --scorer-cols 2,3") == 0);
    const centro::ResultDocument doc = centro::read_result(result);
    REQUIRE(doc.metrics.has_value());
    CHECK(doc.metrics->tp + doc.metrics->fn == 8);

    fs::remove(trace);
    fs::remove(trace + ".truth");
    fs::remove(result);
    fs::remove(truth);
}
