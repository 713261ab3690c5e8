#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "centro/correntropy.hpp"
#include "support/oracles.hpp"

using centro::Trace;

TEST_CASE("gaussian kernel values") {
    CHECK(centro::gaussian_kernel(0.0, 1.0) == doctest::Approx(0.3989422804).epsilon(1e-9));
    CHECK(centro::gaussian_kernel(1.0, 1.0) == doctest::Approx(0.2419707245).epsilon(1e-9));
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 3.0);
    for (int i = 0; i < 50; ++i) {
        const double u = g(rng);
        CHECK(centro::gaussian_kernel(u, 1.7) == centro::gaussian_kernel(-u, 1.7));
        CHECK(centro::gaussian_kernel(u, 1.7) > 0.0);
    }
    CHECK_THROWS_AS(centro::gaussian_kernel(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(centro::gaussian_kernel(1.0, -2.0), std::invalid_argument);
}

namespace {

Trace normalized_noise(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Trace t;
    t.rate_hz = 200.0;
    t.samples.resize(n);
    for (double& v : t.samples) v = g(rng);
    double mean = std::accumulate(t.samples.begin(), t.samples.end(), 0.0) /
                  static_cast<double>(n);
    for (double& v : t.samples) v -= mean;
    const double sd = centro::population_std(t.samples);
    for (double& v : t.samples) v /= sd;
    return t;
}

}  // namespace

TEST_CASE("silverman bandwidth") {
    const Trace t1k = normalized_noise(1000, 1);
    CHECK(centro::silverman_bandwidth(t1k) == doctest::Approx(0.2663).epsilon(1e-3));
    CHECK(centro::silverman_bandwidth(t1k) ==
          doctest::Approx(1.06 * std::pow(1000.0, -0.2)).epsilon(1e-12));

    const Trace big = normalized_noise(360000, 2);
    const double sigma_star = centro::silverman_bandwidth(big);
    CHECK(std::abs(sigma_star - 0.08204) <= 1e-4);
    CHECK(std::abs(sigma_star / 1.5 - 0.0547) <= 1e-4);

    // linear in the scale
    Trace scaled = t1k;
    for (double& v : scaled.samples) v *= 2.0;
    CHECK(centro::silverman_bandwidth(scaled) ==
          doctest::Approx(2.0 * centro::silverman_bandwidth(t1k)).epsilon(1e-12));

    Trace flat;
    flat.rate_hz = 100.0;
    flat.samples = {2.0, 2.0, 2.0};
    CHECK_THROWS_AS(centro::silverman_bandwidth(flat), std::invalid_argument);
}

TEST_CASE("correntropy estimate") {
    std::vector<double> x = {0.0, 1.0};
    std::vector<double> y = {1.0, 0.0};
    CHECK(centro::correntropy_estimate(x, y, 1.0) == doctest::Approx(0.2419707245).epsilon(1e-9));

    std::vector<double> same = {0.3, -0.7, 2.1};
    CHECK(centro::correntropy_estimate(same, same, 0.4) == centro::gaussian_kernel(0.0, 0.4));

    std::mt19937_64 rng(17);
    std::normal_distribution<double> g;
    std::vector<double> a(50), b(50);
    for (int i = 0; i < 50; ++i) {
        a[static_cast<std::size_t>(i)] = g(rng);
        b[static_cast<std::size_t>(i)] = g(rng);
    }
    double want = 0.0;
    for (int i = 0; i < 50; ++i)
        want += oracle::gauss_kernel(a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)], 0.8);
    want /= 50.0;
    CHECK(std::abs(centro::correntropy_estimate(a, b, 0.8) - want) <= 1e-12);

    std::vector<double> shorter = {1.0};
    CHECK_THROWS_AS(centro::correntropy_estimate(a, shorter, 1.0), std::invalid_argument);
}

TEST_CASE("windowize shapes and round trip") {
    Trace t;
    t.rate_hz = 10.0;
    for (int i = 0; i < 10; ++i) t.samples.push_back(i);

    const centro::WindowMatrix w3 = centro::windowize(t, 3);
    CHECK(w3.n_cols == 3);
    CHECK(w3.dropped_tail == 1);
    const centro::WindowMatrix w5 = centro::windowize(t, 5);
    CHECK(w5.n_cols == 2);
    CHECK(w5.dropped_tail == 0);

    // concatenating columns then the tail reproduces the trace
    std::vector<double> rebuilt;
    for (int c = 0; c < w3.n_cols; ++c)
        for (int i = 0; i < w3.w; ++i) rebuilt.push_back(w3.data(i, c));
    for (long i = static_cast<long>(t.samples.size()) - w3.dropped_tail;
         i < static_cast<long>(t.samples.size()); ++i)
        rebuilt.push_back(t.samples[static_cast<std::size_t>(i)]);
    CHECK(rebuilt == t.samples);

    CHECK_THROWS_AS(centro::windowize(t, 1), std::invalid_argument);
    CHECK_THROWS_AS(centro::windowize(t, 6), std::invalid_argument);
}

TEST_CASE("correntropy matrix against the naive oracle") {
    std::mt19937_64 rng(23);
    centro::WindowMatrix xm;
    xm.w = 8;
    xm.n_cols = 6;
    xm.data = oracle::random_matrix(8, 6, rng);

    const centro::CorrentropyMatrix c = centro::correntropy_matrix(xm, 0.7);
    const Eigen::MatrixXd want = oracle::naive_correntropy_matrix(xm.data, 0.7);
    CHECK((c.values - want).cwiseAbs().maxCoeff() <= 1e-12);

    // diagonal is the kernel at zero, symmetry is exact
    for (int j = 0; j < 6; ++j) CHECK(c.values(j, j) == c.kappa0);
    CHECK((c.values - c.values.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(c.values.minCoeff() > 0.0);
    CHECK(c.values.maxCoeff() <= c.kappa0 + 1e-15);

    // two identical columns meet at kappa0 off the diagonal
    xm.data.col(2) = xm.data.col(5);
    const centro::CorrentropyMatrix c2 = centro::correntropy_matrix(xm, 0.7);
    CHECK(c2.values(2, 5) == doctest::Approx(c2.kappa0).epsilon(1e-15));
}

TEST_CASE("worker count does not change the matrix") {
    std::mt19937_64 rng(29);
    centro::WindowMatrix xm;
    xm.w = 16;
    xm.n_cols = 11;
    xm.data = oracle::random_matrix(16, 11, rng);

    const centro::CorrentropyMatrix c1 = centro::correntropy_matrix(xm, 0.5, 1);
    for (int workers : {2, 3, 7}) {
        const centro::CorrentropyMatrix cw = centro::correntropy_matrix(xm, 0.5, workers);
        CHECK((c1.values - cw.values).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("similarity vector") {
    std::mt19937_64 rng(31);
    centro::WindowMatrix xm;
    xm.w = 8;
    xm.n_cols = 6;
    xm.data = oracle::random_matrix(8, 6, rng);
    const centro::CorrentropyMatrix c = centro::correntropy_matrix(xm, 0.9);
    const centro::SimilarityVector z = centro::similarity_vector(c);
    const Eigen::VectorXd want = oracle::naive_similarity(c.values);
    CHECK((z.z - want).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(z.z.minCoeff() > 0.0);
    CHECK(z.z.maxCoeff() <= 6.0 * c.kappa0 + 1e-12);

    // identical columns: every entry is n * kappa0
    centro::WindowMatrix same;
    same.w = 4;
    same.n_cols = 5;
    same.data = Eigen::MatrixXd::Zero(4, 5);
    for (int j = 0; j < 5; ++j) same.data.col(j) << 0.1, -0.2, 0.3, 0.4;
    const centro::SimilarityVector zs =
        centro::similarity_vector(centro::correntropy_matrix(same, 0.6));
    for (int j = 0; j < 5; ++j)
        CHECK(zs.z(j) == doctest::Approx(5.0 * centro::gaussian_kernel(0.0, 0.6)).epsilon(1e-12));

    // a large-amplitude outlier column maps to the smallest similarity
    std::mt19937_64 rng2(37);
    centro::WindowMatrix out;
    out.w = 32;
    out.n_cols = 8;
    out.data = oracle::random_matrix(32, 8, rng2);
    out.data.col(3) *= 25.0;
    const centro::SimilarityVector zo =
        centro::similarity_vector(centro::correntropy_matrix(out, 0.3));
    int arg_min = 0;
    zo.z.minCoeff(&arg_min);
    CHECK(arg_min == 3);
}

TEST_CASE("positive rescaling of the matrix keeps the similarity ranking") {
    std::mt19937_64 rng(41);
    centro::WindowMatrix xm;
    xm.w = 12;
    xm.n_cols = 9;
    xm.data = oracle::random_matrix(12, 9, rng);
    centro::CorrentropyMatrix c = centro::correntropy_matrix(xm, 0.45);

    auto ranking = [](const Eigen::VectorXd& z) {
        std::vector<int> order(static_cast<std::size_t>(z.size()));
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return z(a) < z(b); });
        return order;
    };
    const auto base = ranking(centro::similarity_vector(c).z);
    for (double scale : {0.001, 3.0, 1000.0}) {
        centro::CorrentropyMatrix scaled = c;
        scaled.values *= scale;
        CHECK(ranking(centro::similarity_vector(scaled).z) == base);
    }
}
