#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "heatpath/stochastic.hpp"

using namespace heatpath;

TEST_CASE("tail mass matches the 1-D closed form") {
    // for n = 1, P(|Z| > R) = erfc(R / sqrt(2 s))
    for (double s : {0.1, 0.5, 2.0})
        for (double R : {0.5, 1.0, 3.0})
            CHECK(gaussian_tail_mass(1, s, R) ==
                  doctest::Approx(std::erfc(R / std::sqrt(2.0 * s))).epsilon(1e-10));
    CHECK(gaussian_tail_mass(2, 1.0, std::numeric_limits<double>::infinity()) == 0.0);
    // chi-square with 2 dof: exact exp(-R^2/2s)
    CHECK(gaussian_tail_mass(2, 0.5, 1.2) == doctest::Approx(std::exp(-1.44 / 1.0)).epsilon(1e-10));
}

TEST_CASE("truncation bias bound shrinks with the truncation radius") {
    ManifoldSpec m = ManifoldSpec::sphere(1.0);
    Point x = m.point({0.0, 0.0, 1.0});
    Partition tau = make_partition(1.0, 16);
    double b90 = truncation_bias_bound(m, x, tau, 0.9);
    double b99 = truncation_bias_bound(m, x, tau, 0.99);
    CHECK(b90 > b99);
    CHECK(b99 > 0.0);
    CHECK(b90 < 1e-20);  // radius^2 / (2 dt) = (0.9 pi)^2 * 8 is far out
    CHECK(truncation_bias_bound(ManifoldSpec::euclidean(2), Point{Vec::Zero(2)}, tau, 0.9) == 0.0);
}

TEST_CASE("sampled endpoint distribution is Gaussian on the line") {
    ManifoldSpec m = ManifoldSpec::euclidean(1);
    Point x0 = m.point({0.0});
    double t = 1.0;
    Partition tau = make_partition(t, 4);
    long n = 100000;
    std::vector<double> ends;
    ends.reserve(n);
    for (long i = 0; i < n; ++i) {
        GaussianStream g(5, i);
        ends.push_back(sample_polygon_path(m, x0, tau, g).nodes.back().coords[0]);
    }
    std::sort(ends.begin(), ends.end());
    double ks = 0.0;
    for (long i = 0; i < n; ++i) {
        double cdf = 0.5 * std::erfc(-ends[i] / std::sqrt(2.0 * t));
        ks = std::max(ks, std::max(std::abs(cdf - double(i) / n), std::abs(cdf - double(i + 1) / n)));
    }
    CHECK(ks < 0.01);
}

TEST_CASE("sampling is deterministic given the seed") {
    ManifoldSpec m = ManifoldSpec::sphere(1.0);
    Point x = m.point({0.0, 0.0, 1.0});
    Partition tau = make_partition(0.5, 8);
    SamplerConfig cfg;
    cfg.seed = 99;
    cfg.n_samples = 500;
    auto F = [](const std::vector<Point>& nodes) { return nodes.back().coords[2]; };
    MCEstimate a = cylinder_expectation(m, x, tau, F, cfg);
    MCEstimate b = cylinder_expectation(m, x, tau, F, cfg);
    CHECK(a.mean == b.mean);
    CHECK(a.stderr_ == b.stderr_);
    cfg.seed = 100;
    MCEstimate c = cylinder_expectation(m, x, tau, F, cfg);
    CHECK(a.mean != c.mean);
}

TEST_CASE("Brownian covariance on the line") {
    ManifoldSpec m = ManifoldSpec::euclidean(1);
    Point x0 = m.point({0.0});
    SamplerConfig cfg;
    cfg.seed = 3;
    cfg.n_samples = 50000;
    Partition tau = make_partition(1.0, 8);
    auto F = [](const std::vector<Point>& nodes) {
        return nodes[2].coords[0] * nodes[6].coords[0];  // E = min(1/4, 3/4)
    };
    MCEstimate e = cylinder_expectation(m, x0, tau, F, cfg);
    CHECK(std::abs(e.real_mean() - 0.25) < 3.0 * e.stderr_);
}

TEST_CASE("torus endpoint Fourier mode") {
    // E[cos(2 pi gamma(t))] = exp(-(2 pi)^2 t / 2) on the unit circle
    ManifoldSpec m = ManifoldSpec::flat_torus({1.0});
    Point x0 = m.point({0.0});
    double t = 0.1;
    SamplerConfig cfg;
    cfg.seed = 8;
    cfg.n_samples = 100000;
    Partition tau = make_partition(t, 16);
    auto F = [](const std::vector<Point>& nodes) {
        return std::cos(2.0 * M_PI * nodes.back().coords[0]);
    };
    MCEstimate e = cylinder_expectation(m, x0, tau, F, cfg);
    double target = std::exp(-0.5 * std::pow(2.0 * M_PI, 2) * t);
    CHECK(std::abs(e.real_mean() - target) <
          3.0 * e.stderr_ + e.truncation_bias_bound + 1e-12);
}

TEST_CASE("mesh refinement is Cauchy on the sphere") {
    ManifoldSpec m = ManifoldSpec::sphere(1.0);
    Point x = m.point({0.0, 0.0, 1.0});
    SamplerConfig cfg;
    cfg.seed = 21;
    cfg.n_samples = 40000;
    auto F = [](const std::vector<Point>& nodes) { return nodes.back().coords[2]; };
    MCEstimate a = cylinder_expectation(m, x, make_partition(0.5, 8), F, cfg);
    MCEstimate b = cylinder_expectation(m, x, make_partition(0.5, 16), F, cfg);
    double se = std::sqrt(a.stderr_ * a.stderr_ + b.stderr_ * b.stderr_);
    CHECK(std::abs(a.real_mean() - b.real_mean()) < 3.0 * se + 0.01);
}

TEST_CASE("Feynman-Kac with the harmonic potential on the line") {
    // closed form: u(t, 0) = sech(t)^{1/2} for V = x^2/2, u0 = 1
    ManifoldSpec m = ManifoldSpec::euclidean(1);
    Point x0 = m.point({0.0});
    double t = 0.5;
    SamplerConfig cfg;
    cfg.seed = 4;
    cfg.n_samples = 100000;
    ScalarField V = [](const Point& p) { return 0.5 * p.coords[0] * p.coords[0]; };
    MCEstimate e = feynman_kac_mc(m, x0, make_partition(t, 64), ScalarPotential{V},
                                  [](const Point&) { return 1.0; }, cfg);
    double target = std::sqrt(1.0 / std::cosh(t));
    CHECK(std::abs(e.real_mean() - target) < std::max(3.0 * e.stderr_, 0.01 * target));
}

TEST_CASE("quadratic variation statistics on the sphere") {
    ManifoldSpec m = ManifoldSpec::sphere(1.0);
    Point x = m.point({0.0, 0.0, 1.0});
    SamplerConfig cfg;
    cfg.seed = 6;
    cfg.n_samples = 20000;
    QuadraticVariationStats qv = quadratic_variation_stats(m, x, make_partition(1.0, 64), cfg);
    CHECK(qv.n == cfg.n_samples);
    // E[sum ric(inc, inc)] ~ scal * t = 2, and the recovered int scal is
    // exactly 2 (scal constant), with zero variance
    CHECK(std::abs(qv.ric_increments_mean - 2.0) < std::max(3.0 * qv.ric_increments_stderr, 0.1));
    CHECK(qv.scal_integral_mean == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(qv.scal_integral_stderr < 1e-10);
}
