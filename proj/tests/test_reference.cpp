#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heatpath/reference.hpp"

using namespace heatpath;

TEST_CASE("flat kernel closed form") {
    Vec x = Vec::Zero(1), y = Vec::Zero(1);
    CHECK(exact_kernel_flat(1, 1.0, x, y) == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)));

    // normalization over a wide box (midpoint rule)
    double t = 0.3, sum = 0.0;
    int n = 4000;
    for (int i = 0; i < n; ++i) {
        Vec yi = Vec::Constant(1, -20.0 + 40.0 * (i + 0.5) / n);
        sum += exact_kernel_flat(1, t, x, yi) * 40.0 / n;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));

    // semigroup by Gaussian algebra at spot values
    double s = 0.2;
    Vec a = Vec::Constant(1, 0.7);
    double conv = 0.0;
    for (int i = 0; i < n; ++i) {
        Vec z = Vec::Constant(1, -20.0 + 40.0 * (i + 0.5) / n);
        conv += exact_kernel_flat(1, s, x, z) * exact_kernel_flat(1, t, z, a) * 40.0 / n;
    }
    CHECK(conv == doctest::Approx(exact_kernel_flat(1, s + t, x, a)).epsilon(1e-10));
}

TEST_CASE("torus reference is stochastically complete") {
    ManifoldSpec m = ManifoldSpec::flat_torus({1.0});
    for (double t : {0.05, 0.5, 2.0}) {
        double sum = 0.0;
        int n = 256;
        for (int i = 0; i < n; ++i)
            sum += reference_kernel(m, t, m.point({0.3}), m.point({double(i) / n})) / n;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("sphere reference long-time limit and symmetry") {
    ManifoldSpec m = ManifoldSpec::sphere(1.0);
    Point x = m.point({0.0, 0.0, 1.0});
    Point y = m.point({1.0, 0.0, 0.0});
    CHECK(reference_kernel(m, 50.0, x, y) == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-10));
    CHECK(reference_kernel(m, 0.7, x, y) ==
          doctest::Approx(reference_kernel(m, 0.7, y, x)).epsilon(1e-13));
    // high-precision branch agrees with the double branch where both apply
    double c = std::cos(M_PI / 2);
    double direct = reference_kernel(m, 0.25, x, y);  // d^2/2t ~ 4.9, double path
    CHECK(detail::sphere_series_mp(1.0, 0.25, c) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("interval images agree with the eigenseries") {
    for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann}) {
        ManifoldSpec m = ManifoldSpec::interval(M_PI, bc);
        for (double t : {0.01, 0.1, 0.5, 2.0}) {
            for (double x : {0.4, 1.5707, 2.9}) {
                for (double y : {0.2, 2.2}) {
                    double im = reference_kernel(m, t, m.point({x}), m.point({y}));
                    double es = interval_eigenseries_kernel(m, t, x, y, 512);
                    CHECK(std::abs(im - es) < 1e-8);
                }
            }
        }
    }
}

TEST_CASE("interval Dirichlet long-time leading mode") {
    ManifoldSpec m = ManifoldSpec::interval(M_PI, BoundaryCondition::Dirichlet);
    double t = 14.0, x = M_PI / 2;
    double lead = (2.0 / M_PI) * std::exp(-t * 0.5);
    CHECK(reference_kernel(m, t, m.point({x}), m.point({x})) ==
          doctest::Approx(lead).epsilon(1e-4));
}

TEST_CASE("truncation warnings") {
    ManifoldSpec m = ManifoldSpec::flat_torus({1.0});
    bool warn = false;
    reference_kernel(m, 0.5, m.point({0.0}), m.point({0.3}), 8, &warn);
    CHECK_FALSE(warn);
    warn = false;
    reference_kernel(m, 20.0, m.point({0.0}), m.point({0.3}), 1, &warn);  // images cut early
    CHECK(warn);
}

TEST_CASE("spectral basis closed forms") {
    SpectralBasis circle = make_spectral_basis(ManifoldSpec::flat_torus({2.0}), 3);
    CHECK(circle.eigenvalues[0] == 0.0);
    CHECK(circle.eigenvalues[1] == doctest::Approx(0.5 * std::pow(M_PI, 2)));  // (2 pi /L)^2/2
    CHECK(circle.eigenvalues[2] == circle.eigenvalues[1]);

    SpectralBasis sph = make_spectral_basis(ManifoldSpec::sphere(1.0), 4);
    for (int l = 0; l <= 4; ++l) CHECK(sph.eigenvalues[l] == doctest::Approx(l * (l + 1) / 2.0));

    SpectralBasis iv = make_spectral_basis(
        ManifoldSpec::interval(2.0, BoundaryCondition::Dirichlet), 3);
    CHECK(iv.eigenvalues[0] == doctest::Approx(0.5 * std::pow(M_PI / 2.0, 2)));
}

TEST_CASE("potential solver reproduces constant shifts") {
    // V = c: u(t) = e^{-ct} * heat evolution of u0
    ManifoldSpec circle = ManifoldSpec::flat_torus({2.0 * M_PI});
    double t = 0.5, c = 0.9;
    auto u0 = [](const Point& p) { return 1.0 + std::cos(p.coords[0]); };
    Point x = circle.point({0.4});
    double free_evolved = 1.0 + std::exp(-0.5 * t) * std::cos(0.4);
    double got = fk_reference(circle, [=](const Point&) { return c; }, t, x, u0);
    CHECK(got == doctest::Approx(std::exp(-c * t) * free_evolved).epsilon(1e-10));

    // sphere with a constant potential, zonal initial value
    ManifoldSpec sp = ManifoldSpec::sphere(1.0);
    auto z0 = [](const Point& p) { return p.coords[2]; };  // the l = 1 zonal mode
    Point xs = sp.point({0.0, 0.0, 1.0});
    double want = std::exp(-t / 4.0) * std::exp(-1.0 * t) * 1.0;  // l(l+1)/2 = 1
    CHECK(fk_reference(sp, [](const Point&) { return 0.25; }, t, xs, z0) ==
          doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("potential solver is stable under order doubling") {
    ManifoldSpec circle = ManifoldSpec::flat_torus({2.0 * M_PI});
    ScalarField vcos = [](const Point& p) { return std::cos(p.coords[0]); };
    auto ones = [](const Point&) { return 1.0; };
    Point x = circle.point({0.0});
    bool warn = false;
    double a = fk_reference(circle, vcos, 0.5, x, ones, 16, &warn);
    CHECK_FALSE(warn);
    double b = fk_reference(circle, vcos, 0.5, x, ones, 33);
    CHECK(a == doctest::Approx(b).epsilon(1e-9));

    // interval with a polynomial potential, both conditions
    for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann}) {
        ManifoldSpec iv = ManifoldSpec::interval(M_PI, bc);
        ScalarField vx = [](const Point& p) { return p.coords[0] * (M_PI - p.coords[0]); };
        auto u0 = [](const Point& p) { return std::sin(p.coords[0]); };
        // the sine-basis expansion of a polynomial potential converges only
        // polynomially, so the order has to be generous
        warn = false;
        double v1 = fk_reference(iv, vx, 0.3, iv.point({1.0}), u0, 128, &warn);
        CHECK_FALSE(warn);
        CHECK(v1 == doctest::Approx(fk_reference(iv, vx, 0.3, iv.point({1.0}), u0, 192))
                        .epsilon(1e-8));
    }
}
