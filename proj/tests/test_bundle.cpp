#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heatpath/bundle.hpp"

using namespace heatpath;

namespace {

PiecewiseGeodesicPath line_path(double a, double b, double t, int n) {
    ManifoldSpec m = ManifoldSpec::euclidean(1);
    std::vector<Point> nodes;
    for (int j = 0; j <= n; ++j) nodes.push_back(m.point({a + (b - a) * j / n}));
    return make_path(m, make_partition(t, n), nodes);
}

}  // namespace

TEST_CASE("transport composition and inverses") {
    TransportValue a = TransportValue::identity_matrix(2);
    a.matrix << 1.0, 2.0, 0.5, 3.0;
    TransportValue b = TransportValue::identity_matrix(2);
    b.matrix << 0.0, 1.0, -1.0, 1.0;
    TransportValue ba = compose_transport(b, a);
    CHECK((ba.matrix - b.matrix * a.matrix).norm() == 0.0);
    CHECK((compose_transport(a, a.inverse()).matrix -
           Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-12);

    TransportValue c = TransportValue::identity_complex();
    c.complex_scalar = std::complex<double>(0.6, 0.8);
    CHECK(std::abs(compose_transport(c, c.inverse()).complex_scalar - 1.0) < 1e-12);
    CHECK_THROWS_AS(compose_transport(a, c), std::invalid_argument);
}

TEST_CASE("constant scalar potential integrates to an exponential") {
    PiecewiseGeodesicPath p = line_path(0.0, 1.0, 2.0, 4);
    double c = 0.37;
    TransportValue t = path_ordered_exponential(p, ScalarPotential{[=](const Point&) { return c; }});
    CHECK(t.kind == TransportValue::Kind::Scalar);
    CHECK(t.scalar == doctest::Approx(std::exp(2.0 * c)).epsilon(1e-10));
}

TEST_CASE("scalar potential agrees with the rank-1 endomorphism") {
    PiecewiseGeodesicPath p = line_path(-0.5, 1.5, 1.0, 3);
    ScalarField V = [](const Point& q) { return std::sin(q.coords[0]); };
    TransportValue s = path_ordered_exponential(p, ScalarPotential{V});
    EndomorphismPotential ep{1, [&](const Point& q) {
                                 return Eigen::MatrixXd::Constant(1, 1, V(q));
                             }};
    TransportValue e = path_ordered_exponential(p, ep);
    CHECK(e.matrix(0, 0) == doctest::Approx(s.scalar).epsilon(1e-10));
    // and with the quadrature weight (V only, no connection phase)
    std::complex<double> w = magnetic_weight(p, nullptr, V);
    CHECK(w.real() == doctest::Approx(1.0 / s.scalar).epsilon(1e-8));
}

TEST_CASE("closed loop magnetic phase on the circle") {
    ManifoldSpec m = ManifoldSpec::flat_torus({2.0 * M_PI});
    double a = 0.3;
    OneForm omega = [a](const Point&) { return Vec::Constant(1, a); };
    Partition tau = make_partition(1.0, 4);
    std::vector<Point> nodes;
    for (int j = 0; j <= 4; ++j) nodes.push_back(m.point({2.0 * M_PI * j / 4.0}));
    PiecewiseGeodesicPath loop = make_path(m, tau, nodes);

    std::complex<double> w = magnetic_weight(loop, omega, nullptr);
    std::complex<double> expect = std::exp(std::complex<double>(0.0, 2.0 * M_PI * a));
    CHECK(std::abs(w - expect) < 1e-8);

    // the path-ordered transport is its inverse
    TransportValue t = path_ordered_exponential(loop, MagneticWeight{omega, nullptr});
    CHECK(std::abs(t.complex_scalar * w - 1.0) < 1e-8);
}

TEST_CASE("gauge transformation shifts the phase by the endpoint difference") {
    ManifoldSpec m = ManifoldSpec::flat_torus({2.0 * M_PI});
    Partition tau = make_partition(0.7, 5);
    std::vector<Point> nodes;
    for (int j = 0; j <= 5; ++j) nodes.push_back(m.point({0.3 + 0.5 * j}));
    PiecewiseGeodesicPath p = make_path(m, tau, nodes);

    OneForm omega = [](const Point& q) { return Vec::Constant(1, 0.3); };
    auto f = [](const Point& q) { return 0.7 * std::sin(q.coords[0]); };
    OneForm omega_g = [&](const Point& q) {
        return Vec::Constant(1, 0.3 + 0.7 * std::cos(q.coords[0]));
    };
    std::complex<double> w = magnetic_weight(p, omega, nullptr);
    std::complex<double> wg = magnetic_weight(p, omega_g, nullptr);
    std::complex<double> shift =
        std::exp(std::complex<double>(0.0, f(p.nodes.back()) - f(p.nodes.front())));
    CHECK(std::abs(wg - w * shift) < 1e-9);
}

TEST_CASE("transport is invariant under partition refinement") {
    ScalarField V = [](const Point& q) { return std::cos(3.0 * q.coords[0]); };
    TransportValue coarse = path_ordered_exponential(line_path(0.0, 2.0, 1.0, 2), ScalarPotential{V});
    TransportValue fine = path_ordered_exponential(line_path(0.0, 2.0, 1.0, 16), ScalarPotential{V});
    CHECK(fine.scalar == doctest::Approx(coarse.scalar).epsilon(1e-9));
}

TEST_CASE("step tolerance violations raise") {
    // oscillations faster than the step cap can resolve must be refused,
    // not integrated to garbage
    ScalarField V = [](const Point& q) { return 5.0 * std::cos(40000.0 * q.coords[0]); };
    CHECK_THROWS_AS(
        path_ordered_exponential(line_path(0.0, 3.0, 1.0, 1), ScalarPotential{V}, 1),
        IntegratorStepError);
}

TEST_CASE("noncommuting endomorphisms are path-ordered") {
    // V(x) switches between non-commuting matrices along the path; compare
    // against a dense product of midpoint exponentials
    EndomorphismPotential ep{2, [](const Point& q) {
                                 Eigen::MatrixXd v(2, 2);
                                 double x = q.coords[0];
                                 v << 0.0, 1.0 + x, 1.0 + x, x * x;
                                 return v;
                             }};
    PiecewiseGeodesicPath p = line_path(0.0, 1.0, 1.0, 2);
    TransportValue t = path_ordered_exponential(p, ep);
    // reference: fine product of exp(V dt)
    int steps = 20000;
    Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(2, 2);
    for (int i = 0; i < steps; ++i) {
        double x = (i + 0.5) / steps;
        Eigen::MatrixXd v(2, 2);
        v << 0.0, 1.0 + x, 1.0 + x, x * x;
        acc = (Eigen::MatrixXd::Identity(2, 2) + v / steps +
               0.5 * (v / steps) * (v / steps)) * acc;
    }
    CHECK((t.matrix - acc).norm() < 1e-6 * acc.norm());
}
