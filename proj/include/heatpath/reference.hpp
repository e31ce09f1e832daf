#pragma once

// Ground-truth kernels and Feynman-Kac references: closed-form flat kernels,
// torus image sums, sphere spectral sums, interval Dirichlet/Neumann series
// (images cross-validated against eigenseries), and spectral Galerkin solves
// for heat equations with potentials.

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <functional>
#include <vector>

#include "heatpath/geom.hpp"
#include "heatpath/numerics.hpp"
#include "heatpath/pathspace.hpp"

namespace heatpath {

// K_t(x, y) = (2 pi t)^{-n/2} exp(-|x-y|^2 / 2t) on R^n.
inline double exact_kernel_flat(int n, double t, const Vec& x, const Vec& y) {
    double d2 = (x - y).squaredNorm();
    return std::pow(2.0 * M_PI * t, -0.5 * n) * std::exp(-d2 / (2.0 * t));
}

inline double gauss1d(double t, double dx) {
    return std::exp(-dx * dx / (2.0 * t)) / std::sqrt(2.0 * M_PI * t);
}

namespace detail {

inline void check_truncation(double last_term, double partial, bool* warn) {
    if (warn && std::abs(last_term) > 1e-12 * std::abs(partial)) *warn = true;
}

// Alternating Legendre series at small t cancels below double precision
// (the sum is of order exp(-d^2/2t) while individual terms are O(1)), so
// the short-time regime is summed in 250-digit floats; the antipodal kernel
// at t = 0.0125 is ~1e-171, far below any hardware mantissa.
inline double sphere_series_mp(double radius, double t, double cosd) {
    using mp = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<250>>;
    double r2 = radius * radius;
    int lmax = std::max(64, int(std::ceil(std::sqrt(1200.0 * r2 / t))));
    mp c = cosd, p0 = 1, p1 = c, sum = 0;
    mp tt = mp(t) / (2 * mp(r2));
    for (int l = 0; l <= lmax; ++l) {
        mp pl = l == 0 ? p0 : (l == 1 ? p1 : p0);
        if (l >= 2) {
            pl = ((2 * l - 1) * c * p1 - (l - 1) * p0) / l;
            p0 = p1;
            p1 = pl;
        }
        sum += (2 * l + 1) / (4 * acos(mp(-1)) * mp(r2)) * exp(-tt * l * (l + 1)) * pl;
    }
    return sum.convert_to<double>();
}

}  // namespace detail

// Heat kernel of (1/2) Laplacian on the catalog manifolds.
//  - torus: image sum of flat Gaussians, |m| <= order per dimension
//  - sphere: Legendre series up to max(order, 10/sqrt(t))
//  - interval: method of images with Dirichlet signs / Neumann all-plus
inline double reference_kernel(const ManifoldSpec& m, double t, const Point& x, const Point& y,
                               int order = 0, bool* truncation_warning = nullptr) {
    switch (m.kind) {
        case ManifoldKind::Euclidean:
            return exact_kernel_flat(m.dim, t, x.coords, y.coords);
        case ManifoldKind::FlatTorus: {
            int M = order > 0 ? order : 8;
            double prod = 1.0;
            for (int i = 0; i < m.dim; ++i) {
                double L = m.side_lengths[i];
                double dx = y.coords[i] - x.coords[i];
                KahanSum s;
                double last = 0.0;
                for (int k = -M; k <= M; ++k) {
                    last = gauss1d(t, dx + k * L);
                    s.add(last);
                }
                detail::check_truncation(gauss1d(t, dx + (M + 1) * L), s.value(), truncation_warning);
                prod *= s.value();
            }
            return prod;
        }
        case ManifoldKind::Sphere: {
            double r = m.radius, r2 = r * r;
            int lmax = std::max(order > 0 ? order : 32, int(std::ceil(10.0 / std::sqrt(t / r2))));
            double d = distance(m, x, y);
            double c = std::cos(d / r);
            if (d * d / (2.0 * t) > 25.0) return detail::sphere_series_mp(r, t, c);
            KahanSum s;
            double last = 0.0;
            for (int l = 0; l <= lmax; ++l) {
                last = (2.0 * l + 1.0) / (4.0 * M_PI * r2) *
                       std::exp(-t * l * (l + 1.0) / (2.0 * r2)) * legendre_p(l, c);
                s.add(last);
            }
            detail::check_truncation(last, s.value(), truncation_warning);
            return s.value();
        }
        case ManifoldKind::Interval: {
            int M = order > 0 ? order : 8;
            double L = m.length, a = x.coords[0], b = y.coords[0];
            double sign = m.bc == BoundaryCondition::Dirichlet ? -1.0 : 1.0;
            KahanSum s;
            for (int k = -M; k <= M; ++k) {
                s.add(gauss1d(t, a - b - 2.0 * k * L));
                s.add(sign * gauss1d(t, a + b - 2.0 * k * L));
            }
            detail::check_truncation(gauss1d(t, a - b - 2.0 * (M + 1) * L), s.value(),
                                     truncation_warning);
            return s.value();
        }
    }
    throw std::logic_error("reference_kernel: unknown kind");
}

// Eigenfunction series for the interval kernel; independent cross-check of
// the image construction.
inline double interval_eigenseries_kernel(const ManifoldSpec& m, double t, double x, double y,
                                          int kmax = 256) {
    double L = m.length;
    KahanSum s;
    if (m.bc == BoundaryCondition::Dirichlet) {
        for (int k = 1; k <= kmax; ++k) {
            double lam = 0.5 * std::pow(k * M_PI / L, 2);
            s.add(2.0 / L * std::sin(k * M_PI * x / L) * std::sin(k * M_PI * y / L) *
                  std::exp(-t * lam));
        }
    } else {
        s.add(1.0 / L);
        for (int k = 1; k <= kmax; ++k) {
            double lam = 0.5 * std::pow(k * M_PI / L, 2);
            s.add(2.0 / L * std::cos(k * M_PI * x / L) * std::cos(k * M_PI * y / L) *
                  std::exp(-t * lam));
        }
    }
    return s.value();
}

// Eigenbasis of (1/2) Laplacian restricted to the symmetry class used by the
// Galerkin references: full trig basis on the circle, zonal Legendre basis on
// the sphere, sine/cosine basis on the interval.
struct SpectralBasis {
    ManifoldSpec manifold;
    std::vector<double> eigenvalues;                       // ascending within the class
    std::function<double(int, const Point&)> eigenfunction;  // L2-orthonormal
    int order = 0;
};

inline SpectralBasis make_spectral_basis(const ManifoldSpec& m, int order) {
    SpectralBasis b;
    b.manifold = m;
    b.order = order;
    switch (m.kind) {
        case ManifoldKind::FlatTorus: {
            if (m.dim != 1) throw std::invalid_argument("make_spectral_basis: 1-D torus only");
            double L = m.side_lengths[0];
            b.eigenvalues.push_back(0.0);
            for (int k = 1; k <= order; ++k) {
                double lam = 0.5 * std::pow(2.0 * M_PI * k / L, 2);
                b.eigenvalues.push_back(lam);
                b.eigenvalues.push_back(lam);
            }
            b.eigenfunction = [L](int i, const Point& p) {
                double x = p.coords[0];
                if (i == 0) return 1.0 / std::sqrt(L);
                int k = (i + 1) / 2;
                double arg = 2.0 * M_PI * k * x / L;
                return std::sqrt(2.0 / L) * (i % 2 == 1 ? std::cos(arg) : std::sin(arg));
            };
            break;
        }
        case ManifoldKind::Sphere: {
            double r = m.radius, r2 = r * r;
            for (int l = 0; l <= order; ++l) b.eigenvalues.push_back(l * (l + 1.0) / (2.0 * r2));
            b.eigenfunction = [r, r2](int l, const Point& p) {
                return std::sqrt((2.0 * l + 1.0) / (4.0 * M_PI * r2)) *
                       legendre_p(l, p.coords[2] / r);
            };
            break;
        }
        case ManifoldKind::Interval: {
            double L = m.length;
            if (m.bc == BoundaryCondition::Dirichlet) {
                for (int k = 1; k <= order; ++k)
                    b.eigenvalues.push_back(0.5 * std::pow(k * M_PI / L, 2));
                b.eigenfunction = [L](int i, const Point& p) {
                    return std::sqrt(2.0 / L) * std::sin((i + 1) * M_PI * p.coords[0] / L);
                };
            } else {
                for (int k = 0; k <= order; ++k)
                    b.eigenvalues.push_back(0.5 * std::pow(k * M_PI / L, 2));
                b.eigenfunction = [L](int i, const Point& p) {
                    if (i == 0) return 1.0 / std::sqrt(L);
                    return std::sqrt(2.0 / L) * std::cos(i * M_PI * p.coords[0] / L);
                };
            }
            break;
        }
        default:
            throw std::invalid_argument("make_spectral_basis: unsupported manifold");
    }
    return b;
}

namespace detail {

// 1-D quadrature (points, weights) covering the manifold for basis integrals.
inline void reference_quadrature(const ManifoldSpec& m, int npts, std::vector<Point>& pts,
                                 std::vector<double>& wts) {
    pts.clear();
    wts.clear();
    switch (m.kind) {
        case ManifoldKind::FlatTorus: {
            double L = m.side_lengths[0];
            for (int i = 0; i < npts; ++i) {
                pts.push_back(m.point({L * i / npts}));
                wts.push_back(L / npts);
            }
            break;
        }
        case ManifoldKind::Interval: {
            QuadRule g = gauss_legendre(npts);
            for (int i = 0; i < npts; ++i) {
                pts.push_back(m.point({0.5 * m.length * (g.nodes[i] + 1.0)}));
                wts.push_back(0.5 * m.length * g.weights[i]);
            }
            break;
        }
        case ManifoldKind::Sphere: {
            // zonal: integrate over u = cos(theta), weight 2 pi r^2 du
            double r = m.radius;
            QuadRule g = gauss_legendre(npts);
            for (int i = 0; i < npts; ++i) {
                double u = g.nodes[i];
                double st = std::sqrt(std::max(0.0, 1.0 - u * u));
                pts.push_back(Point{[&] {
                    Vec v(3);
                    v << r * st, 0.0, r * u;
                    return v;
                }()});
                wts.push_back(2.0 * M_PI * r * r * g.weights[i]);
            }
            break;
        }
        default:
            throw std::invalid_argument("reference_quadrature: unsupported manifold");
    }
}

inline double fk_galerkin(const ManifoldSpec& m, const ScalarField& V, double t, const Point& x,
                          const ScalarField& u0, int order) {
    SpectralBasis b = make_spectral_basis(m, order);
    int n = int(b.eigenvalues.size());
    std::vector<Point> pts;
    std::vector<double> wts;
    reference_quadrature(m, std::max(8 * (order + 2), 64), pts, wts);

    Eigen::MatrixXd phi(int(pts.size()), n);
    for (int q = 0; q < int(pts.size()); ++q)
        for (int i = 0; i < n; ++i) phi(q, i) = b.eigenfunction(i, pts[q]);

    Eigen::VectorXd vw(int(pts.size())), u0w(int(pts.size()));
    for (int q = 0; q < int(pts.size()); ++q) {
        vw[q] = V(pts[q]) * wts[q];
        u0w[q] = u0(pts[q]) * wts[q];
    }
    Eigen::MatrixXd H = phi.transpose() * vw.asDiagonal() * phi;
    for (int i = 0; i < n; ++i) H(i, i) += b.eigenvalues[i];
    Eigen::VectorXd c = phi.transpose() * u0w;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    Eigen::VectorXd evolved =
        es.eigenvectors() *
        (es.eigenvalues().array() * (-t)).exp().matrix().asDiagonal() *
        (es.eigenvectors().transpose() * c);

    double val = 0.0;
    for (int i = 0; i < n; ++i) val += b.eigenfunction(i, x) * evolved[i];
    return val;
}

}  // namespace detail

// Solution u(t, x) of du/dt + (1/2 Laplacian + V) u = 0 by Galerkin in the
// spectral basis; truncation verified by an order-doubling check.
inline double fk_reference(const ManifoldSpec& m, const ScalarField& V, double t, const Point& x,
                           const ScalarField& u0, int order = 32,
                           bool* truncation_warning = nullptr) {
    double v1 = detail::fk_galerkin(m, V, t, x, u0, order);
    double v2 = detail::fk_galerkin(m, V, t, x, u0, 2 * order);
    if (truncation_warning && std::abs(v1 - v2) > 1e-8 * std::max(1.0, std::abs(v2)))
        *truncation_warning = true;
    return v2;
}

}  // namespace heatpath
