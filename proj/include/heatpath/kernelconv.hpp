#pragma once

// Quadrature grids on the catalog manifolds, single-step approximate kernel
// families (plain, curvature-corrected, L2-normalized), weighted kernel
// convolution, Chernoff time-slicing products and empirical convergence-rate
// measurement against reference kernels.

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "heatpath/bundle.hpp"
#include "heatpath/geom.hpp"
#include "heatpath/pathspace.hpp"
#include "heatpath/reference.hpp"

namespace heatpath {

struct UnsupportedManifold : std::runtime_error {
    explicit UnsupportedManifold(const std::string& what) : std::runtime_error(what) {}
};

struct QuadratureGrid {
    ManifoldSpec manifold;
    std::vector<Point> points;
    Eigen::VectorXd weights;
    int resolution = 0;

    std::size_t size() const { return points.size(); }
};

// Uniform grid on tori, Gauss-Legendre-in-latitude grid on the sphere,
// midpoint rule on the interval. Euclidean space has no canonical finite
// grid; use build_box_grid for truncated-domain experiments.
inline std::shared_ptr<const QuadratureGrid> build_grid(const ManifoldSpec& m, int resolution) {
    if (resolution < 2) throw std::invalid_argument("build_grid: resolution >= 2");
    auto g = std::make_shared<QuadratureGrid>();
    g->manifold = m;
    g->resolution = resolution;
    switch (m.kind) {
        case ManifoldKind::Euclidean:
            throw UnsupportedManifold("build_grid: Euclidean space is not compact");
        case ManifoldKind::FlatTorus: {
            long n = 1;
            for (int i = 0; i < m.dim; ++i) n *= resolution;
            double w = m.volume() / double(n);
            g->weights = Eigen::VectorXd::Constant(n, w);
            for (long idx = 0; idx < n; ++idx) {
                Vec c(m.dim);
                long r = idx;
                for (int i = 0; i < m.dim; ++i) {
                    c[i] = m.side_lengths[i] * double(r % resolution) / resolution;
                    r /= resolution;
                }
                g->points.push_back(Point{std::move(c)});
            }
            break;
        }
        case ManifoldKind::Sphere: {
            double r = m.radius;
            QuadRule gl = gauss_legendre(resolution);
            int nphi = 2 * resolution;
            double dphi = 2.0 * M_PI / nphi;
            g->weights.resize(long(resolution) * nphi);
            long k = 0;
            for (int i = 0; i < resolution; ++i) {
                double u = gl.nodes[i];
                double st = std::sqrt(std::max(0.0, 1.0 - u * u));
                for (int j = 0; j < nphi; ++j, ++k) {
                    double phi = dphi * j;
                    Vec c(3);
                    c << r * st * std::cos(phi), r * st * std::sin(phi), r * u;
                    g->points.push_back(Point{std::move(c)});
                    g->weights[k] = r * r * gl.weights[i] * dphi;
                }
            }
            break;
        }
        case ManifoldKind::Interval: {
            double h = m.length / resolution;
            g->weights = Eigen::VectorXd::Constant(resolution, h);
            for (int i = 0; i < resolution; ++i) g->points.push_back(m.point({(i + 0.5) * h}));
            break;
        }
    }
    return g;
}

// Midpoint tensor grid on [lo, hi]^n for Euclidean experiments on a
// truncated box.
inline std::shared_ptr<const QuadratureGrid> build_box_grid(const ManifoldSpec& m, double lo,
                                                            double hi, int resolution) {
    if (m.kind != ManifoldKind::Euclidean)
        throw std::invalid_argument("build_box_grid: Euclidean only");
    if (!(hi > lo) || resolution < 2) throw std::invalid_argument("build_box_grid: bad box");
    auto g = std::make_shared<QuadratureGrid>();
    g->manifold = m;
    g->resolution = resolution;
    double h = (hi - lo) / resolution;
    long n = 1;
    for (int i = 0; i < m.dim; ++i) n *= resolution;
    g->weights = Eigen::VectorXd::Constant(n, std::pow(h, m.dim));
    for (long idx = 0; idx < n; ++idx) {
        Vec c(m.dim);
        long r = idx;
        for (int i = 0; i < m.dim; ++i) {
            c[i] = lo + (double(r % resolution) + 0.5) * h;
            r /= resolution;
        }
        g->points.push_back(Point{std::move(c)});
    }
    return g;
}

struct KernelMatrix {
    std::shared_ptr<const QuadratureGrid> grid;
    Eigen::MatrixXd values;
    double time = 0.0;
};

// PlainH1:      (2 pi t)^{-n/2} e^{-S} J^{-1}
// EllCorrected: PlainH1 * exp((1/12) int scal - (1/12) ric(dgamma, dgamma))
// L2Corrected:  (2 pi t)^{-n/2} e^{-S - (1/6) int scal} J^{-2}
// L2NoScal:     L2Corrected without the scalar-curvature term (its limit
//               solves the wrong equation; kept to demonstrate that)
enum class KernelFamily { PlainH1, EllCorrected, L2Corrected, L2NoScal };

inline const char* kernel_family_name(KernelFamily f) {
    switch (f) {
        case KernelFamily::PlainH1: return "plain-h1";
        case KernelFamily::EllCorrected: return "ell-corrected";
        case KernelFamily::L2Corrected: return "l2-corrected";
        case KernelFamily::L2NoScal: return "l2-noscal";
    }
    return "?";
}

namespace detail {

// int_0^t V along the straight line a -> b in coordinates, mapped through
// fold (identity for the torus where coordinates only need canonicalizing).
template <class FoldFn>
inline double potential_along_line(const ManifoldSpec& m, const ScalarField& V, double t,
                                   const Vec& a, const Vec& b, const FoldFn& fold) {
    const QuadRule& q = segment_rule();
    double s = 0.0;
    for (std::size_t k = 0; k < q.nodes.size(); ++k) {
        Vec z = a + q.nodes[k] * (b - a);
        s += t * q.weights[k] * V(fold(z));
    }
    return s;
}

}  // namespace detail

// Single-step kernel of the selected family. Flat manifolds sum over all
// geodesic classes (torus translates, interval reflections with boundary
// signs), so no truncation is needed there; the sphere kernel is cut off at
// truncation * injectivity radius.
inline double eval_kernel(KernelFamily family, const ManifoldSpec& m, double t, const Point& x,
                          const Point& y, const ScalarField& V = nullptr,
                          double truncation = 0.9, int images = 8) {
    if (!(t > 0.0)) throw std::invalid_argument("eval_kernel: t > 0");
    double pref = std::pow(2.0 * M_PI * t, -0.5 * m.dim);
    switch (m.kind) {
        case ManifoldKind::Euclidean: {
            double d2 = (x.coords - y.coords).squaredNorm();
            double s0 = 0.5 * d2 / t;
            double vi = V ? detail::potential_along_line(m, V, t, x.coords, y.coords,
                                                         [](const Vec& z) { return Point{z}; })
                          : 0.0;
            return pref * std::exp(-s0 - vi);
        }
        case ManifoldKind::FlatTorus: {
            // image sum over translates, |m_i| <= images per dimension
            std::vector<long> idx(m.dim, -images);
            KahanSum sum;
            for (;;) {
                Vec target = y.coords;
                for (int i = 0; i < m.dim; ++i) target[i] += idx[i] * m.side_lengths[i];
                double s0 = 0.5 * (target - x.coords).squaredNorm() / t;
                double vi = V ? detail::potential_along_line(
                                    m, V, t, x.coords, target,
                                    [&](const Vec& z) { return m.canonicalize(z); })
                              : 0.0;
                sum.add(std::exp(-s0 - vi));
                int i = 0;
                while (i < m.dim && ++idx[i] > images) idx[i++] = -images;
                if (i == m.dim) break;
            }
            return pref * sum.value();
        }
        case ManifoldKind::Sphere: {
            double d = distance(m, x, y);
            if (d >= truncation * M_PI * m.radius) return 0.0;
            double r = m.radius, r2 = r * r;
            double theta = d / r;
            double J = theta < 1e-8 ? 1.0 - theta * theta / 6.0 : std::sin(theta) / theta;
            double s0 = 0.5 * d * d / t;
            double scal_int = t * 2.0 / r2;
            double vi = 0.0;
            if (V) {
                GeodesicSegment seg = make_segment(m, x, y, t);
                const QuadRule& q = segment_rule();
                for (std::size_t k = 0; k < q.nodes.size(); ++k)
                    vi += t * q.weights[k] * V(segment_point(m, seg, q.nodes[k]));
            }
            switch (family) {
                case KernelFamily::PlainH1:
                    return pref * std::exp(-s0 - vi) / J;
                case KernelFamily::EllCorrected:
                    // ric(dgamma, dgamma) = d^2 / r^2
                    return pref * std::exp(-s0 - vi + scal_int / 12.0 - d * d / (12.0 * r2)) / J;
                case KernelFamily::L2Corrected:
                    return pref * std::exp(-s0 - vi - scal_int / 6.0) / (J * J);
                case KernelFamily::L2NoScal:
                    return pref * std::exp(-s0 - vi) / (J * J);
            }
            return 0.0;
        }
        case ManifoldKind::Interval: {
            double L = m.length, a = x.coords[0], b = y.coords[0];
            double sign = m.bc == BoundaryCondition::Dirichlet ? -1.0 : 1.0;
            KahanSum sum;
            auto fold = [&](const Vec& z) { return m.point({reflect_unfold(L, a, z[0]).folded}); };
            auto image_term = [&](double target, double s) {
                double s0 = 0.5 * (target - a) * (target - a) / t;
                double vi = V ? detail::potential_along_line(m, V, t, Vec::Constant(1, a),
                                                             Vec::Constant(1, target), fold)
                              : 0.0;
                sum.add(s * std::exp(-s0 - vi));
            };
            for (int k = -images; k <= images; ++k) {
                image_term(b + 2.0 * k * L, 1.0);
                image_term(-b + 2.0 * k * L, sign);
            }
            return pref * sum.value();
        }
    }
    throw std::logic_error("eval_kernel: unknown kind");
}

// Matrix of the single-step kernel on a grid.
inline KernelMatrix assemble_kernel(const std::shared_ptr<const QuadratureGrid>& grid,
                                    KernelFamily family, double t, const ScalarField& V = nullptr,
                                    double truncation = 0.9) {
    const auto& g = *grid;
    long n = long(g.size());
    KernelMatrix k;
    k.grid = grid;
    k.time = t;
    k.values.resize(n, n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
    for (long i = 0; i < n; ++i)
        for (long j = i; j < n; ++j) {
            double v = eval_kernel(family, g.manifold, t, g.points[i], g.points[j], V, truncation);
            k.values(i, j) = v;
            k.values(j, i) = v;
        }
    return k;
}

// Reference (spectrally exact) kernel sampled on a grid.
inline KernelMatrix assemble_reference_kernel(const std::shared_ptr<const QuadratureGrid>& grid,
                                              double t) {
    const auto& g = *grid;
    long n = long(g.size());
    KernelMatrix k;
    k.grid = grid;
    k.time = t;
    k.values.resize(n, n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
    for (long i = 0; i < n; ++i)
        for (long j = i; j < n; ++j) {
            double v = reference_kernel(g.manifold, t, g.points[i], g.points[j]);
            k.values(i, j) = v;
            k.values(j, i) = v;
        }
    return k;
}

// (k * l)(x, y) = int k(x, z) l(z, y) dz on the shared grid.
inline KernelMatrix convolve(const KernelMatrix& k, const KernelMatrix& l) {
    if (k.grid != l.grid) throw std::invalid_argument("convolve: kernels on different grids");
    KernelMatrix out;
    out.grid = k.grid;
    out.time = k.time + l.time;
    out.values = k.values * k.grid->weights.asDiagonal() * l.values;
    return out;
}

// Quadrature delta: convolving with it is the identity.
inline KernelMatrix grid_identity_kernel(const std::shared_ptr<const QuadratureGrid>& grid) {
    KernelMatrix k;
    k.grid = grid;
    k.values = Eigen::MatrixXd(grid->weights.cwiseInverse().asDiagonal());
    return k;
}

// Time-sliced product K_{dt_1} * ... * K_{dt_N} over the partition. Uniform
// partitions use binary powering of the weight-symmetrized step matrix
// B = W^{1/2} K W^{1/2}, so N factors cost O(log N) products.
inline KernelMatrix chernoff_product(KernelFamily family, const ManifoldSpec& m,
                                     const std::shared_ptr<const QuadratureGrid>& grid,
                                     const Partition& tau, const PathWeight* weight = nullptr,
                                     double truncation = 0.9) {
    if (grid->manifold.kind != m.kind) throw std::invalid_argument("chernoff_product: grid/manifold mismatch");
    ScalarField V = nullptr;
    if (weight) {
        if (!std::holds_alternative<ScalarPotential>(*weight))
            throw std::invalid_argument(
                "chernoff_product: grid products support scalar potentials only");
        V = std::get<ScalarPotential>(*weight).V;
    }
    int N = tau.segments();
    bool uniform = true;
    for (int j = 1; j < N; ++j)
        if (std::abs(tau.dt(j) - tau.dt(0)) > 1e-12 * tau.total()) uniform = false;

    if (!uniform) {
        KernelMatrix acc = assemble_kernel(grid, family, tau.dt(0), V, truncation);
        for (int j = 1; j < N; ++j)
            acc = convolve(acc, assemble_kernel(grid, family, tau.dt(j), V, truncation));
        return acc;
    }

    KernelMatrix step = assemble_kernel(grid, family, tau.dt(0), V, truncation);
    if (N == 1) return step;
    Eigen::VectorXd sw = grid->weights.cwiseSqrt();
    Eigen::MatrixXd B = sw.asDiagonal() * step.values * sw.asDiagonal();
    Eigen::MatrixXd acc;
    bool have = false;
    Eigen::MatrixXd pw = B;
    int rem = N;
    while (rem > 0) {
        if (rem & 1) {
            acc = have ? Eigen::MatrixXd(acc * pw) : pw;
            have = true;
        }
        rem >>= 1;
        if (rem > 0) pw = pw * pw;
    }
    KernelMatrix out;
    out.grid = grid;
    out.time = tau.total();
    Eigen::VectorXd isw = sw.cwiseInverse();
    // W^{-1/2} B^N W^{-1/2} = K (W K)^{N-1}, the N-fold convolution
    out.values = isw.asDiagonal() * acc * isw.asDiagonal();
    return out;
}

struct ConvergenceRow {
    int n_segments = 0;
    double sup_error = 0.0;
};

struct ConvergenceReport {
    KernelFamily family = KernelFamily::PlainH1;
    double t = 0.0;
    std::vector<ConvergenceRow> rows;
    double fitted_rate = 0.0;  // least-squares slope of log error vs log mesh
    bool exact = false;        // all errors below the flat-exactness floor
};

inline ConvergenceReport convergence_report(KernelFamily family, const ManifoldSpec& m, double t,
                                            const std::vector<int>& n_list,
                                            const std::shared_ptr<const QuadratureGrid>& grid,
                                            const KernelMatrix& reference,
                                            double exact_floor = 1e-8) {
    ConvergenceReport rep;
    rep.family = family;
    rep.t = t;
    std::vector<double> lx, ly;
    for (int n : n_list) {
        KernelMatrix kn = chernoff_product(family, m, grid, make_partition(t, n));
        double err = (kn.values - reference.values).cwiseAbs().maxCoeff();
        rep.rows.push_back({n, err});
        if (err > 0.0) {
            lx.push_back(std::log(t / n));
            ly.push_back(std::log(err));
        }
    }
    rep.exact = true;
    for (const auto& r : rep.rows)
        if (r.sup_error >= exact_floor) rep.exact = false;
    rep.fitted_rate = lx.size() >= 2 ? ls_slope(lx, ly) : 0.0;
    return rep;
}

}  // namespace heatpath
