#pragma once

// Closed-form Riemannian geometry for the built-in manifold catalog:
// Euclidean space, flat tori, the round 2-sphere and a bounded interval.
// Exponential/logarithm maps, distances, parallel transport, the Jacobian of
// the exponential map and curvature data are all closed-form; there is no
// chart machinery and no numerical geodesic shooting.

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "heatpath/numerics.hpp"

namespace heatpath {

// Small vector with inline storage; embedding dimension never exceeds 8.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 8, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 8, 8>;

struct CutLocusError : std::runtime_error {
    explicit CutLocusError(const std::string& what) : std::runtime_error(what) {}
};

enum class ManifoldKind { Euclidean, FlatTorus, Sphere, Interval };
enum class BoundaryCondition { Dirichlet, Neumann };

struct Point {
    Vec coords;
};

struct TangentVector {
    Point base;
    Vec vec;
    double norm() const { return vec.norm(); }
};

struct ManifoldSpec {
    ManifoldKind kind = ManifoldKind::Euclidean;
    int dim = 1;                      // intrinsic dimension
    std::vector<double> side_lengths; // FlatTorus
    double radius = 1.0;              // Sphere
    double length = 1.0;              // Interval
    BoundaryCondition bc = BoundaryCondition::Dirichlet;

    static ManifoldSpec euclidean(int n) {
        if (n < 1) throw std::invalid_argument("euclidean: dim >= 1");
        ManifoldSpec m;
        m.kind = ManifoldKind::Euclidean;
        m.dim = n;
        return m;
    }
    static ManifoldSpec flat_torus(std::vector<double> sides) {
        if (sides.empty()) throw std::invalid_argument("flat_torus: dim >= 1");
        for (double L : sides)
            if (!(L > 0.0)) throw std::invalid_argument("flat_torus: side lengths positive");
        ManifoldSpec m;
        m.kind = ManifoldKind::FlatTorus;
        m.dim = int(sides.size());
        m.side_lengths = std::move(sides);
        return m;
    }
    static ManifoldSpec sphere(double r) {
        if (!(r > 0.0)) throw std::invalid_argument("sphere: radius positive");
        ManifoldSpec m;
        m.kind = ManifoldKind::Sphere;
        m.dim = 2;
        m.radius = r;
        return m;
    }
    static ManifoldSpec interval(double L, BoundaryCondition bc) {
        if (!(L > 0.0)) throw std::invalid_argument("interval: length positive");
        ManifoldSpec m;
        m.kind = ManifoldKind::Interval;
        m.dim = 1;
        m.length = L;
        m.bc = bc;
        return m;
    }

    int embedding_dim() const { return kind == ManifoldKind::Sphere ? 3 : dim; }

    bool flat() const { return kind != ManifoldKind::Sphere; }
    bool compact() const { return kind != ManifoldKind::Euclidean; }

    double injectivity_radius(const Point& x) const {
        switch (kind) {
            case ManifoldKind::Euclidean:
                return std::numeric_limits<double>::infinity();
            case ManifoldKind::FlatTorus: {
                double m = side_lengths[0];
                for (double L : side_lengths) m = std::min(m, L);
                return 0.5 * m;
            }
            case ManifoldKind::Sphere:
                return M_PI * radius;
            case ManifoldKind::Interval:
                return std::min(x.coords[0], length - x.coords[0]);
        }
        return 0.0;
    }

    double volume() const {
        switch (kind) {
            case ManifoldKind::Euclidean:
                return std::numeric_limits<double>::infinity();
            case ManifoldKind::FlatTorus: {
                double v = 1.0;
                for (double L : side_lengths) v *= L;
                return v;
            }
            case ManifoldKind::Sphere:
                return 4.0 * M_PI * radius * radius;
            case ManifoldKind::Interval:
                return length;
        }
        return 0.0;
    }

    // Canonical representative: torus coords in [0, L_i), sphere on |p| = r.
    Point canonicalize(Vec coords) const {
        switch (kind) {
            case ManifoldKind::FlatTorus:
                for (int i = 0; i < dim; ++i) {
                    double L = side_lengths[i];
                    coords[i] -= L * std::floor(coords[i] / L);
                }
                break;
            case ManifoldKind::Sphere:
                coords *= radius / coords.norm();
                break;
            default:
                break;
        }
        return Point{std::move(coords)};
    }

    Point point(std::vector<double> c) const {
        Vec v(int(c.size()));
        for (int i = 0; i < v.size(); ++i) v[i] = c[i];
        return canonicalize(std::move(v));
    }
};

struct GeodesicSegment {
    Point start;
    Point end;
    double duration = 1.0;
    TangentVector initial_velocity;  // exp(start, duration * v) == end
};

struct CurvatureData {
    double scal = 0.0;
    double ric_vv = 0.0;
    Mat jacobi_endo;  // R(v, -)v on T_xM, embedding coordinates
};

namespace detail {

// Unit tangent of the great circle through x with initial direction u, after angle phi.
inline Vec sphere_rotate_dir(const Vec& xhat, const Vec& uhat, double phi) {
    return -xhat * std::sin(phi) + uhat * std::cos(phi);
}

inline double sinc(double x) {
    if (std::abs(x) < 1e-6) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

}  // namespace detail

inline Point exp_map(const ManifoldSpec& m, const Point& x, const TangentVector& v) {
    switch (m.kind) {
        case ManifoldKind::Euclidean:
            return Point{x.coords + v.vec};
        case ManifoldKind::FlatTorus:
            return m.canonicalize(x.coords + v.vec);
        case ManifoldKind::Sphere: {
            double r = m.radius;
            double nv = v.vec.norm();
            if (nv < 1e-300) return x;
            double phi = nv / r;
            Vec p = x.coords * std::cos(phi) + (v.vec / nv) * (r * std::sin(phi));
            return m.canonicalize(std::move(p));
        }
        case ManifoldKind::Interval: {
            // reflected geodesic flow; the fold keeps the point in [0, L]
            double L = m.length;
            double u = x.coords[0] + v.vec[0];
            double z = std::fmod(u, 2.0 * L);
            if (z < 0.0) z += 2.0 * L;
            double folded = z <= L ? z : 2.0 * L - z;
            Vec p(1);
            p[0] = folded;
            return Point{std::move(p)};
        }
    }
    throw std::logic_error("exp_map: unknown kind");
}

inline TangentVector log_map(const ManifoldSpec& m, const Point& x, const Point& y) {
    switch (m.kind) {
        case ManifoldKind::Euclidean:
        case ManifoldKind::Interval:
            return TangentVector{x, y.coords - x.coords};
        case ManifoldKind::FlatTorus: {
            Vec d(m.dim);
            for (int i = 0; i < m.dim; ++i) {
                double L = m.side_lengths[i];
                double di = std::remainder(y.coords[i] - x.coords[i], L);
                if (std::abs(di) > 0.5 * L * (1.0 - 1e-12))
                    throw CutLocusError("log_map: torus cut locus, minimizer not unique");
                d[i] = di;
            }
            return TangentVector{x, std::move(d)};
        }
        case ManifoldKind::Sphere: {
            double r = m.radius;
            double c = x.coords.dot(y.coords) / (r * r);
            c = std::clamp(c, -1.0, 1.0);
            double phi = std::acos(c);
            if (phi > M_PI * (1.0 - 1e-9))
                throw CutLocusError("log_map: sphere antipode, minimizer not unique");
            Vec w = y.coords - c * x.coords;  // |w| = r sin(phi)
            if (phi < 1e-12) return TangentVector{x, Vec::Zero(3)};
            Vec v = w * (phi / std::sin(phi));  // |v| = r phi
            return TangentVector{x, std::move(v)};
        }
    }
    throw std::logic_error("log_map: unknown kind");
}

inline double distance(const ManifoldSpec& m, const Point& x, const Point& y) {
    switch (m.kind) {
        case ManifoldKind::Euclidean:
        case ManifoldKind::Interval:
            return (y.coords - x.coords).norm();
        case ManifoldKind::FlatTorus: {
            double s = 0.0;
            for (int i = 0; i < m.dim; ++i) {
                double di = std::remainder(y.coords[i] - x.coords[i], m.side_lengths[i]);
                s += di * di;
            }
            return std::sqrt(s);
        }
        case ManifoldKind::Sphere: {
            double c = x.coords.dot(y.coords) / (m.radius * m.radius);
            return m.radius * std::acos(std::clamp(c, -1.0, 1.0));
        }
    }
    throw std::logic_error("distance: unknown kind");
}

inline GeodesicSegment make_segment(const ManifoldSpec& m, const Point& x, const Point& y,
                                    double duration) {
    TangentVector l = log_map(m, x, y);
    l.vec /= duration;
    return GeodesicSegment{x, y, duration, std::move(l)};
}

// Point at parameter u in [0, 1] along the segment.
inline Point segment_point(const ManifoldSpec& m, const GeodesicSegment& seg, double u) {
    TangentVector v{seg.start, seg.initial_velocity.vec * (u * seg.duration)};
    return exp_map(m, seg.start, v);
}

// Velocity (d/ds with s in [0, duration]) at parameter u in [0, 1].
inline TangentVector segment_velocity(const ManifoldSpec& m, const GeodesicSegment& seg, double u) {
    if (m.kind != ManifoldKind::Sphere) {
        Point p = segment_point(m, seg, u);
        return TangentVector{p, seg.initial_velocity.vec};
    }
    double r = m.radius;
    double nv = seg.initial_velocity.vec.norm();
    Point p = segment_point(m, seg, u);
    if (nv < 1e-300) return TangentVector{p, Vec::Zero(3)};
    double phi = u * seg.duration * nv / r;
    Vec xhat = seg.start.coords / r;
    Vec uhat = seg.initial_velocity.vec / nv;
    Vec dir = detail::sphere_rotate_dir(xhat, uhat, phi);
    return TangentVector{p, dir * nv};
}

inline TangentVector parallel_transport(const ManifoldSpec& m, const GeodesicSegment& seg,
                                        const TangentVector& v) {
    if (m.kind != ManifoldKind::Sphere) return TangentVector{seg.end, v.vec};
    double r = m.radius;
    double nv = seg.initial_velocity.vec.norm();
    if (nv * seg.duration < 1e-300) return TangentVector{seg.end, v.vec};
    double phi = seg.duration * nv / r;
    Vec xhat = seg.start.coords / r;
    Vec uhat = seg.initial_velocity.vec / nv;
    Vec n = xhat.head<3>().cross(uhat.head<3>());
    double a = v.vec.dot(uhat);
    double b = v.vec.dot(n);
    Vec out = a * detail::sphere_rotate_dir(xhat, uhat, phi) + b * n;
    return TangentVector{seg.end, std::move(out)};
}

inline double exp_jacobian(const ManifoldSpec& m, const Point& x, const Point& y) {
    if (m.kind != ManifoldKind::Sphere) {
        // triggers CutLocusError beyond the torus cut locus
        (void)log_map(m, x, y);
        return 1.0;
    }
    double theta = distance(m, x, y) / m.radius;
    if (theta > M_PI * (1.0 - 1e-9))
        throw CutLocusError("exp_jacobian: sphere antipode");
    return detail::sinc(theta);
}

inline CurvatureData curvature_data(const ManifoldSpec& m, const Point& x,
                                    const TangentVector& v) {
    int e = m.embedding_dim();
    CurvatureData c;
    c.jacobi_endo = Mat::Zero(e, e);
    if (m.kind != ManifoldKind::Sphere) return c;
    double r2 = m.radius * m.radius;
    c.scal = 2.0 / r2;
    double nv2 = v.vec.squaredNorm();
    c.ric_vv = nv2 / r2;
    // R(v,-)v with the sign that makes the action Hessian (kpi)^2 - d^2 on
    // normal fields along unit-speed-d geodesics
    Mat P = Mat::Identity(3, 3) - (x.coords * x.coords.transpose()) / r2;
    Mat A = -(nv2 * Mat::Identity(3, 3) - v.vec * v.vec.transpose()) / r2;
    c.jacobi_endo = P * A * P;
    return c;
}

// Orthonormal basis of T_xM, embedding coordinates.
inline std::vector<Vec> tangent_basis(const ManifoldSpec& m, const Point& x) {
    if (m.kind != ManifoldKind::Sphere) {
        std::vector<Vec> b;
        for (int i = 0; i < m.dim; ++i) {
            Vec e = Vec::Zero(m.dim);
            e[i] = 1.0;
            b.push_back(std::move(e));
        }
        return b;
    }
    Vec xhat = x.coords / m.radius;
    Vec a = Vec::Zero(3);
    a[std::abs(xhat[0]) < 0.9 ? 0 : 1] = 1.0;
    Vec u = a - a.dot(xhat) * xhat;
    u /= u.norm();
    Vec w = xhat.head<3>().cross(u.head<3>());
    return {u, w};
}

}  // namespace heatpath
