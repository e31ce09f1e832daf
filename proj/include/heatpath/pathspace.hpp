#pragma once

// Partitions, piecewise-geodesic paths, action functionals, the discrete
// path-space volume densities under the evaluation map, increments and the
// curvature correction factor, and reflected paths on the interval.

#include <functional>
#include <stdexcept>
#include <vector>

#include "heatpath/geom.hpp"
#include "heatpath/numerics.hpp"

namespace heatpath {

using ScalarField = std::function<double(const Point&)>;

struct Partition {
    std::vector<double> times;  // 0 = t_0 < t_1 < ... < t_N = t

    int segments() const { return int(times.size()) - 1; }
    double total() const { return times.back(); }
    double dt(int j) const { return times[j + 1] - times[j]; }
    double mesh() const {
        double m = 0.0;
        for (int j = 0; j < segments(); ++j) m = std::max(m, dt(j));
        return m;
    }
};

enum class PartitionScheme { Uniform, Random };

inline Partition make_partition(double t, int n, PartitionScheme scheme = PartitionScheme::Uniform,
                                std::uint64_t seed = 0) {
    if (!(t > 0.0) || n < 1) throw std::invalid_argument("make_partition: t > 0, N >= 1");
    Partition tau;
    tau.times.resize(n + 1);
    if (scheme == PartitionScheme::Uniform) {
        for (int j = 0; j <= n; ++j) tau.times[j] = t * double(j) / double(n);
    } else {
        // flat Dirichlet over the simplex: sorted uniforms
        GaussianStream g(seed, 0);
        std::vector<double> u(n - 1);
        for (auto& x : u) x = g.uniform();
        std::sort(u.begin(), u.end());
        tau.times[0] = 0.0;
        for (int j = 1; j < n; ++j) tau.times[j] = t * u[j - 1];
        tau.times[n] = t;
    }
    for (int j = 0; j < n; ++j)
        if (!(tau.dt(j) > 0.0)) throw std::invalid_argument("make_partition: degenerate increment");
    return tau;
}

struct PiecewiseGeodesicPath {
    ManifoldSpec manifold;
    Partition partition;
    std::vector<Point> nodes;               // N + 1 points
    std::vector<GeodesicSegment> segments;  // N segments, cached
};

inline PiecewiseGeodesicPath make_path(const ManifoldSpec& m, Partition tau,
                                       std::vector<Point> nodes) {
    if (int(nodes.size()) != tau.segments() + 1)
        throw std::invalid_argument("make_path: node count must be N + 1");
    PiecewiseGeodesicPath p;
    p.manifold = m;
    p.partition = std::move(tau);
    p.nodes = std::move(nodes);
    p.segments.reserve(p.partition.segments());
    for (int j = 0; j < p.partition.segments(); ++j)
        p.segments.push_back(make_segment(m, p.nodes[j], p.nodes[j + 1], p.partition.dt(j)));
    return p;
}

inline Point path_point(const PiecewiseGeodesicPath& p, double s) {
    const auto& times = p.partition.times;
    if (s <= times.front()) return p.nodes.front();
    if (s >= times.back()) return p.nodes.back();
    int j = int(std::upper_bound(times.begin(), times.end(), s) - times.begin()) - 1;
    double u = (s - times[j]) / p.partition.dt(j);
    return segment_point(p.manifold, p.segments[j], u);
}

inline TangentVector path_velocity(const PiecewiseGeodesicPath& p, double s) {
    const auto& times = p.partition.times;
    int j = int(std::upper_bound(times.begin(), times.end(), std::min(s, times.back() * (1 - 1e-15))) -
                times.begin()) - 1;
    j = std::clamp(j, 0, p.partition.segments() - 1);
    double u = (s - times[j]) / p.partition.dt(j);
    return segment_velocity(p.manifold, p.segments[j], u);
}

// S_0 = 1/2 sum d(x_{j-1}, x_j)^2 / dt_j
inline double action_energy(const PiecewiseGeodesicPath& p) {
    KahanSum s;
    for (int j = 0; j < p.partition.segments(); ++j) {
        double d = distance(p.manifold, p.nodes[j], p.nodes[j + 1]);
        s.add(0.5 * d * d / p.partition.dt(j));
    }
    return s.value();
}

// Integral of V along the path by fixed-order Gauss-Legendre per segment.
inline double integrate_potential(const PiecewiseGeodesicPath& p, const ScalarField& V) {
    const QuadRule& q = segment_rule();
    KahanSum s;
    for (int j = 0; j < p.partition.segments(); ++j) {
        double dt = p.partition.dt(j);
        for (std::size_t k = 0; k < q.nodes.size(); ++k)
            s.add(dt * q.weights[k] * V(segment_point(p.manifold, p.segments[j], q.nodes[k])));
    }
    return s.value();
}

inline double action_with_potential(const PiecewiseGeodesicPath& p, const ScalarField& V) {
    return action_energy(p) + integrate_potential(p, V);
}

enum class MeasureConvention { SigmaH1Unpinned, SigmaH1Pinned, SigmaL2 };

struct DensityFactor {
    double value = 1.0;
    MeasureConvention convention = MeasureConvention::SigmaH1Unpinned;
};

// Density of the discrete-H1 volume under the evaluation map, w.r.t. the
// Riemannian product measure dx_1...dx_N (unpinned) or dx_1...dx_{N-1} with
// the t^{n/2} co-area normalization (pinned).
inline DensityFactor sigma_h1_density(const PiecewiseGeodesicPath& p, bool pinned) {
    int n = p.manifold.dim;
    double logv = pinned ? 0.5 * n * std::log(p.partition.total()) : 0.0;
    for (int j = 0; j < p.partition.segments(); ++j) {
        logv -= 0.5 * n * std::log(p.partition.dt(j));
        logv -= std::log(exp_jacobian(p.manifold, p.nodes[j], p.nodes[j + 1]));
    }
    return DensityFactor{std::exp(logv),
                         pinned ? MeasureConvention::SigmaH1Pinned : MeasureConvention::SigmaH1Unpinned};
}

// Density of the discrete-L2 volume w.r.t. dx_1...dx_N. The evaluation-map
// factor is J^{-2} per segment; it is 1 on flat manifolds and tends to 1 for
// short segments. See the L2-corrected kernel family for the matching
// normalization prefactor prod_j dt_j^{-n}.
inline DensityFactor sigma_l2_density(const PiecewiseGeodesicPath& p) {
    int n = p.manifold.dim;
    double logv = 0.0;
    for (int j = 0; j < p.partition.segments(); ++j) {
        logv += 0.5 * n * std::log(p.partition.dt(j));
        logv -= 2.0 * std::log(exp_jacobian(p.manifold, p.nodes[j], p.nodes[j + 1]));
    }
    return DensityFactor{std::exp(logv), MeasureConvention::SigmaL2};
}

// Interpolate a finely sampled path at the coarse partition nodes by
// minimizing geodesics. Coarse times must be (numerically) among fine times.
inline PiecewiseGeodesicPath project_to_polygon(const ManifoldSpec& m,
                                                const std::vector<double>& fine_times,
                                                const std::vector<Point>& fine_nodes,
                                                const Partition& coarse) {
    if (fine_times.size() != fine_nodes.size())
        throw std::invalid_argument("project_to_polygon: times/nodes mismatch");
    std::vector<Point> nodes;
    nodes.reserve(coarse.times.size());
    for (double tc : coarse.times) {
        int best = 0;
        double bd = std::abs(fine_times[0] - tc);
        for (std::size_t i = 1; i < fine_times.size(); ++i) {
            double d = std::abs(fine_times[i] - tc);
            if (d < bd) { bd = d; best = int(i); }
        }
        if (bd > 1e-9 * std::max(1.0, coarse.total()))
            throw std::invalid_argument("project_to_polygon: coarse times not among fine times");
        nodes.push_back(fine_nodes[best]);
    }
    return make_path(m, coarse, std::move(nodes));
}

struct IncrementsResult {
    std::vector<TangentVector> increments;  // velocity at tau_{j-1}+ times dt_j
    double f_tau = 1.0;                     // exp(1/12 int scal - 1/12 sum ric(dg, dg))
};

inline IncrementsResult increments_F_tau(const PiecewiseGeodesicPath& p) {
    IncrementsResult r;
    const QuadRule& q = segment_rule();
    KahanSum scal_int;
    KahanSum ric_sum;
    for (int j = 0; j < p.partition.segments(); ++j) {
        const auto& seg = p.segments[j];
        TangentVector inc{seg.start, seg.initial_velocity.vec * seg.duration};
        CurvatureData c = curvature_data(p.manifold, seg.start, inc);
        ric_sum.add(c.ric_vv);
        for (std::size_t k = 0; k < q.nodes.size(); ++k) {
            Point z = segment_point(p.manifold, seg, q.nodes[k]);
            scal_int.add(seg.duration * q.weights[k] *
                         curvature_data(p.manifold, z, TangentVector{z, Vec::Zero(p.manifold.embedding_dim())}).scal);
        }
        r.increments.push_back(std::move(inc));
    }
    r.f_tau = std::exp(scal_int.value() / 12.0 - ric_sum.value() / 12.0);
    return r;
}

struct FoldResult {
    double folded = 0.0;
    long reflections = 0;
};

// Fold the real line onto [0, L] by the reflection group generated by
// s -> -s and s -> 2L - s; counts walls crossed by the straight segment
// from x to unfolded_end.
inline FoldResult reflect_unfold(double L, double x, double unfolded_end) {
    if (!(L > 0.0)) throw std::invalid_argument("reflect_unfold: L > 0");
    double z = std::fmod(unfolded_end, 2.0 * L);
    if (z < 0.0) z += 2.0 * L;
    FoldResult r;
    r.folded = z <= L ? z : 2.0 * L - z;
    long kx = long(std::floor(x / L));
    long ke = long(std::floor(unfolded_end / L));
    r.reflections = std::labs(ke - kx);
    return r;
}

struct ReflectedPath {
    Partition partition;
    std::vector<double> nodes;           // folded, in [0, L]
    std::vector<long> segment_reflections;
    std::vector<double> unfolded_nodes;  // representative in R

    long total_reflections() const {
        long s = 0;
        for (long r : segment_reflections) s += r;
        return s;
    }
};

// Build a reflected path on [0, L] from an unfolded representative in R.
inline ReflectedPath fold_path(double L, Partition tau, std::vector<double> unfolded) {
    if (int(unfolded.size()) != tau.segments() + 1)
        throw std::invalid_argument("fold_path: node count must be N + 1");
    ReflectedPath p;
    p.partition = std::move(tau);
    p.unfolded_nodes = std::move(unfolded);
    for (std::size_t j = 0; j < p.unfolded_nodes.size(); ++j) {
        FoldResult f = reflect_unfold(L, j == 0 ? p.unfolded_nodes[0] : p.unfolded_nodes[j - 1],
                                      p.unfolded_nodes[j]);
        p.nodes.push_back(f.folded);
        if (j > 0) p.segment_reflections.push_back(f.reflections);
    }
    return p;
}

}  // namespace heatpath
