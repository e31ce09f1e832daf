#pragma once

// Monte-Carlo sampling of the polygon approximations to Wiener measure,
// cylinder expectations, Feynman-Kac estimators and quadratic-variation
// statistics. The step sampler draws truncated Gaussians in the tangent
// space and pushes forward through the exponential map, so the node law is
// exactly the normalized e^{-S_0} discrete-H1 target on the truncated
// region and integrands carry unit importance weight.

#include <complex>
#include <functional>
#include <vector>

#include "heatpath/bundle.hpp"
#include "heatpath/pathspace.hpp"

namespace heatpath {

struct SamplerConfig {
    std::uint64_t seed = 0;
    long n_samples = 10000;
    double truncation = 0.9;  // fraction of the injectivity radius
};

struct MCEstimate {
    std::complex<double> mean{0.0, 0.0};
    double stderr_ = 0.0;
    long n = 0;
    double truncation_bias_bound = 0.0;

    double real_mean() const { return mean.real(); }
};

// Gaussian tail mass beyond radius R at covariance s * id in dimension n:
// P(|Z| > R) = Q(n/2, R^2 / 2s).
inline double gaussian_tail_mass(int n, double s, double R) {
    if (!std::isfinite(R)) return 0.0;
    return gamma_q(0.5 * n, R * R / (2.0 * s));
}

inline double truncation_bias_bound(const ManifoldSpec& m, const Point& x, const Partition& tau,
                                    double truncation) {
    if (m.kind == ManifoldKind::Euclidean || m.kind == ManifoldKind::Interval) return 0.0;
    KahanSum b;
    double R = truncation * m.injectivity_radius(x);
    for (int j = 0; j < tau.segments(); ++j) b.add(gaussian_tail_mass(m.dim, tau.dt(j), R));
    return b.value();
}

// One polygon path of the approximate Wiener measure started at x.
inline PiecewiseGeodesicPath sample_polygon_path(const ManifoldSpec& m, const Point& x,
                                                 const Partition& tau, GaussianStream& stream,
                                                 double truncation = 0.9) {
    std::vector<Point> nodes;
    nodes.reserve(tau.segments() + 1);
    nodes.push_back(x);
    Point cur = x;
    const bool sphere = m.kind == ManifoldKind::Sphere;
    for (int j = 0; j < tau.segments(); ++j) {
        double sd = std::sqrt(tau.dt(j));
        double R = truncation * m.injectivity_radius(cur);
        Vec step;
        if (!sphere) {
            for (;;) {
                step = Vec(m.dim);
                for (int i = 0; i < m.dim; ++i) step[i] = sd * stream.gaussian();
                if (m.kind == ManifoldKind::Euclidean || m.kind == ManifoldKind::Interval) break;
                if (step.norm() < R) break;
            }
        } else {
            std::vector<Vec> basis = tangent_basis(m, cur);
            for (;;) {
                double a = sd * stream.gaussian();
                double b = sd * stream.gaussian();
                if (a * a + b * b < R * R) {
                    step = a * basis[0] + b * basis[1];
                    break;
                }
            }
        }
        cur = exp_map(m, cur, TangentVector{cur, step});
        nodes.push_back(cur);
    }
    return make_path(m, tau, std::move(nodes));
}

namespace detail {

template <class F>
MCEstimate mc_run_complex(const ManifoldSpec& m, const Point& x, const Partition& tau,
                          const SamplerConfig& cfg, const F& value_of_path) {
    KahanSum sr, si, s2;
    for (long i = 0; i < cfg.n_samples; ++i) {
        GaussianStream g(cfg.seed, std::uint64_t(i));
        PiecewiseGeodesicPath p = sample_polygon_path(m, x, tau, g, cfg.truncation);
        std::complex<double> v = value_of_path(p);
        sr.add(v.real());
        si.add(v.imag());
        s2.add(std::norm(v));
    }
    MCEstimate e;
    e.n = cfg.n_samples;
    e.mean = std::complex<double>(sr.value(), si.value()) / double(cfg.n_samples);
    double var = s2.value() / cfg.n_samples - std::norm(e.mean);
    var = std::max(var, 0.0) * cfg.n_samples / std::max<long>(cfg.n_samples - 1, 1);
    e.stderr_ = std::sqrt(var / cfg.n_samples);
    e.truncation_bias_bound = truncation_bias_bound(m, x, tau, cfg.truncation);
    return e;
}

}  // namespace detail

// MC average of a cylinder function F(gamma(tau_1), ..., gamma(tau_N)).
inline MCEstimate cylinder_expectation(const ManifoldSpec& m, const Point& x, const Partition& tau,
                                       const std::function<double(const std::vector<Point>&)>& F,
                                       const SamplerConfig& cfg) {
    return detail::mc_run_complex(m, x, tau, cfg, [&](const PiecewiseGeodesicPath& p) {
        return std::complex<double>(F(p.nodes), 0.0);
    });
}

// Feynman-Kac estimator: averages P(gamma)^{-1} u0(gamma(t)) over sampled
// polygon paths. Scalar and magnetic weights use exact per-segment
// quadrature of the exponent; endomorphism weights solve the transport ODE.
// Complex initial values are allowed (gauge-transformed magnetic problems).
inline MCEstimate feynman_kac_mc(const ManifoldSpec& m, const Point& x, const Partition& tau,
                                 const PathWeight& w,
                                 const std::function<std::complex<double>(const Point&)>& u0,
                                 const SamplerConfig& cfg) {
    return detail::mc_run_complex(m, x, tau, cfg, [&](const PiecewiseGeodesicPath& p) -> std::complex<double> {
        std::complex<double> u = u0(p.nodes.back());
        if (std::holds_alternative<ScalarPotential>(w)) {
            const auto& sp = std::get<ScalarPotential>(w);
            return std::exp(-integrate_potential(p, sp.V)) * u;
        }
        if (std::holds_alternative<MagneticWeight>(w)) {
            const auto& mw = std::get<MagneticWeight>(w);
            return magnetic_weight(p, mw.omega, mw.V) * u;
        }
        TransportValue t = path_ordered_exponential(p, w);
        // rank-k bundle with u0 * e_1 as initial section; report component 1
        Eigen::VectorXd v0 = Eigen::VectorXd::Zero(t.matrix.rows());
        v0[0] = u.real();
        return (t.matrix.inverse() * v0)[0];
    });
}

struct QuadraticVariationStats {
    double ric_increments_mean = 0.0;
    double ric_increments_stderr = 0.0;
    double scal_integral_mean = 0.0;
    double scal_integral_stderr = 0.0;
    long n = 0;
};

// Means of sum_j ric(dgamma_j, dgamma_j) and of int scal(gamma) over the
// same sample of paths.
inline QuadraticVariationStats quadratic_variation_stats(const ManifoldSpec& m, const Point& x,
                                                         const Partition& tau,
                                                         const SamplerConfig& cfg) {
    KahanSum s1, s1sq, s2, s2sq;
    for (long i = 0; i < cfg.n_samples; ++i) {
        GaussianStream g(cfg.seed, std::uint64_t(i));
        PiecewiseGeodesicPath p = sample_polygon_path(m, x, tau, g, cfg.truncation);
        IncrementsResult inc = increments_F_tau(p);
        KahanSum ric;
        for (const auto& dg : inc.increments)
            ric.add(curvature_data(m, dg.base, dg).ric_vv);
        // recover int scal from f_tau and the ric sum
        double scal_int = 12.0 * std::log(inc.f_tau) + ric.value();
        s1.add(ric.value());
        s1sq.add(ric.value() * ric.value());
        s2.add(scal_int);
        s2sq.add(scal_int * scal_int);
    }
    QuadraticVariationStats out;
    out.n = cfg.n_samples;
    long n = cfg.n_samples;
    out.ric_increments_mean = s1.value() / n;
    out.scal_integral_mean = s2.value() / n;
    auto sd = [&](double sum, double sumsq, double mean) {
        double var = std::max(sumsq / n - mean * mean, 0.0) * n / std::max<long>(n - 1, 1);
        return std::sqrt(var / n);
    };
    out.ric_increments_stderr = sd(s1.value(), s1sq.value(), out.ric_increments_mean);
    out.scal_integral_stderr = sd(s2.value(), s2sq.value(), out.scal_integral_mean);
    return out;
}

}  // namespace heatpath
