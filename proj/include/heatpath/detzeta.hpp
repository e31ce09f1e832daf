#pragma once

// Second variation of the geodesic action, Fredholm determinants of the
// Hessian by eigen-product and Gelfand-Yaglom, zeta-regularized determinants
// of -d^2/ds^2 + R on [0,1] with Dirichlet conditions, and short-time
// kernel asymptotics (nondegenerate and degenerate antipodal).

#include <Eigen/Dense>
#include <vector>

#include "heatpath/geom.hpp"
#include "heatpath/numerics.hpp"
#include "heatpath/reference.hpp"

namespace heatpath {

struct ConjugatePointError : std::runtime_error {
    explicit ConjugatePointError(const std::string& what) : std::runtime_error(what) {}
};

// Hessian of the energy along a geodesic rescaled to [0,1]:
//   id + (-d^2/ds^2)^{-1} R   on Dirichlet vector fields,
// where R is the (constant, symmetric) Jacobi endomorphism in a parallel
// frame. Sphere of radius r, speed d: R = diag(0, -(d/r)^2) in the frame
// (velocity direction, normal); flat manifolds: R = 0.
struct HessianSpec {
    int dim = 1;          // fibre dimension n
    double speed = 0.0;   // |velocity| of the [0,1] parametrization
    Eigen::MatrixXd R;    // constant symmetric endomorphism
};

inline HessianSpec make_hessian_spec(const ManifoldSpec& m, const Point& x, const Point& y) {
    HessianSpec h;
    h.dim = m.dim;
    h.speed = distance(m, x, y);
    h.R = Eigen::MatrixXd::Zero(m.dim, m.dim);
    if (m.kind == ManifoldKind::Sphere) {
        double dr = h.speed / m.radius;
        h.R(1, 1) = -dr * dr;
    }
    return h;
}

inline HessianSpec make_constant_hessian_spec(const Eigen::MatrixXd& R) {
    if (R.rows() != R.cols() || (R - R.transpose()).norm() > 1e-12 * (1.0 + R.norm()))
        throw std::invalid_argument("make_constant_hessian_spec: R must be square symmetric");
    HessianSpec h;
    h.dim = int(R.rows());
    h.R = R;
    return h;
}

// Galerkin matrix in the Dirichlet sine basis e_k = sqrt(2) sin(k pi s),
// k = 1..M, n copies: entries delta + <R e_k, e_l> / ((k pi)(l pi)).
inline Eigen::MatrixXd hessian_matrix(const HessianSpec& spec, int m_steps) {
    if (m_steps < 64) throw std::invalid_argument("hessian_matrix: M_steps >= 64");
    int n = spec.dim;
    Eigen::MatrixXd H = Eigen::MatrixXd::Identity(long(n) * m_steps, long(n) * m_steps);
    for (int k = 1; k <= m_steps; ++k)
        H.block(long(n) * (k - 1), long(n) * (k - 1), n, n) +=
            spec.R / ((k * M_PI) * (k * M_PI));
    return H;
}

enum class DetMethod { EigenProduct, GelfandYaglom };

struct DeterminantResult {
    double value = 1.0;
    DetMethod method = DetMethod::EigenProduct;
    int removed_zero_modes = 0;
    double zero_mode_threshold = 1e-8;
    bool degenerate = false;
};

namespace detail {

// Product over k of (1 + rho / (k pi)^2), truncated with an analytic tail
// estimate; zero modes below the threshold are counted and, when prime is
// set, skipped.
inline void eigen_product_factor(double rho, bool prime, double threshold, long kmax,
                                 double& log_abs, double& sign, int& removed, bool& degenerate) {
    for (long k = 1; k <= kmax; ++k) {
        double f = 1.0 + rho / ((k * M_PI) * (k * M_PI));
        if (std::abs(f) < threshold) {
            degenerate = true;
            if (prime) {
                ++removed;
                continue;
            }
            sign = 0.0;
            return;
        }
        if (f < 0.0) sign = -sign;
        log_abs += std::log(std::abs(f));
    }
    // sum_{k > K} rho/(k pi)^2 = rho/pi^2 (1/K - 1/(2K^2) + O(K^-3))
    log_abs += rho / (M_PI * M_PI) * (1.0 / kmax - 0.5 / double(kmax) / double(kmax));
}

}  // namespace detail

// det(id + (-d^2/ds^2)^{-1} R) on Dirichlet fields over [0,1].
inline DeterminantResult fredholm_det(const HessianSpec& spec,
                                      DetMethod method = DetMethod::GelfandYaglom,
                                      bool prime = false, double zero_threshold = 1e-8) {
    DeterminantResult res;
    res.method = method;
    res.zero_mode_threshold = zero_threshold;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(spec.R);
    Eigen::VectorXd rho = es.eigenvalues();

    // zero-mode census is shared by both methods
    double log_abs = 0.0, sign = 1.0;
    for (int i = 0; i < spec.dim; ++i)
        detail::eigen_product_factor(rho[i], prime, zero_threshold, 100000, log_abs, sign,
                                     res.removed_zero_modes, res.degenerate);
    if (res.degenerate && !prime) {
        res.value = 0.0;
        return res;
    }
    if (method == DetMethod::EigenProduct || (prime && res.removed_zero_modes > 0)) {
        res.value = sign * std::exp(log_abs);
        res.method = DetMethod::EigenProduct;
        return res;
    }

    // Gelfand-Yaglom: det = det Y(1), Y'' = R Y, Y(0) = 0, Y'(0) = id.
    // Per eigenvalue the scalar solution is closed-form.
    double det = 1.0;
    for (int i = 0; i < spec.dim; ++i) {
        double r = rho[i];
        double y;
        if (std::abs(r) < 1e-14) {
            y = 1.0;
        } else if (r > 0.0) {
            double s = std::sqrt(r);
            y = std::sinh(s) / s;
        } else {
            double s = std::sqrt(-r);
            y = std::sin(s) / s;
        }
        det *= y;
    }
    res.value = det;
    return res;
}

// Gelfand-Yaglom by direct RK4 integration of Y'' = R Y; used to cross-check
// the closed forms.
inline double gelfand_yaglom_rk4(const HessianSpec& spec, int steps = 4096) {
    int n = spec.dim;
    Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd Z = Eigen::MatrixXd::Identity(n, n);  // Y'
    double h = 1.0 / steps;
    auto f = [&](const Eigen::MatrixXd& y, const Eigen::MatrixXd& z, Eigen::MatrixXd& dy,
                 Eigen::MatrixXd& dz) {
        dy = z;
        dz = spec.R * y;
    };
    Eigen::MatrixXd k1y, k1z, k2y, k2z, k3y, k3z, k4y, k4z;
    for (int i = 0; i < steps; ++i) {
        f(Y, Z, k1y, k1z);
        f(Y + 0.5 * h * k1y, Z + 0.5 * h * k1z, k2y, k2z);
        f(Y + 0.5 * h * k2y, Z + 0.5 * h * k2z, k3y, k3z);
        f(Y + h * k3y, Z + h * k3z, k4y, k4z);
        Eigen::MatrixXd Yn = Y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        Z = Z + h / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
        Y = Yn;
    }
    return Y.determinant();
}

// det_zeta(-d^2/ds^2 + R) = 2^n * fredholm determinant; prime removes zero
// modes and reports the count.
inline DeterminantResult zeta_det(const HessianSpec& spec, bool prime = false,
                                  DetMethod method = DetMethod::GelfandYaglom,
                                  double zero_threshold = 1e-8) {
    DeterminantResult res = fredholm_det(spec, method, prime, zero_threshold);
    res.value *= std::pow(2.0, spec.dim);
    return res;
}

struct AsymptoticsRow {
    double t = 0.0;
    double scaled_value = 0.0;  // (2 pi t)^{n/2} e^{d^2/2t} K_t (nondegenerate)
    double prediction = 0.0;
    double relative_error = 0.0;
};

struct AsymptoticsReport {
    ManifoldSpec manifold;
    double d = 0.0;
    std::vector<AsymptoticsRow> rows;
    double prediction_fredholm = 0.0;
    double prediction_zeta = 0.0;
    double extrapolated = 0.0;        // Richardson limit of the scaled values
    double fitted_exponent = 0.0;     // degenerate branch only
    double fitted_constant = 0.0;
    double predicted_constant = 0.0;  // informational
    double residual_ratio = 0.0;      // misfit of the nondegenerate exponent model
};

// lim_{t -> 0} (2 pi t)^{n/2} e^{d^2/2t} K_t(x, y) = fredholm_det^{-1/2}
// for nonconjugate x, y, equivalently det_zeta(-d^2)^{1/2} /
// det_zeta(-d^2 + R)^{1/2}; both forms are computed and compared.
inline AsymptoticsReport leading_asymptotics(const ManifoldSpec& m, const Point& x, const Point& y,
                                             std::vector<double> t_list = {0.1, 0.05, 0.025}) {
    double d = distance(m, x, y);
    if (m.kind == ManifoldKind::Sphere && d >= 0.99 * M_PI * m.radius)
        throw ConjugatePointError("leading_asymptotics: endpoints within conjugacy threshold");

    HessianSpec spec = make_hessian_spec(m, x, y);
    AsymptoticsReport rep;
    rep.manifold = m;
    rep.d = d;
    double fred = fredholm_det(spec).value;
    rep.prediction_fredholm = 1.0 / std::sqrt(fred);
    double z_free = zeta_det(make_constant_hessian_spec(Eigen::MatrixXd::Zero(m.dim, m.dim))).value;
    double z_full = zeta_det(spec).value;
    rep.prediction_zeta = std::sqrt(z_free / z_full);

    std::vector<double> ts, vals;
    for (double t : t_list) {
        double k = reference_kernel(m, t, x, y);
        double scaled = std::pow(2.0 * M_PI * t, 0.5 * m.dim) * std::exp(d * d / (2.0 * t)) * k;
        rep.rows.push_back({t, scaled, rep.prediction_fredholm,
                            scaled / rep.prediction_fredholm - 1.0});
        ts.push_back(t);
        vals.push_back(scaled);
    }
    rep.extrapolated = extrapolate_to_zero(ts, vals);
    return rep;
}

// Alternating spectral series for the antipodal kernel on the sphere, with a
// truncation-doubling check.
inline double antipodal_kernel_sphere(double radius, double t, bool* truncation_warning = nullptr) {
    double r2 = radius * radius;
    if (M_PI * M_PI * r2 / (2.0 * t) > 25.0)  // double precision would cancel away
        return detail::sphere_series_mp(radius, t, -1.0);
    auto series = [&](int lmax) {
        KahanSum s;
        for (int l = 0; l <= lmax; ++l)
            s.add((2.0 * l + 1.0) / (4.0 * M_PI * r2) * (l % 2 ? -1.0 : 1.0) *
                  std::exp(-t * l * (l + 1.0) / (2.0 * r2)));
        return s.value();
    };
    int lmax = std::max(32, int(std::ceil(10.0 / std::sqrt(t / r2))));
    double v1 = series(lmax), v2 = series(2 * lmax);
    if (truncation_warning && std::abs(v1 - v2) > 1e-10 * std::max(1.0, std::abs(v2)))
        *truncation_warning = true;
    return v2;
}

// Antipodal points on the sphere: the minimizing geodesics form a circle
// (k = 1), so K_t ~ C t^{-alpha} e^{-d^2/2t} with alpha = n/2 + k/2 = 3/2
// instead of the nondegenerate alpha = n/2 = 1. Fits alpha and C, and
// compares the residuals of the alpha = 3/2 and alpha = 1 models.
inline AsymptoticsReport degenerate_asymptotics_sphere(const std::vector<double>& t_list,
                                                       double radius = 1.0) {
    if (t_list.size() < 3) throw std::invalid_argument("degenerate_asymptotics_sphere: >= 3 times");
    ManifoldSpec m = ManifoldSpec::sphere(radius);
    AsymptoticsReport rep;
    rep.manifold = m;
    rep.d = M_PI * radius;

    std::vector<double> lt, ly;
    for (double t : t_list) {
        double k = antipodal_kernel_sphere(radius, t);
        // y = log K + d^2/2t = log C - alpha log t
        double y = std::log(k) + rep.d * rep.d / (2.0 * t);
        rep.rows.push_back({t, y, 0.0, 0.0});
        lt.push_back(std::log(t));
        ly.push_back(y);
    }
    rep.fitted_exponent = -ls_slope(lt, ly);

    auto residual_at = [&](double alpha) {
        // fit log C only, report rms residual
        double c = 0.0;
        for (std::size_t i = 0; i < lt.size(); ++i) c += ly[i] + alpha * lt[i];
        c /= double(lt.size());
        double r = 0.0;
        for (std::size_t i = 0; i < lt.size(); ++i) {
            double e = ly[i] + alpha * lt[i] - c;
            r += e * e;
        }
        return std::make_pair(std::sqrt(r / double(lt.size())), std::exp(c));
    };
    auto [res_good, c_good] = residual_at(1.5);
    auto [res_bad, c_bad] = residual_at(1.0);
    (void)c_bad;
    rep.fitted_constant = c_good;
    rep.residual_ratio = res_bad / std::max(res_good, 1e-300);

    // informational: (2 pi)^{-(n+k)/2} * integral over the minimizing circle
    // of det'^{-1/2} against the H1 arc length of the meridian family
    double det_prime = 0.5;                       // prod_{k>=2}(1 - 1/k^2)
    double h1_speed = M_PI / std::sqrt(2.0);      // |d(meridian)/d(angle)|_{H1}
    rep.predicted_constant =
        std::pow(2.0 * M_PI, -1.5) * 2.0 * M_PI * h1_speed / std::sqrt(det_prime);
    return rep;
}

}  // namespace heatpath
