#pragma once
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "steklov/heat_trace.hpp"

// The hearing loop: fit the small-t expansion of a computed heat trace and
// invert the leading coefficients into boundary volume and the
// mean-curvature integral.

namespace steklov {

struct ExpansionFit {
    int n = 1;
    int orders = 0;                  // M: coefficients c_0..c_{M-1} of t^{m-n}
    std::vector<double> coefficients;
    bool has_log_term = false;       // extra column t^{M-1-n} log t
    double log_coefficient = 0.0;
    double residual_norm = 0.0;      // weighted relative residual
    double condition_number = 0.0;
    double t_min = 0.0, t_max = 0.0;
};

inline json to_json(const ExpansionFit& f) {
    json j;
    j["n"] = f.n;
    j["orders"] = f.orders;
    j["coefficients"] = f.coefficients;
    j["has_log_term"] = f.has_log_term;
    if (f.has_log_term) j["log_coefficient"] = f.log_coefficient;
    j["residual_norm"] = f.residual_norm;
    j["condition_number"] = f.condition_number;
    j["t_window"] = {f.t_min, f.t_max};
    return j;
}

// Weighted least squares of Z(t) ~ sum_m c_m t^{m-n} (+ c_log t^{M-1-n} log t),
// weights 1/Z(t)^2, columns scaled to unit norm. The default log-column
// policy: include exactly when M - 1 - n = 1, where the extra column
// coincides with the first genuine t log t order of the expansion.
inline ExpansionFit fit_expansion(const HeatTraceSamples& samples, int n, int M,
                                  std::optional<bool> include_log = std::nullopt,
                                  double t_min = 0.0, double t_max = 0.0) {
    if (M < 1 || M > 4) fail("WindowTooNarrow", "M must be 1..4");
    const bool with_log = include_log.value_or(M - 1 - n == 1);

    std::vector<int> idx;
    for (std::size_t i = 0; i < samples.t_grid.size(); ++i) {
        const double t = samples.t_grid[i];
        if ((t_min > 0.0 && t < t_min) || (t_max > 0.0 && t > t_max)) continue;
        idx.push_back(int(i));
    }
    const int rows = int(idx.size());
    const int cols = M + (with_log ? 1 : 0);
    if (rows < 3 * M) fail("WindowTooNarrow", "need at least 3M grid points in the window");

    Eigen::MatrixXd X(rows, cols);
    Eigen::VectorXd y(rows);
    for (int r = 0; r < rows; ++r) {
        const double t = samples.t_grid[idx[r]];
        const double wt = 1.0 / samples.values[idx[r]]; // weights 1/Z^2 on squares
        for (int m = 0; m < M; ++m) X(r, m) = wt * std::pow(t, m - n);
        if (with_log) X(r, M) = wt * std::pow(t, M - 1 - n) * std::log(t);
        y(r) = wt * samples.values[idx[r]];
    }
    Eigen::VectorXd scale(cols);
    for (int c = 0; c < cols; ++c) {
        scale(c) = X.col(c).norm();
        X.col(c) /= scale(c);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double cond = svd.singularValues()(0) / svd.singularValues()(cols - 1);
    if (cond > 1e10)
        fail("IllConditionedFit", "design matrix condition number " + std::to_string(cond));
    Eigen::VectorXd beta = svd.solve(y);

    ExpansionFit fit;
    fit.n = n;
    fit.orders = M;
    fit.has_log_term = with_log;
    fit.coefficients.resize(M);
    for (int m = 0; m < M; ++m) fit.coefficients[m] = beta(m) / scale(m);
    if (with_log) fit.log_coefficient = beta(M) / scale(M);
    fit.residual_norm = (X * beta - y).norm() / y.norm();
    fit.condition_number = cond;
    fit.t_min = samples.t_grid[idx.front()];
    fit.t_max = samples.t_grid[idx.back()];
    return fit;
}

struct FitWindow {
    double t_min = 0.0;
    double t_max = 0.0;
};

// Default window policy. t_min is bound by the tail-tolerance coupling
// (smallest t with weyl_tail < tail_fraction * Z). t_max is chosen so the
// first neglected model term, estimated by one extra fitted order on a probe
// window, contributes less than budget * Z(t_max).
inline FitWindow choose_fit_window(const Spectrum& spec, int M,
                                   double tail_fraction = 1e-8, double budget = 1e-3) {
    FitWindow w;
    const double lamK = spec.max_eigenvalue();
    if (!(lamK > 0.0)) fail("WindowTooNarrow", "spectrum has no positive eigenvalues");
    w.t_min = 5.0 / lamK;
    for (int it = 0; it < 200 && weyl_tail(spec, w.t_min) >=
                                     tail_fraction * trace_value(spec, w.t_min).value;
         ++it)
        w.t_min *= 1.1;

    // probe fit with one extra order on [t_min, 8 t_min], then push t_max out
    // until the (M+1)-th term would exceed its budget
    const double probe_hi = 3.0 * w.t_min;
    HeatTraceSamples probe = make_trace_samples(spec, w.t_min, probe_hi, 60, tail_fraction);
    const ExpansionFit f = fit_expansion(probe, spec.n, std::min(4, M + 1), false);
    w.t_max = probe_hi;
    if (f.orders == M + 1) {
        const double c_extra = std::abs(f.coefficients.back());
        for (double t = probe_hi; t <= 64.0 * w.t_min; t *= 1.05) {
            const double neglected = c_extra * std::pow(t, M - spec.n);
            if (neglected > budget * trace_value(spec, t).value) break;
            w.t_max = t;
        }
    }
    return w;
}

struct RecoveredGeometry {
    double boundary_volume = 0.0;
    bool curvature_recoverable = false; // false for n = 1 (the (n-1) factor)
    double mean_curvature_integral = 0.0; // int (sum kappa_j) dS
    double a2_integral = 0.0;             // reported as-is, not inverted
};

// Invert c_0 into vol(boundary) and, for n >= 2, c_1 into the mean-curvature
// integral through the printed a_1 prefactor.
inline RecoveredGeometry invert_geometry(const ExpansionFit& fit) {
    RecoveredGeometry g;
    const int n = fit.n;
    g.boundary_volume =
        fit.coefficients.at(0) * std::pow(kPi, 0.5 * (n + 1)) / gamma_fn(0.5 * (n + 1));
    if (n >= 2 && fit.orders >= 2) {
        const double pref = std::pow(2.0 * kPi, -n) * (n - 1) * gamma_fn(double(n)) *
                            unit_sphere_area(n) / (2.0 * n);
        g.mean_curvature_integral = fit.coefficients.at(1) / pref;
        g.curvature_recoverable = true;
    }
    if (fit.orders >= 3) g.a2_integral = fit.coefficients.at(2);
    return g;
}

// Strict variant: the n = 1 curvature channel is an error, per contract.
inline double mean_curvature_integral_or_throw(const ExpansionFit& fit) {
    if (fit.n < 2)
        fail("NotRecoverable", "the (n-1) factor removes the curvature channel at n = 1");
    return invert_geometry(fit).mean_curvature_integral;
}

} // namespace steklov
