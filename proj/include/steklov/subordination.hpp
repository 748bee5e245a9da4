#pragma once
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "steklov/io.hpp"
#include "steklov/quadrature.hpp"
#include "steklov/special.hpp"

// Subordination: e^{-t sqrt(-Delta_h)} realized from the Laplacian spectrum
// through the one-sided stable density t e^{-t^2/4 mu} / sqrt(4 pi mu^3),
// plus the flat half-space Poisson kernel.

namespace steklov {

struct LaplaceSpectrum {
    std::vector<double> eigenvalues;  // mu_k >= 0, distinct, increasing
    std::vector<int> multiplicities;
    int n = 1;
    double boundary_volume = std::numeric_limits<double>::quiet_NaN();
    std::string label;
};

// Closed-form Laplace-Beltrami spectra of the model boundaries.
inline LaplaceSpectrum circle_laplace_spectrum(double R, int modes) {
    LaplaceSpectrum s;
    s.n = 1;
    s.boundary_volume = 2.0 * kPi * R;
    s.label = "circle";
    s.eigenvalues.push_back(0.0);
    s.multiplicities.push_back(1);
    for (int k = 1; k <= modes; ++k) {
        s.eigenvalues.push_back(double(k) * k / (R * R));
        s.multiplicities.push_back(2);
    }
    return s;
}

inline LaplaceSpectrum sphere2_laplace_spectrum(double R, int bands) {
    LaplaceSpectrum s;
    s.n = 2;
    s.boundary_volume = 4.0 * kPi * R * R;
    s.label = "sphere2";
    for (int l = 0; l <= bands; ++l) {
        s.eigenvalues.push_back(double(l) * (l + 1) / (R * R));
        s.multiplicities.push_back(2 * l + 1);
    }
    return s;
}

inline LaplaceSpectrum sphere3_laplace_spectrum(double R, int bands) {
    LaplaceSpectrum s;
    s.n = 3;
    s.boundary_volume = 2.0 * kPi * kPi * R * R * R;
    s.label = "sphere3";
    for (int l = 0; l <= bands; ++l) {
        s.eigenvalues.push_back(double(l) * (l + 2) / (R * R));
        s.multiplicities.push_back((l + 1) * (l + 1));
    }
    return s;
}

// Shares the spectrum CSV layout, tagged "laplace".
inline std::string to_csv(const LaplaceSpectrum& s) {
    std::ostringstream os;
    os << "n,vol,source,accuracy\n"
       << s.n << ',' << format_double(s.boundary_volume) << ",laplace,0\n"
       << "index,eigenvalue,multiplicity\n";
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
        os << i << ',' << format_double(s.eigenvalues[i]) << ',' << s.multiplicities[i] << '\n';
    return os.str();
}

// w(t, mu) = t e^{-t^2 / 4 mu} / sqrt(4 pi mu^3)
inline double subordination_weight(double t, double mu) {
    if (!(t > 0.0) || !(mu > 0.0)) fail("NonPositiveArgument", "subordination_weight needs t, mu > 0");
    return t * std::exp(-t * t / (4.0 * mu)) / std::sqrt(4.0 * kPi * mu * mu * mu);
}

namespace detail {

// int_0^inf w(t, mu) f(mu) dmu via the substitution mu = t^2 / (4 v^2),
// which turns the weight into (2/sqrt(pi)) e^{-v^2} dv. The split point
// v = 1/sqrt(2) is the integrand peak scale mu* = t^2/2. Two Gauss-Legendre
// panels, refined once to estimate the quadrature error.
template <class F>
double subordinate_integral(double t, F&& f, double* err_out = nullptr) {
    const auto eval = [&](int m) {
        double total = 0.0;
        const double split = 1.0 / std::sqrt(2.0), vmax = 8.0;
        for (const auto& panel : {gauss_legendre(m, 1e-12, split), gauss_legendre(m, split, vmax)}) {
            for (int i = 0; i < int(panel.nodes.size()); ++i) {
                const double v = panel.nodes[i];
                total += panel.weights[i] * std::exp(-v * v) * f(t * t / (4.0 * v * v));
            }
        }
        return 2.0 / std::sqrt(kPi) * total;
    };
    const double lo = eval(120), hi = eval(200);
    const double err = std::abs(hi - lo);
    if (err_out) *err_out = err;
    return hi;
}

} // namespace detail

struct SubordinatedTrace {
    double value = 0.0;           // sum_k e^{-t sqrt(mu_k)}
    double quadrature_value = 0.0; // int w(t, mu) (sum_k e^{-mu mu_k}) dmu
    double agreement = 0.0;        // |value - quadrature_value| / value
};

// Spectral evaluation of Tr e^{-t sqrt(-Delta_h)}, cross-checked against the
// subordination integral of the Laplacian heat trace; disagreement beyond
// rel_tol means the quadrature did not converge.
inline SubordinatedTrace subordinated_trace(const LaplaceSpectrum& spec, double t,
                                            double rel_tol = 1e-8) {
    if (!(t > 0.0)) fail("NonPositiveArgument", "subordinated_trace needs t > 0");
    SubordinatedTrace r;
    double s = 0.0, c = 0.0;
    for (std::size_t i = spec.eigenvalues.size(); i-- > 0;) {
        const double term = spec.multiplicities[i] * std::exp(-t * std::sqrt(spec.eigenvalues[i]));
        const double y = term - c;
        const double tt = s + y;
        c = (tt - s) - y;
        s = tt;
    }
    r.value = s;

    const auto laplace_trace = [&](double mu) {
        double z = 0.0;
        for (std::size_t i = spec.eigenvalues.size(); i-- > 0;)
            z += spec.multiplicities[i] * std::exp(-mu * spec.eigenvalues[i]);
        return z;
    };
    double qerr = 0.0;
    r.quadrature_value = detail::subordinate_integral(t, laplace_trace, &qerr);
    r.agreement = std::abs(r.value - r.quadrature_value) / std::max(1e-300, r.value);
    if (r.agreement > rel_tol || qerr > rel_tol * r.value)
        fail("QuadratureNotConverged",
             "subordination identity check failed: rel gap " + std::to_string(r.agreement));
    return r;
}

// Flat half-space Poisson kernel for an SPD constant metric h:
//   P(t, x) = Gamma((n+1)/2)/pi^((n+1)/2) * t / (t^2 + x.h.x)^((n+1)/2)
inline double flat_poisson_kernel(const Eigen::MatrixXd& h, double t, const Eigen::VectorXd& x) {
    if (!(t > 0.0)) fail("NonPositiveArgument", "flat_poisson_kernel needs t > 0");
    const int n = int(h.rows());
    if (h.cols() != n || x.size() != n) fail("LengthMismatch", "h must be n x n, x length n");
    if ((h - h.transpose()).norm() > 1e-12 * h.norm()) fail("NotSPD", "h must be symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.eigenvalues().minCoeff() <= 0.0) fail("NotSPD", "h must be positive definite");
    const double q = x.dot(h * x);
    return gamma_fn(0.5 * (n + 1)) / std::pow(kPi, 0.5 * (n + 1)) * t /
           std::pow(t * t + q, 0.5 * (n + 1));
}

} // namespace steklov
