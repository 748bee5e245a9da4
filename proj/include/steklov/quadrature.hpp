#pragma once
#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "steklov/errors.hpp"
#include "steklov/special.hpp"

namespace steklov {

struct Rule1d {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre on [-1, 1] by Newton iteration on P_n.
inline Rule1d gauss_legendre(int n) {
    if (n < 1) fail("UnsupportedDimension", "gauss_legendre needs n >= 1");
    Rule1d r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    return r;
}

// Gauss-Legendre mapped to [a, b].
inline Rule1d gauss_legendre(int n, double a, double b) {
    Rule1d r = gauss_legendre(n);
    const double c = 0.5 * (b - a), d = 0.5 * (a + b);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = c * r.nodes[i] + d;
        r.weights[i] *= c;
    }
    return r;
}

// Gauss-Laguerre for integrals of f(x) e^{-x} over (0, inf), via the
// Golub-Welsch symmetric tridiagonal eigenproblem.
inline Rule1d gauss_laguerre(int n) {
    if (n < 1) fail("UnsupportedDimension", "gauss_laguerre needs n >= 1");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        J(k, k) = 2.0 * k + 1.0;
        if (k + 1 < n) {
            const double off = double(k + 1);
            J(k, k + 1) = off;
            J(k + 1, k) = off;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    Rule1d r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        r.weights[i] = v0 * v0; // total mass of e^{-x} on (0,inf) is 1
    }
    return r;
}

namespace detail {

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                                   double b, double fa, double fm, double fb,
                                   double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0) fail("QuadratureNotConverged", "adaptive_simpson recursion limit");
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

// Adaptive Simpson on [a, b]; tol is an absolute error target.
inline double adaptive_integrate(const std::function<double(double)>& f, double a,
                                 double b, double tol = 1e-12, int max_depth = 60) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

} // namespace steklov
