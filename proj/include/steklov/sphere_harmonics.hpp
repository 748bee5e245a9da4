#pragma once
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "steklov/quadrature.hpp"
#include "steklov/special.hpp"

// Real orthonormal spherical harmonics on S^2 and the Gauss-Legendre x
// uniform-azimuth quadrature grid they are evaluated on.

namespace steklov {

struct SphereGrid {
    Eigen::VectorXd cos_theta; // per node
    Eigen::VectorXd phi;
    Eigen::VectorXd weights;   // sums to 4 pi
    int nodes = 0;
};

inline SphereGrid sphere_grid(int n_theta, int n_phi) {
    Rule1d gl = gauss_legendre(n_theta, -1.0, 1.0);
    SphereGrid g;
    g.nodes = n_theta * n_phi;
    g.cos_theta.resize(g.nodes);
    g.phi.resize(g.nodes);
    g.weights.resize(g.nodes);
    const double wphi = 2.0 * kPi / n_phi;
    int idx = 0;
    for (int i = 0; i < n_theta; ++i)
        for (int j = 0; j < n_phi; ++j, ++idx) {
            g.cos_theta(idx) = gl.nodes[i];
            g.phi(idx) = wphi * (j + 0.5);
            g.weights(idx) = gl.weights[i] * wphi;
        }
    return g;
}

// number of real harmonics through band L
inline int harmonics_count(int L) { return (L + 1) * (L + 1); }
// flat index of (l, m), m in [-l, l]
inline int harmonic_index(int l, int m) { return l * l + l + m; }

// Fully normalized associated Legendre P~_l^m(x) (including the
// sqrt((2l+1)/4pi ...) factor), for all l <= L at one x.
inline void normalized_legendre(int L, double x, Eigen::MatrixXd& P) {
    const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
    P.setZero(L + 1, L + 1);
    P(0, 0) = std::sqrt(1.0 / (4.0 * kPi));
    for (int m = 1; m <= L; ++m)
        P(m, m) = -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * P(m - 1, m - 1);
    for (int m = 0; m < L; ++m)
        P(m + 1, m) = std::sqrt(2.0 * m + 3.0) * x * P(m, m);
    for (int m = 0; m <= L; ++m)
        for (int l = m + 2; l <= L; ++l) {
            const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
            const double b = std::sqrt(((2.0 * l + 1.0) / (2.0 * l - 3.0)) *
                                       ((double(l - 1) * (l - 1) - double(m) * m) /
                                        (double(l) * l - double(m) * m)));
            P(l, m) = a * x * P(l - 1, m) - b * P(l - 2, m);
        }
}

// Basis matrix Y((l,m), node) of the real orthonormal harmonics on a grid.
inline Eigen::MatrixXd harmonic_basis(int L, const SphereGrid& g) {
    Eigen::MatrixXd Y(harmonics_count(L), g.nodes);
    Eigen::MatrixXd P;
    const double sq2 = std::sqrt(2.0);
    for (int node = 0; node < g.nodes; ++node) {
        normalized_legendre(L, g.cos_theta(node), P);
        const double ph = g.phi(node);
        for (int l = 0; l <= L; ++l) {
            Y(harmonic_index(l, 0), node) = P(l, 0);
            for (int m = 1; m <= l; ++m) {
                Y(harmonic_index(l, m), node) = sq2 * P(l, m) * std::cos(m * ph);
                Y(harmonic_index(l, -m), node) = sq2 * P(l, m) * std::sin(m * ph);
            }
        }
    }
    return Y;
}

} // namespace steklov
