#pragma once
#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "steklov/geometry.hpp"

// Steklov spectra. Closed-form families for Disk / Annulus / Ball, and a
// numeric Dirichlet-to-Neumann eigensolver for smooth star-shaped planar
// domains (harmonic-polynomial least squares on boundary collocation).
//
// Sign convention, stated once: the inward-normal operator N_g is negative
// semidefinite; this library stores the spectrum of Lambda = -N_g, the
// standard nonnegative DtN, everywhere.

namespace steklov {

enum class SpectrumSource { ClosedForm, Numeric };

struct Spectrum {
    std::vector<double> eigenvalues;  // distinct, strictly increasing
    std::vector<int> multiplicities;  // aligned with eigenvalues
    long long count = 0;              // total with multiplicity
    SpectrumSource source = SpectrumSource::ClosedForm;
    double accuracy = 0.0;            // estimated max relative error
    int n = 1;
    double boundary_volume = std::numeric_limits<double>::quiet_NaN();
    std::string label;

    double max_eigenvalue() const {
        return eigenvalues.empty() ? 0.0 : eigenvalues.back();
    }
    // counting function N(tau) = #{ lambda_k <= tau } with multiplicity
    long counting(double tau) const {
        long c = 0;
        for (std::size_t i = 0; i < eigenvalues.size(); ++i)
            if (eigenvalues[i] <= tau) c += multiplicities[i];
        return c;
    }
};

namespace detail {

// Append (value, mult) groups until `count` reaches K, trimming the last group.
inline void push_trimmed(Spectrum& s, double value, long long mult, long long K) {
    if (s.count >= K) return;
    const int take = int(std::min(mult, K - s.count));
    s.eigenvalues.push_back(value);
    s.multiplicities.push_back(take);
    s.count += take;
}

// dim of degree-l spherical harmonics on S^n: C(n+l, n) - C(n+l-2, n)
inline long harmonic_dim(int n, long l) {
    auto binom = [](long a, long b) -> double {
        if (b < 0 || b > a) return 0.0;
        double r = 1.0;
        for (long i = 1; i <= b; ++i) r = r * double(a - b + i) / double(i);
        return r;
    };
    if (l == 0) return 1;
    return std::lround(binom(n + l, n) - binom(n + l - 2, n));
}

} // namespace detail

// Closed-form Steklov spectra (first K eigenvalues with multiplicity).
inline Spectrum steklov_closed_form(const DomainSpec& spec, long long K) {
    if (K < 1) fail("UnsupportedKind", "steklov_closed_form needs K >= 1");
    Spectrum s;
    s.n = spec.n;
    s.boundary_volume = spec.boundary_volume;
    s.label = spec.label;
    s.source = SpectrumSource::ClosedForm;
    const double R = spec.radius;
    switch (spec.kind) {
        case DomainKind::Disk: {
            detail::push_trimmed(s, 0.0, 1, K);
            for (long k = 1; s.count < K; ++k) detail::push_trimmed(s, k / R, 2, K);
            break;
        }
        case DomainKind::Ball: {
            for (long l = 0; s.count < K; ++l)
                detail::push_trimmed(s, l / R, detail::harmonic_dim(spec.n, l), K);
            break;
        }
        case DomainKind::Annulus: {
            // u = (a r^k + b r^{-k}) e^{ikt} with Steklov conditions on both
            // circles of the unit annulus {rho < |x| < 1}; radius R rescales
            // every eigenvalue by 1/R.
            const double rho = spec.inner_radius;
            std::vector<std::pair<double, int>> eigs;
            eigs.emplace_back(0.0, 1);
            eigs.emplace_back(-(1.0 + 1.0 / rho) / std::log(rho), 1); // k = 0 pair {1, log r}
            // enough angular modes to cover K eigenvalues: each k gives 4
            const int kmax = int(K / 2 + 2);
            for (int k = 1; k <= kmax; ++k) {
                // lambda^2 - k (1 + 1/rho) coth(k log(1/rho)) lambda + k^2/rho = 0
                const double L = std::log(1.0 / rho);
                const double bq = k * (1.0 + 1.0 / rho) / std::tanh(k * L);
                const double cq = k * k / rho;
                const double disc = std::sqrt(bq * bq - 4.0 * cq);
                eigs.emplace_back(0.5 * (bq - disc), 2);
                eigs.emplace_back(0.5 * (bq + disc), 2);
            }
            std::sort(eigs.begin(), eigs.end());
            for (auto& [v, m] : eigs) {
                if (s.count >= K) break;
                detail::push_trimmed(s, v / R, m, K);
            }
            break;
        }
        default:
            fail("UnsupportedKind", "closed form exists for Disk, Annulus, Ball");
    }
    return s;
}

// ---------------------------------------------------------------------------
// numeric DtN for star-shaped planar domains

struct DtnOperator {
    Eigen::MatrixXd matrix;   // symmetric (2 modes + 1)^2, nonnegative DtN
    double asymmetry = 0.0;   // ||L - L^T||_F / ||L||_F before symmetrization
    double ls_residual = 0.0; // max relative collocation residual
    int modes = 0;
};

// Assemble the DtN on the real trigonometric basis of the boundary parameter.
// Interior Dirichlet problems are solved by weighted least squares in the
// harmonic-polynomial basis {1, Re z^k, Im z^k}; basis column k is scaled by
// R_max^{-k} and the system solved by a rank-revealing QR. The boundary
// arc-length weight is folded into the test/trial functions e_a/sqrt(|J|),
// which are orthonormal in L^2(dS), so the eigenproblem stays standard
// symmetric.
inline DtnOperator assemble_dtn(const DomainSpec& spec, int N_modes) {
    if (spec.kind != DomainKind::StarPlanar && spec.kind != DomainKind::Disk)
        fail("UnsupportedKind", "assemble_dtn supports StarPlanar (Disk as degenerate case)");
    if (N_modes < 16 || N_modes % 2 != 0) fail("UnsupportedKind", "N_modes must be even, >= 16");

    const int B = 2 * N_modes + 1; // trig basis size
    const bool disk = spec.kind == DomainKind::Disk;
    // interior polynomial degree; star domains need headroom above the trig
    // band for the extensions of the top-frequency targets to sit in the span
    const int Kint = disk ? N_modes : 2 * N_modes + 32;
    const int Bi = 2 * Kint + 1;
    const int M = std::max(256, 8 * Kint); // collocation nodes

    // boundary geometry at collocation nodes
    Eigen::VectorXd r(M), r1(M), jac(M), cs(M), sn(M);
    double rmax = 0.0;
    for (int i = 0; i < M; ++i) {
        const double t = 2.0 * kPi * i / M;
        cs(i) = std::cos(t);
        sn(i) = std::sin(t);
        if (disk) {
            r(i) = spec.radius;
            r1(i) = 0.0;
        } else {
            r(i) = spec.radial(t);
            r1(i) = spec.radial_d1(t);
            if (!(r(i) > 0.0)) fail("NonStarShaped", "radial function not positive");
        }
        jac(i) = std::sqrt(r(i) * r(i) + r1(i) * r1(i));
        rmax = std::max(rmax, r(i));
    }

    // harmonic basis w^k = (z/rmax)^k at nodes, plus its normal derivative
    Eigen::MatrixXd A(M, Bi);
    Eigen::MatrixXd Dnu(M, Bi);
    for (int i = 0; i < M; ++i) {
        const double x = r(i) * cs(i), y = r(i) * sn(i);
        // outward unit normal of r(theta)
        const double nx = (r(i) * cs(i) + r1(i) * sn(i)) / jac(i);
        const double ny = (r(i) * sn(i) - r1(i) * cs(i)) / jac(i);
        const double wr = x / rmax, wi = y / rmax;
        double re = 1.0, im = 0.0; // w^0
        A(i, 0) = 1.0;
        Dnu(i, 0) = 0.0;
        for (int k = 1; k <= Kint; ++k) {
            // w^{k-1} in (re, im); grad Re w^k = (k/rmax)(Re w^{k-1}, -Im w^{k-1})
            const double gx_re = k / rmax * re, gy_re = -k / rmax * im;
            const double gx_im = k / rmax * im, gy_im = k / rmax * re;
            const double re_k = re * wr - im * wi;
            const double im_k = re * wi + im * wr;
            A(i, 2 * k - 1) = re_k;
            A(i, 2 * k) = im_k;
            Dnu(i, 2 * k - 1) = gx_re * nx + gy_re * ny;
            Dnu(i, 2 * k) = gx_im * nx + gy_im * ny;
            re = re_k;
            im = im_k;
        }
    }

    // boundary targets f_a = e_a / sqrt(|J|), e_a the L^2(dtheta)-orthonormal
    // trig functions up to frequency N_modes
    Eigen::MatrixXd F(M, B);
    for (int i = 0; i < M; ++i) {
        const double t = 2.0 * kPi * i / M;
        const double sj = 1.0 / std::sqrt(jac(i));
        F(i, 0) = sj / std::sqrt(2.0 * kPi);
        for (int k = 1; k <= N_modes; ++k) {
            F(i, 2 * k - 1) = sj * std::cos(k * t) / std::sqrt(kPi);
            F(i, 2 * k) = sj * std::sin(k * t) / std::sqrt(kPi);
        }
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    Eigen::MatrixXd C = qr.solve(F);

    // The worst residual always sits on the top-frequency targets, whose
    // error cannot leak into the trusted low eigenvalues (those are gated by
    // the self-convergence check); the threshold here only flags rank
    // collapse of the scaled polynomial basis.
    double resid = 0.0;
    {
        Eigen::MatrixXd E = A * C - F;
        for (int a = 0; a < B; ++a)
            resid = std::max(resid, E.col(a).norm() / F.col(a).norm());
    }
    if (resid > 1e-4)
        fail("IllConditioned", "interior least-squares residual " + std::to_string(resid));

    // Lambda_ab = int (d_nu u_a) e_b sqrt(|J|) dtheta  (trapezoid in theta)
    Eigen::MatrixXd G = Dnu * C; // normal derivative of extension of f_a at nodes
    const double wq = 2.0 * kPi / M;
    Eigen::MatrixXd W = F;       // e_b sqrt(|J|) wq = f_b |J| wq
    for (int i = 0; i < M; ++i) W.row(i) *= jac(i) * wq;
    Eigen::MatrixXd L = G.transpose() * W; // L(a,b)

    DtnOperator op;
    op.modes = N_modes;
    op.ls_residual = resid;
    op.asymmetry = (L - L.transpose()).norm() / L.norm();
    op.matrix = 0.5 * (L + L.transpose());
    return op;
}

// First K eigenvalues of the numeric DtN, multiplicity-grouped; accuracy from
// a self-convergence run at N_modes and 2 N_modes.
inline Spectrum steklov_numeric(const DomainSpec& spec, int N_modes, int K,
                                double tolerance = 1e-6, double group_gap = 1e-6) {
    if (K > N_modes) fail("UnsupportedKind", "only K <= N_modes eigenvalues are trusted");
    if (spec.kind == DomainKind::Annulus)
        fail("UnsupportedKind", "numeric path is restricted to simply connected star domains");

    const auto low_part = [&](int modes) {
        DtnOperator op = assemble_dtn(spec, modes);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.matrix);
        std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
        std::sort(ev.begin(), ev.end());
        ev.resize(std::size_t(K));
        return std::pair{ev, op};
    };

    auto [e1, op1] = low_part(N_modes);
    auto [e2, op2] = low_part(2 * N_modes);

    double gap = 0.0;
    for (int i = 0; i < K; ++i)
        gap = std::max(gap, std::abs(e1[i] - e2[i]) / std::max(1.0, std::abs(e2[i])));
    if (gap > tolerance)
        fail("NotConverged", "self-convergence gap " + std::to_string(gap) +
                                 " exceeds tolerance " + std::to_string(tolerance));

    // clamp the numerically-zero ground eigenvalue
    const double zero_tol = 1e-10 * std::max(1.0, std::abs(e2.back()));
    for (double& v : e2)
        if (std::abs(v) <= zero_tol) v = 0.0;

    Spectrum s;
    s.n = 1;
    s.boundary_volume = spec.boundary_volume;
    s.label = spec.label;
    s.source = SpectrumSource::Numeric;
    s.accuracy = gap;
    for (int i = 0; i < K;) {
        int j = i + 1;
        while (j < K && std::abs(e2[j] - e2[i]) <= group_gap * std::max(1.0, std::abs(e2[i]))) ++j;
        double mean = 0.0;
        for (int k = i; k < j; ++k) mean += e2[k];
        mean /= (j - i);
        s.eigenvalues.push_back(mean);
        s.multiplicities.push_back(j - i);
        s.count += j - i;
        i = j;
    }
    return s;
}

// ---------------------------------------------------------------------------
// CSV serialization (the canonical cache format)

inline std::string to_csv(const Spectrum& s) {
    std::ostringstream os;
    os << "n,vol,source,accuracy\n"
       << s.n << ',' << format_double(s.boundary_volume) << ','
       << (s.source == SpectrumSource::ClosedForm ? "closed_form" : "numeric") << ','
       << format_double(s.accuracy) << '\n'
       << "index,eigenvalue,multiplicity\n";
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
        os << i << ',' << format_double(s.eigenvalues[i]) << ',' << s.multiplicities[i] << '\n';
    return os.str();
}

// Stable content key for provenance hashes.
inline std::string content_key(const Spectrum& s) {
    std::ostringstream os;
    os << s.n << '|' << format_double(s.boundary_volume) << '|' << int(s.source);
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
        os << '|' << format_double(s.eigenvalues[i]) << ':' << s.multiplicities[i];
    return os.str();
}

inline Spectrum spectrum_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line.rfind("n,vol,source", 0) != 0)
        fail("ConfigError", "bad spectrum CSV header");
    if (!std::getline(is, line)) fail("ConfigError", "truncated spectrum CSV");
    Spectrum s;
    {
        std::istringstream row(line);
        std::string f;
        std::getline(row, f, ',');
        s.n = std::stoi(f);
        std::getline(row, f, ',');
        s.boundary_volume = std::stod(f);
        std::getline(row, f, ',');
        s.source = f == "numeric" ? SpectrumSource::Numeric : SpectrumSource::ClosedForm;
        std::getline(row, f, ',');
        s.accuracy = std::stod(f);
    }
    std::getline(is, line); // column header
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string f;
        std::getline(row, f, ',');
        std::getline(row, f, ',');
        s.eigenvalues.push_back(std::stod(f));
        std::getline(row, f, ',');
        s.multiplicities.push_back(std::stoi(f));
        s.count += s.multiplicities.back();
    }
    return s;
}

} // namespace steklov
