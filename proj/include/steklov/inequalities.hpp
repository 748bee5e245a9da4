#pragma once
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "steklov/heat_trace.hpp"
#include "steklov/io.hpp"
#include "steklov/sphere_harmonics.hpp"

// Numerical verification of the trace-inequality circle on spectrally
// solvable domains: Sobolev / Log-Sobolev / Nash trace inequalities, the
// on-diagonal kernel bound, and the Rozenblum-Lieb-Cwikel count, all on the
// unit ball in R^3 (n = 2) with boundary functions restricted to traces of
// harmonic extensions; the circle/disk pair is supported for the energy op.

namespace steklov {

enum class BoundaryBasis { Fourier, RealSphericalHarmonics };

struct BoundaryFunction {
    BoundaryBasis basis = BoundaryBasis::RealSphericalHarmonics;
    int band_limit = 0;
    // Fourier layout: [a_0, a_1, b_1, ..., a_L, b_L]
    // Harmonics layout: flat (l, m) index, l = 0..L, m = -l..l
    Eigen::VectorXd coeffs;
};

// Dirichlet energy of the harmonic extension:
//   circle -> pi sum_k k (a_k^2 + b_k^2); unit ball -> sum l c_lm^2
inline double extension_energy(const BoundaryFunction& f) {
    if (f.basis == BoundaryBasis::Fourier) {
        double e = 0.0;
        for (int k = 1; k <= f.band_limit; ++k)
            e += k * (f.coeffs(2 * k - 1) * f.coeffs(2 * k - 1) +
                      f.coeffs(2 * k) * f.coeffs(2 * k));
        return kPi * e;
    }
    if (f.basis == BoundaryBasis::RealSphericalHarmonics) {
        double e = 0.0;
        for (int l = 0; l <= f.band_limit; ++l)
            for (int m = -l; m <= l; ++m)
                e += l * f.coeffs(harmonic_index(l, m)) * f.coeffs(harmonic_index(l, m));
        return e;
    }
    fail("UnsupportedBasis", "unknown boundary basis");
}

enum class InequalityKind { SobolevTrace, LogSobolevTrace, NashTrace, KernelBound, RLCCount };

inline const char* to_string(InequalityKind k) {
    switch (k) {
        case InequalityKind::SobolevTrace: return "SobolevTrace";
        case InequalityKind::LogSobolevTrace: return "LogSobolevTrace";
        case InequalityKind::NashTrace: return "NashTrace";
        case InequalityKind::KernelBound: return "KernelBound";
        case InequalityKind::RLCCount: return "RLCCount";
    }
    return "?";
}

struct InequalityReport {
    InequalityKind which = InequalityKind::SobolevTrace;
    double A = 0.0, B = 0.0, epsilon = 0.0;
    double lhs = 0.0, rhs = 0.0;
    double margin = 0.0; // rhs - lhs
    bool holds = false;
    std::string witness; // extra context (violating t, counts, seed, ...)
};

inline json to_json(const InequalityReport& r) {
    json j;
    j["which"] = to_string(r.which);
    j["A"] = r.A;
    j["B"] = r.B;
    if (r.which == InequalityKind::LogSobolevTrace) j["epsilon"] = r.epsilon;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["margin"] = r.margin;
    j["holds"] = r.holds;
    j["witness"] = r.witness;
    return j;
}

// Li-Zhu sharp Sobolev gradient constant:
//   A = 2 (n-1)^{-1} ((n+1) omega_{n+1})^{-1/n}
inline double sharp_sobolev_gradient_constant(int n) {
    return 2.0 / (n - 1.0) *
           std::pow((n + 1.0) * unit_ball_volume(n + 1), -1.0 / n);
}

// Shared evaluation context for the S^2 harness: basis values and node data.
struct SphereContext {
    int band_limit = 32;
    SphereGrid grid;
    Eigen::MatrixXd basis; // harmonics x nodes

    explicit SphereContext(int L = 32, int n_theta = 64)
        : band_limit(L), grid(sphere_grid(n_theta, 2 * n_theta)),
          basis(harmonic_basis(L, grid)) {}

    Eigen::VectorXd values(const BoundaryFunction& f) const {
        return basis.topRows(f.coeffs.size()).transpose() * f.coeffs;
    }
};

namespace detail {

inline InequalityReport make_report(InequalityKind which, double A, double B, double eps,
                                    double lhs, double rhs) {
    InequalityReport r;
    r.which = which;
    r.A = A;
    r.B = B;
    r.epsilon = eps;
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs - lhs;
    r.holds = r.margin >= -1e-10 * std::abs(rhs);
    return r;
}

} // namespace detail

// Sobolev (5=1), Log-Sobolev (5=2) with the printed beta(eps), Nash (5=3),
// with the volume integral replaced by the harmonic-extension energy.
inline InequalityReport functional_inequality_check(const SphereContext& ctx,
                                                    InequalityKind which,
                                                    const BoundaryFunction& f, double A,
                                                    double B, double epsilon = -1.0) {
    if (f.basis != BoundaryBasis::RealSphericalHarmonics)
        fail("UnsupportedDimension", "the inequality harness runs on S^2 (n = 2)");
    const int n = 2;
    const Eigen::VectorXd v = ctx.values(f);
    const Eigen::VectorXd& w = ctx.grid.weights;
    const double energy = extension_energy(f);
    const double l2sq = (w.array() * v.array().square()).sum();

    switch (which) {
        case InequalityKind::SobolevTrace: {
            const double l4 = (w.array() * v.array().square().square()).sum();
            const double lhs = std::sqrt(l4); // (int |v|^{2n/(n-1)})^{(n-1)/n}, n = 2
            return detail::make_report(which, A, B, 0.0, lhs, A * energy + B * l2sq);
        }
        case InequalityKind::LogSobolevTrace: {
            if (!(epsilon > 0.0)) fail("MissingEpsilon", "log-Sobolev needs epsilon > 0");
            double lhs = 0.0;
            for (int i = 0; i < v.size(); ++i) {
                const double av = std::abs(v(i));
                if (av > 0.0) lhs += w(i) * v(i) * v(i) * std::log(av);
            }
            const double beta = 0.5 * n * std::log(n * A / (2.0 * std::exp(1.0))) +
                                B / A * epsilon - 0.5 * n * std::log(epsilon);
            const double rhs =
                epsilon * energy + beta * l2sq + l2sq * std::log(std::sqrt(l2sq));
            return detail::make_report(which, A, B, epsilon, lhs, rhs);
        }
        case InequalityKind::NashTrace: {
            const double l1 = (w.array() * v.array().abs()).sum();
            const double lhs = std::pow(l2sq, 1.0 + 1.0 / n); // ||v||_2^{2+2/n}
            const double rhs = (A * energy + B * l2sq) * std::pow(l1, 2.0 / n);
            return detail::make_report(which, A, B, 0.0, lhs, rhs);
        }
        default:
            fail("UnsupportedKind", "functional_inequality_check handles the three trace inequalities");
    }
}

// On-diagonal kernel bound (5=4): K(t,x,x) <= (nAe/4)^n e^{B t / A} / t^n on a grid.
inline InequalityReport kernel_bound_check(const DomainSpec& spec, double A, double B,
                                           const std::vector<double>& t_grid) {
    if (spec.kind != DomainKind::Ball || spec.n != 2)
        fail("UnsupportedKind", "kernel bound harness runs on the unit ball, n = 2");
    const int n = spec.n;
    InequalityReport r;
    r.which = InequalityKind::KernelBound;
    r.A = A;
    r.B = B;
    r.holds = true;
    double worst = std::numeric_limits<double>::infinity();
    for (double t : t_grid) {
        const double lhs = model_kernel_diagonal(spec, t);
        const double rhs = std::pow(n * A * std::exp(1.0) / 4.0, n) *
                           std::exp(B / A * t) / std::pow(t, n);
        const double margin = rhs - lhs;
        if (margin < worst) {
            worst = margin;
            r.lhs = lhs;
            r.rhs = rhs;
            r.margin = margin;
            if (margin < -1e-10 * std::abs(rhs)) {
                r.holds = false;
                r.witness = "violated at t = " + format_double(t);
            }
        }
    }
    return r;
}

struct RlcResult {
    long count = 0;     // I_q(0)
    double bound = 0.0; // e^n int q_-^n dS
    bool holds = false;
    InequalityReport report;
};

// I_q(0) for (A N_g - B - q) phi = -lambda phi on S^2: the number of
// nonpositive eigenvalues of A diag(l) + B + G_q in the harmonic basis
// truncated at band L (N_g = -diag(l) under the inward-normal convention).
// Counts must agree between bands L and L + 4.
inline RlcResult rlc_count(const SphereContext& ctx, const BoundaryFunction& q, double A,
                           double B, int L) {
    if (q.basis != BoundaryBasis::RealSphericalHarmonics)
        fail("UnsupportedDimension", "rlc_count runs on S^2");
    const int n = 2;
    const Eigen::VectorXd qv = ctx.values(q);
    const Eigen::VectorXd& w = ctx.grid.weights;

    const auto count_at = [&](int band) -> long {
        const int B_sz = harmonics_count(band);
        if (B_sz > ctx.basis.rows())
            fail("BandLimitTooLow", "context band limit is below the requested operator band");
        const Eigen::MatrixXd Yb = ctx.basis.topRows(B_sz);
        Eigen::MatrixXd G =
            Yb * (w.array() * qv.array()).matrix().asDiagonal() * Yb.transpose();
        for (int l = 0; l <= band; ++l)
            for (int m = -l; m <= l; ++m) {
                const int idx = harmonic_index(l, m);
                G(idx, idx) += A * l + B;
            }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
        long c = 0;
        const double tol = 1e-12 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
        for (int i = 0; i < es.eigenvalues().size(); ++i)
            if (es.eigenvalues()(i) <= tol) ++c;
        return c;
    };

    const long c1 = count_at(L), c2 = count_at(L + 4);
    if (c1 != c2)
        fail("BandLimitTooLow", "count changed between band limits " + std::to_string(L) +
                                    " and " + std::to_string(L + 4));
    RlcResult r;
    r.count = c1;
    const double q_minus_n =
        (ctx.grid.weights.array() * qv.array().min(0.0).abs().pow(n)).sum();
    r.bound = std::pow(std::exp(1.0), n) * q_minus_n;
    r.holds = double(r.count) <= r.bound * (1.0 + 1e-12);
    r.report = detail::make_report(InequalityKind::RLCCount, A, B, 0.0, double(r.count), r.bound);
    r.report.holds = r.holds;
    return r;
}

// Diagnostic sweep of the counting asymptotics: scaling the potential by a
// large beta, beta^{-n} I_{beta q}(0) approaches the semiclassical constant
//   omega_n / (2 pi)^n * int (q_- / A)^n dS.
// Emits plot-ready rows; purely diagnostic, nothing asserts on it.
struct BetaSweepRow {
    double beta = 0.0;
    long count = 0;
    double scaled_count = 0.0; // beta^{-n} count
};

struct BetaSweep {
    std::vector<BetaSweepRow> rows;
    double predicted_limit = 0.0;
};

inline BetaSweep rlc_beta_sweep(const SphereContext& ctx, const BoundaryFunction& q, double A,
                                double B, int L, const std::vector<double>& betas) {
    const int n = 2;
    BetaSweep sweep;
    const Eigen::VectorXd v = ctx.values(q);
    sweep.predicted_limit =
        unit_ball_volume(n) / std::pow(2.0 * kPi, n) *
        (ctx.grid.weights.array() * (v.array().min(0.0).abs() / A).pow(n)).sum();
    for (double beta : betas) {
        BoundaryFunction scaled = q;
        scaled.coeffs *= beta;
        const RlcResult r = rlc_count(ctx, scaled, A, B, L);
        sweep.rows.push_back({beta, r.count, double(r.count) / std::pow(beta, n)});
    }
    return sweep;
}

inline std::string to_csv(const BetaSweep& s) {
    std::ostringstream os;
    os << "beta,count,scaled_count,predicted_limit\n";
    for (const auto& row : s.rows)
        os << format_double(row.beta) << ',' << row.count << ','
           << format_double(row.scaled_count) << ',' << format_double(s.predicted_limit)
           << '\n';
    return os.str();
}

// Random band-limited boundary function with Gaussian coefficients of
// variance (1 + l)^{-4}; one RNG stream per sample index keeps the harness
// order-independent.
inline BoundaryFunction random_boundary_function(int L, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    BoundaryFunction f;
    f.basis = BoundaryBasis::RealSphericalHarmonics;
    f.band_limit = L;
    f.coeffs.resize(harmonics_count(L));
    for (int l = 0; l <= L; ++l) {
        const double sigma = std::pow(1.0 + l, -2.0); // variance (1+l)^{-4}
        for (int m = -l; m <= l; ++m) f.coeffs(harmonic_index(l, m)) = sigma * gauss(rng);
    }
    return f;
}

// Calibrate B: maximize (Sobolev lhs - A * energy) / ||v||_2^2 over a seeded
// random band-limited family, then multiply by the safety factor 1.5.
inline double calibrate_sobolev_B(const SphereContext& ctx, double A, int samples,
                                  std::uint64_t seed, int band = 32) {
    double best = 0.0;
    for (int s = 0; s < samples; ++s) {
        const BoundaryFunction f = random_boundary_function(band, seed + s);
        const Eigen::VectorXd v = ctx.values(f);
        const double l4 = (ctx.grid.weights.array() * v.array().square().square()).sum();
        const double l2sq = (ctx.grid.weights.array() * v.array().square()).sum();
        const double need = (std::sqrt(l4) - A * extension_energy(f)) / l2sq;
        best = std::max(best, need);
    }
    return 1.5 * best;
}

} // namespace steklov
