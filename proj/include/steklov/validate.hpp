#pragma once
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "steklov/hearing.hpp"
#include "steklov/inequalities.hpp"
#include "steklov/invariants.hpp"
#include "steklov/subordination.hpp"

// The one-shot validation suite: every acceptance criterion at its stated
// tolerance, one result per criterion. Two comparisons are expected to come
// out red and are reported with full numbers rather than reconciled:
//   - criterion 5's printed-a3 match (the transcribed coefficient sheet's
//     moment-table intermediates are inconsistent with its own symbols),
//   - criterion 7's S^2 fractional constant 2/3 (the measured constant is
//     1/3, the Gauss-curvature reading of the same formula).
// The B^4 comparison (int a3 vs the exact trace constant 1/3) is generated
// as a report and is non-gating by design.

namespace steklov {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string details;
    json artifacts;
    double seconds = 0.0;
};

namespace detail {

inline DomainSpec model_disk(double R = 1.0) {
    DomainSpec s;
    s.kind = DomainKind::Disk;
    s.radius = R;
    s.label = "disk";
    return make_domain(s);
}

inline DomainSpec model_ball(int n, double R = 1.0) {
    DomainSpec s;
    s.kind = DomainKind::Ball;
    s.n = n;
    s.radius = R;
    s.label = "ball";
    return make_domain(s);
}

inline DomainSpec model_star(std::vector<RadialCoeff> c, double c0 = 1.0) {
    DomainSpec s;
    s.kind = DomainKind::StarPlanar;
    s.radius = c0;
    s.radial_coeffs = std::move(c);
    s.label = "star";
    return make_domain(s);
}

inline SymbolPoint random_symbol_point(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 0.6);
    SymbolPoint p = SymbolPoint::flat(n);
    for (int j = 0; j < n; ++j) p.kappa(j) = gauss(rng);
    for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) {
            p.ambient_normal(j, k) = p.ambient_normal(k, j) = gauss(rng);
            p.ambient_normal_deriv(j, k) = p.ambient_normal_deriv(k, j) = gauss(rng);
        }
    return p;
}

template <class F>
CriterionResult timed(int id, std::string name, F&& body, double max_seconds = 0.0) {
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const std::exception& e) {
        r.passed = false;
        r.details += std::string(" [exception: ") + e.what() + "]";
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (max_seconds > 0.0 && r.seconds >= max_seconds) {
        r.passed = false;
        r.details += " [over the stated runtime budget]";
    }
    return r;
}

} // namespace detail

// 1. Numeric DtN on the unit disk: lambda = {0,1,1,...,20,20}, rel err <= 1e-8
//    at N_modes = 64, under 5 s.
inline CriterionResult criterion_disk_dtn() {
    return detail::timed(1, "numeric DtN reproduces the unit-disk spectrum", [](CriterionResult& r) {
        Spectrum s = steklov_numeric(detail::model_disk(), 64, 41);
        double worst = 0.0;
        long long idx = 0;
        for (std::size_t g = 0; g < s.eigenvalues.size(); ++g)
            for (int m = 0; m < s.multiplicities[g]; ++m, ++idx) {
                const double expect = double((idx + 1) / 2);
                worst = std::max(worst, std::abs(s.eigenvalues[g] - expect) /
                                            std::max(1.0, expect));
            }
        r.passed = worst <= 1e-8 && idx == 41;
        std::ostringstream os;
        os << "max relative error " << worst << " over lambda <= 20";
        r.details = os.str();
        r.artifacts["max_rel_error"] = worst;
    }, 5.0);
}

// 2. Leading Weyl/Sandgren coefficient within 5% once N(tau) >= 200.
inline CriterionResult criterion_weyl() {
    return detail::timed(2, "Weyl counting ratio within 5% for disk and ball", [](CriterionResult& r) {
        Spectrum d = steklov_closed_form(detail::model_disk(), 2001);
        Spectrum b = steklov_closed_form(detail::model_ball(2), 40000);
        r.passed = true;
        for (const Spectrum* s : {&d, &b}) {
            const double pref = unit_ball_volume(s->n) * s->boundary_volume /
                                std::pow(2.0 * kPi, s->n);
            double tau_ok = -1.0, ratio_ok = 0.0;
            for (double tau = 1.0; tau <= 0.45 * s->max_eigenvalue(); tau *= 1.3) {
                if (s->counting(tau) < 200) continue;
                const double ratio = double(s->counting(tau)) / (pref * std::pow(tau, s->n));
                if (std::abs(ratio - 1.0) <= 0.05) {
                    // must stay inside the band as tau doubles
                    const double r2 = double(s->counting(2 * tau)) /
                                      (pref * std::pow(2 * tau, s->n));
                    if (std::abs(r2 - 1.0) <= 0.05) {
                        tau_ok = tau;
                        ratio_ok = ratio;
                        break;
                    }
                }
            }
            r.passed = r.passed && tau_ok > 0.0;
            r.artifacts[s->n == 1 ? "disk" : "ball2"] = {{"tau", tau_ok}, {"ratio", ratio_ok}};
        }
        r.details = "counting ratios at the reported tau values in [0.95, 1.05]";
    });
}

// 3. Heat-trace coefficients vs exact traces.
inline CriterionResult criterion_heat_coefficients() {
    return detail::timed(3, "fitted trace coefficients match the exact expansions",
                         [](CriterionResult& r) {
        bool ok = true;
        std::ostringstream os;

        Spectrum d = steklov_closed_form(detail::model_disk(), 60001);
        ExpansionFit fd = fit_expansion(make_trace_samples(d, 1e-3, 1e-1), 1, 3, false);
        ok &= std::abs(fd.coefficients[0] - 2.0) <= 1e-4;
        ok &= std::abs(fd.coefficients[1] - 0.0) <= 1e-3;
        os << "disk (c0,c1)=(" << fd.coefficients[0] << "," << fd.coefficients[1] << ")";
        r.artifacts["disk_fit"] = fd.coefficients;

        Spectrum b2 = steklov_closed_form(detail::model_ball(2), 20'000'000);
        ExpansionFit f2 = fit_expansion(make_trace_samples(b2, 6.5e-3, 5e-2), 2, 4, false);
        CoefficientSet a2 = integrated_coefficients(curvature_field(detail::model_ball(2), 800));
        const double t2[3] = {2.0, 1.0, 1.0 / 3.0};
        for (int m = 0; m < 3; ++m) {
            ok &= std::abs(f2.coefficients[m] - t2[m]) <= 1e-3;
            ok &= std::abs(a2.integrals[m] - t2[m]) <= 1e-10;
        }
        r.artifacts["ball2_fit"] = f2.coefficients;
        r.artifacts["ball2_integrals"] = {a2.integrals[0], a2.integrals[1], a2.integrals[2]};

        Spectrum b3 = steklov_closed_form(detail::model_ball(3), 30'000'000'000LL);
        ExpansionFit f3 = fit_expansion(make_trace_samples(b3, 6.5e-3, 5e-2), 3, 4, false);
        CoefficientSet a3 = integrated_coefficients(curvature_field(detail::model_ball(3), 3000));
        const double t3[3] = {2.0, 2.0, 1.0};
        for (int m = 0; m < 3; ++m) {
            ok &= std::abs(f3.coefficients[m] - t3[m]) <= 1e-3;
            ok &= std::abs(a3.integrals[m] - t3[m]) <= 1e-10;
        }
        r.artifacts["ball3_fit"] = f3.coefficients;
        r.artifacts["ball3_integrals"] = {a3.integrals[0], a3.integrals[1], a3.integrals[2]};

        os << "; ball fits and a-integrals at (2,1,1/3) and (2,2,1)";
        r.details = os.str();
        r.passed = ok;
    });
}

// 4. Symbol-oracle equivalence for a1 and the a2 remainder at 1e-6 relative.
inline CriterionResult criterion_symbol_oracle_low(std::uint64_t seed) {
    return detail::timed(4, "symbol oracle reproduces a1 and the a2 remainder",
                         [seed](CriterionResult& r) {
        double worst1 = 0.0, worst2 = 0.0;
        for (int n : {2, 3}) {
            for (int trial = 0; trial < 25; ++trial) {
                SymbolPoint p = detail::random_symbol_point(n, seed + 1000 * n + trial);
                const double t = 0.9;
                const double o1 = symbol_diagonal_oracle(p, 2, t);
                const double a1 = std::pow(t, 1 - n) * coefficient_density(p, 1);
                worst1 = std::max(worst1, std::abs(o1 - a1) / std::max(1e-12, std::abs(a1)));
                const double o2 = symbol_diagonal_oracle(p, 3, t);
                const double a2r = std::pow(t, 2 - n) * a2_tilde_density(p);
                worst2 = std::max(worst2, std::abs(o2 - a2r) / std::max(1e-12, std::abs(a2r)));
            }
        }
        r.passed = worst1 <= 1e-6 && worst2 <= 1e-6;
        std::ostringstream os;
        os << "worst relative gaps: a1 " << worst1 << ", a2-remainder " << worst2;
        r.details = os.str();
        r.artifacts["worst_a1_gap"] = worst1;
        r.artifacts["worst_a2_gap"] = worst2;
    }, 60.0);
}

// 5. a3 transcription check: oracle(level 4) against the printed density at
//    20 seeded points (expected red; see the gap report), plus the required
//    non-gating B^4 comparison report.
inline CriterionResult criterion_a3_transcription(std::uint64_t seed) {
    return detail::timed(5, "level-4 oracle matches the printed a3 density",
                         [seed](CriterionResult& r) {
        json gaps = json::array();
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            SymbolPoint p = detail::random_symbol_point(3, seed + 17 * trial);
            const double oracle = symbol_diagonal_oracle(p, 4, 1.0);
            const double printed = coefficient_density(p, 3);
            const double gap = std::abs(oracle - printed) / std::max(1e-12, std::abs(printed));
            worst = std::max(worst, gap);
            gaps.push_back({{"oracle", oracle}, {"printed_a3", printed}, {"rel_gap", gap}});
        }
        r.passed = worst <= 1e-6;
        r.artifacts["per_point"] = gaps;
        r.artifacts["worst_rel_gap"] = worst;

        // B^4 report: int a3 over the unit S^3 vs the exact trace constant;
        // the narrow window keeps the genuine t log t remainder from biasing
        // the fitted constant
        CoefficientSet cs = integrated_coefficients(curvature_field(detail::model_ball(3), 3000));
        Spectrum b3 = steklov_closed_form(detail::model_ball(3), 120'000'000'000LL);
        ExpansionFit f = fit_expansion(make_trace_samples(b3, 4e-3, 2e-2), 3, 4, false);
        r.artifacts["b4_report"] = {
            {"integral_a3_printed", cs.integrals[3]},
            {"integral_a3_closed_form", 71.0 / 840.0},
            {"exact_trace_constant_fitted", f.coefficients[3]},
            {"exact_trace_constant", 1.0 / 3.0},
            {"gating", false},
            {"note", "these two are documented to disagree; the comparison is reported, "
                     "not asserted"}};

        std::ostringstream os;
        os << "worst relative gap " << worst
           << " (the transcribed a3 sheet is inconsistent with its own symbols; "
              "see the gap report); B4 report: int a3 = "
           << cs.integrals[3] << " vs exact constant 1/3";
        r.details = os.str();
    });
}

// 6. Moment table vs independent quadrature at 1e-8 for n in {2,3,4}.
inline CriterionResult criterion_moment_table() {
    return detail::timed(6, "moment table matches independent quadrature", [](CriterionResult& r) {
        struct Row {
            MomentPattern pattern;
            int min_n;
            std::array<int, 3> expo;
        };
        const std::vector<Row> rows = {
            {MomentPattern::Power, 1, {0, 0, 0}},
            {MomentPattern::Odd, 1, {1, 0, 0}},
            {MomentPattern::PairEqual, 2, {2, 0, 0}},
            {MomentPattern::PairDistinct, 2, {1, 1, 0}},
            {MomentPattern::QuadEqual, 2, {4, 0, 0}},
            {MomentPattern::QuadMixed, 2, {2, 2, 0}},
            {MomentPattern::QuadUnpaired, 3, {2, 1, 1}},
            {MomentPattern::Sextic, 3, {6, 0, 0}},
            {MomentPattern::QuarticSquare, 3, {4, 2, 0}},
            {MomentPattern::TripleSquare, 3, {2, 2, 2}},
            {MomentPattern::SexticUnpaired, 3, {3, 2, 1}},
        };
        const auto angular = [](int n, const std::array<int, 3>& expo) {
            // dense product rules, exact for these low-degree monomials
            double acc = 0.0;
            const auto mono = [&](const Eigen::VectorXd& w) {
                double v = 1.0;
                for (int j = 0; j < 3; ++j)
                    for (int e = 0; e < expo[j]; ++e) v *= w(j);
                return v;
            };
            if (n == 2) {
                const int M = 2048;
                Eigen::VectorXd w(2);
                for (int i = 0; i < M; ++i) {
                    const double t = 2.0 * kPi * (i + 0.5) / M;
                    w << std::cos(t), std::sin(t);
                    acc += mono(w) * 2.0 * kPi / M;
                }
            } else if (n == 3) {
                Rule1d gl = gauss_legendre(48, -1.0, 1.0);
                const int M = 96;
                Eigen::VectorXd w(3);
                for (std::size_t i = 0; i < gl.nodes.size(); ++i)
                    for (int j = 0; j < M; ++j) {
                        const double c = gl.nodes[i], s = std::sqrt(1.0 - c * c);
                        const double ph = 2.0 * kPi * (j + 0.5) / M;
                        w << c, s * std::cos(ph), s * std::sin(ph);
                        acc += gl.weights[i] * mono(w) * 2.0 * kPi / M;
                    }
            } else {
                Rule1d glp = gauss_legendre(48, 0.0, kPi);
                Rule1d glc = gauss_legendre(48, -1.0, 1.0);
                const int M = 96;
                Eigen::VectorXd w(4);
                for (std::size_t a = 0; a < glp.nodes.size(); ++a) {
                    const double sp = std::sin(glp.nodes[a]);
                    for (std::size_t b = 0; b < glc.nodes.size(); ++b) {
                        const double c = glc.nodes[b], s = std::sqrt(1.0 - c * c);
                        for (int j = 0; j < M; ++j) {
                            const double ph = 2.0 * kPi * (j + 0.5) / M;
                            w << std::cos(glp.nodes[a]), sp * c, sp * s * std::cos(ph),
                                sp * s * std::sin(ph);
                            acc += glp.weights[a] * sp * sp * glc.weights[b] * mono(w) *
                                   2.0 * kPi / M;
                        }
                    }
                }
            }
            return acc;
        };
        double worst = 0.0;
        for (int n : {2, 3, 4})
            for (const Row& row : rows) {
                if (n < row.min_n) continue;
                for (int m : {0, 1, 3}) {
                    const double table = moment_integral(n, m, row.pattern);
                    const double ref = gamma_fn(double(n + m)) * angular(n, row.expo);
                    const double scale = gamma_fn(double(n + m)) * unit_sphere_area(n);
                    worst = std::max(worst, std::abs(table - ref) / scale);
                }
            }
        r.passed = worst <= 1e-8;
        std::ostringstream os;
        os << "worst normalized gap " << worst << " over all rows, n in {2,3,4}";
        r.details = os.str();
        r.artifacts["worst_gap"] = worst;
    });
}

// 7. Subordination: weight identity, circle trace, S^2 fractional constant.
inline CriterionResult criterion_subordination() {
    return detail::timed(7, "subordination identity, circle trace, S2 constant",
                         [](CriterionResult& r) {
        bool ok = true;
        std::ostringstream os;

        // identity int w e^{-mu lambda} dmu = e^{-t sqrt(lambda)} at 1e-10
        double worst_id = 0.0;
        for (double t : {1.0, 2.0})
            for (double lam : {1.0, 4.0}) {
                double total = 0.0;
                const double a = std::log(t * t) - 42.0, b = std::log(t * t) + 46.0;
                const int panels = 44;
                for (int i = 0; i < panels; ++i)
                    total += adaptive_integrate(
                        [&](double s) {
                            const double mu = std::exp(s);
                            return subordination_weight(t, mu) * std::exp(-mu * lam) * mu;
                        },
                        a + (b - a) * i / panels, a + (b - a) * (i + 1) / panels, 1e-14);
                worst_id = std::max(worst_id, std::abs(total - std::exp(-t * std::sqrt(lam))) /
                                                  std::exp(-t * std::sqrt(lam)));
            }
        ok &= worst_id <= 1e-10;
        os << "weight identity gap " << worst_id;

        // circle subordinated trace vs coth(t/2) at 1e-10 on a 40-point grid
        LaplaceSpectrum c = circle_laplace_spectrum(1.0, 4000);
        double worst_c = 0.0;
        for (int i = 0; i < 40; ++i) {
            const double t = 0.05 * std::pow(60.0, i / 39.0);
            worst_c = std::max(worst_c, std::abs(subordinated_trace(c, t).value -
                                                 disk_trace_exact(t)) /
                                            disk_trace_exact(t));
        }
        ok &= worst_c <= 1e-10;
        os << "; circle trace gap " << worst_c;

        // S^2 fractional constant: the stated target is the transcribed
        // sheet's 2/3; the measured constant sits at the Gauss-curvature
        // reading 1/3, so this clause stays red and fully reported.
        LaplaceSpectrum s2 = sphere2_laplace_spectrum(1.0, 8000);
        HeatTraceSamples h;
        h.n = 2;
        for (int i = 0; i < 60; ++i) {
            const double t = 0.01 * std::pow(8.0, i / 59.0);
            h.t_grid.push_back(t);
            h.values.push_back(subordinated_trace(s2, t).value);
            h.tail_estimates.push_back(0.0);
        }
        ExpansionFit f = fit_expansion(h, 2, 4, false);
        const double constant = f.coefficients[2];
        const bool s2_ok = std::abs(constant - 2.0 / 3.0) < 1e-2;
        ok &= s2_ok;
        os << "; S2 constant fitted " << constant << " vs printed 2/3 (alt reading 1/3)";
        r.artifacts["s2_fractional"] = {{"fitted_constant", constant},
                                        {"printed_sheet", 2.0 / 3.0},
                                        {"gauss_convention", 1.0 / 3.0},
                                        {"clause_passed", s2_ok}};
        r.artifacts["weight_identity_gap"] = worst_id;
        r.artifacts["circle_gap"] = worst_c;
        r.details = os.str();
        r.passed = ok;
    });
}

// 8. Inequality harness with calibrated constants; under 5 minutes.
inline CriterionResult criterion_inequalities(std::uint64_t seed) {
    return detail::timed(8, "trace-inequality harness with calibrated constants",
                         [seed](CriterionResult& r) {
        const SphereContext ctx(32, 64);
        const SphereContext rlc_ctx(24, 48);
        const double A = sharp_sobolev_gradient_constant(2);
        const double B = calibrate_sobolev_B(ctx, A, 10000, seed);
        r.artifacts["A"] = A;
        r.artifacts["B"] = B;
        r.artifacts["calibration"] = {{"samples", 10000}, {"seed", seed}, {"safety", 1.5}};

        long pass_sob = 0, pass_nash = 0, pass_log = 0;
        for (int i = 0; i < 1000; ++i) {
            const BoundaryFunction f = random_boundary_function(32, seed + 100000 + i);
            pass_sob += functional_inequality_check(ctx, InequalityKind::SobolevTrace, f, A, B).holds;
            pass_nash += functional_inequality_check(ctx, InequalityKind::NashTrace, f, A, B).holds;
            bool log_ok = true;
            for (double eps : {0.1, 1.0, 10.0})
                log_ok &= functional_inequality_check(ctx, InequalityKind::LogSobolevTrace, f, A,
                                                      B, eps)
                              .holds;
            pass_log += log_ok;
        }

        std::vector<double> grid;
        for (int i = 0; i <= 200; ++i) grid.push_back(1e-3 * std::pow(1e4, i / 200.0));
        const bool kernel_ok = kernel_bound_check(detail::model_ball(2), A, B, grid).holds;

        long rlc_pass = 0, rlc_converged = 0;
        for (int i = 0; i < 100; ++i) {
            // strictly negative random band-limited q
            BoundaryFunction q = random_boundary_function(8, seed + 900000 + i);
            const Eigen::VectorXd v = rlc_ctx.values(q);
            q.coeffs *= 1.0 / v.cwiseAbs().maxCoeff();
            q.coeffs(0) -= 1.5 * std::sqrt(4.0 * kPi); // q <= -0.5 everywhere
            try {
                RlcResult res = rlc_count(rlc_ctx, q, A, B, 16);
                ++rlc_converged;
                rlc_pass += res.holds;
            } catch (const Error&) {
                // BandLimitTooLow counts as not converged
            }
        }

        r.passed = pass_sob == 1000 && pass_nash == 1000 && pass_log == 1000 && kernel_ok &&
                   rlc_converged == 100 && rlc_pass == 100;
        std::ostringstream os;
        os << "sobolev " << pass_sob << "/1000, nash " << pass_nash << "/1000, log-sobolev "
           << pass_log << "/1000, kernel bound " << (kernel_ok ? "holds" : "fails")
           << ", rlc " << rlc_pass << "/100 (converged " << rlc_converged << ")";
        r.details = os.str();
        r.artifacts["counts"] = {{"sobolev", pass_sob},
                                 {"nash", pass_nash},
                                 {"log_sobolev", pass_log},
                                 {"kernel_bound", kernel_ok},
                                 {"rlc_pass", rlc_pass},
                                 {"rlc_converged", rlc_converged}};
    }, 300.0);
}

// 9. Property suites: trace-grid shape, dilation covariance, flat-point
//    vanishing, determinism of the seeded artifacts.
inline CriterionResult criterion_properties(std::uint64_t seed) {
    return detail::timed(9, "property suites and determinism", [seed](CriterionResult& r) {
        bool ok = true;
        std::ostringstream os;

        // monotone + log-convex grids on disk and ball
        for (const DomainSpec& spec : {detail::model_disk(), detail::model_ball(2)}) {
            Spectrum s = spec.n == 1 ? steklov_closed_form(spec, 4001)
                                     : steklov_closed_form(spec, 4'000'000);
            HeatTraceSamples h = make_trace_samples(s, 2e-2, 1.0);
            for (std::size_t i = 1; i < h.values.size(); ++i)
                ok &= h.values[i] < h.values[i - 1];
            for (std::size_t i = 0; i < h.t_grid.size(); i += 6)
                for (std::size_t j = i + 1; j < h.t_grid.size(); j += 9) {
                    const double mid =
                        trace_value(s, 0.5 * (h.t_grid[i] + h.t_grid[j])).value;
                    ok &= mid * mid <= h.values[i] * h.values[j] * (1.0 + 1e-12);
                }
        }
        os << "trace grids monotone and log-convex";

        // dilation covariance of the numeric path at 1e-6
        {
            DomainSpec a = detail::model_star({{2, 0.1, 0.0}}, 1.0);
            DomainSpec b = detail::model_star({{2, 0.2, 0.0}}, 2.0);
            Spectrum sa = steklov_numeric(a, 48, 10);
            Spectrum sb = steklov_numeric(b, 48, 10);
            auto expand = [](const Spectrum& s) {
                std::vector<double> v;
                for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
                    for (int m = 0; m < s.multiplicities[i]; ++m)
                        v.push_back(s.eigenvalues[i]);
                return v;
            };
            const auto ea = expand(sa), eb = expand(sb);
            for (int i = 0; i < 10; ++i)
                ok &= std::abs(eb[i] - 0.5 * ea[i]) <= 1e-6 * std::max(1.0, ea[i]);
            os << "; dilation scaling at 1e-6";
        }

        // flat-point vanishing of a1..a3
        {
            SymbolPoint flat = SymbolPoint::flat(3);
            for (int m = 1; m <= 3; ++m) ok &= coefficient_density(flat, m) == 0.0;
            os << "; flat-point vanishing";
        }

        // determinism: the seeded artifact bundle is byte-identical across
        // runs, including the heavy numeric path behind the gap report
        {
            const auto bundle = [&]() {
                std::ostringstream b;
                Spectrum s = steklov_closed_form(detail::model_disk(), 64);
                b << to_csv(s);
                HeatTraceSamples h = make_trace_samples(s, 1.5, 8.0);
                b << to_csv(h);
                const SphereContext ctx(16, 32);
                const BoundaryFunction f = random_boundary_function(16, seed);
                b << to_json(functional_inequality_check(
                                 ctx, InequalityKind::SobolevTrace, f,
                                 sharp_sobolev_gradient_constant(2), 0.7))
                         .dump();
                b << criterion_a3_transcription(seed).artifacts.dump();
                return b.str();
            };
            ok &= bundle() == bundle();
            os << "; deterministic artifacts";
        }

        r.details = os.str();
        r.passed = ok;
    });
}

struct ValidateOutcome {
    std::vector<CriterionResult> results;
    bool all_passed() const {
        for (const auto& r : results)
            if (!r.passed) return false;
        return true;
    }
    // timings are deliberately left out: identical config + seed must give
    // byte-identical JSON artifacts
    json to_report(std::uint64_t seed) const {
        json j;
        j["seed"] = seed;
        j["criteria"] = json::array();
        for (const auto& r : results)
            j["criteria"].push_back({{"id", r.id},
                                     {"name", r.name},
                                     {"passed", r.passed},
                                     {"details", r.details},
                                     {"artifacts", r.artifacts}});
        j["all_passed"] = all_passed();
        return j;
    }
};

inline ValidateOutcome run_acceptance_suite(std::uint64_t seed) {
    ValidateOutcome out;
    out.results.push_back(criterion_disk_dtn());
    out.results.push_back(criterion_weyl());
    out.results.push_back(criterion_heat_coefficients());
    out.results.push_back(criterion_symbol_oracle_low(seed));
    out.results.push_back(criterion_a3_transcription(seed));
    out.results.push_back(criterion_moment_table());
    out.results.push_back(criterion_subordination());
    out.results.push_back(criterion_inequalities(seed));
    out.results.push_back(criterion_properties(seed));
    return out;
}

} // namespace steklov
