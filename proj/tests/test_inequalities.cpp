#include <catch2/catch_amalgamated.hpp>

#include <steklov/inequalities.hpp>
#include <steklov/spectrum.hpp>

using namespace steklov;
using Catch::Approx;

namespace {

const SphereContext& ctx() {
    static SphereContext c(32, 64);
    return c;
}

const SphereContext& rlc_ctx() {
    static SphereContext c(24, 48);
    return c;
}

BoundaryFunction harmonic_delta(int L, int l, int m, double value = 1.0) {
    BoundaryFunction f;
    f.basis = BoundaryBasis::RealSphericalHarmonics;
    f.band_limit = L;
    f.coeffs = Eigen::VectorXd::Zero(harmonics_count(L));
    f.coeffs(harmonic_index(l, m)) = value;
    return f;
}

} // namespace

TEST_CASE("real harmonics are orthonormal on the grid", "[inequalities]") {
    SphereGrid g = sphere_grid(24, 48);
    Eigen::MatrixXd Y = harmonic_basis(8, g);
    Eigen::MatrixXd gram = Y * g.weights.asDiagonal() * Y.transpose();
    CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).norm() < 1e-11);
}

TEST_CASE("extension energy", "[inequalities]") {
    // constant function: zero
    BoundaryFunction c0 = harmonic_delta(4, 0, 0, 3.0);
    CHECK(extension_energy(c0) == 0.0);

    // circle, f = cos(theta): energy pi
    BoundaryFunction f;
    f.basis = BoundaryBasis::Fourier;
    f.band_limit = 2;
    f.coeffs = Eigen::VectorXd::Zero(5);
    f.coeffs(1) = 1.0; // a_1
    CHECK(extension_energy(f) == Approx(kPi).epsilon(1e-15));

    // S^2, orthonormal Y_10: energy l = 1
    CHECK(extension_energy(harmonic_delta(4, 1, 0)) == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("extension energy ties to the DtN quadratic form", "[inequalities]") {
    // disk: energy pi sum k (a_k^2 + b_k^2) must equal <Lambda f, f>
    DomainSpec d;
    d.kind = DomainKind::Disk;
    d = make_domain(d);
    DtnOperator op = assemble_dtn(d, 16);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(op.matrix.rows());
    // f = cos(theta) + 0.3 sin(2 theta): orthonormal coefficients sqrt(pi) x
    c(1) = std::sqrt(kPi);
    c(4) = 0.3 * std::sqrt(kPi);
    const double form = c.dot(op.matrix * c);
    BoundaryFunction f;
    f.basis = BoundaryBasis::Fourier;
    f.band_limit = 2;
    f.coeffs = Eigen::VectorXd::Zero(5);
    f.coeffs(1) = 1.0;
    f.coeffs(4) = 0.3;
    CHECK(form == Approx(extension_energy(f)).epsilon(1e-10));
}

TEST_CASE("Sobolev inequality on constants pins B", "[inequalities]") {
    const double A = sharp_sobolev_gradient_constant(2);
    CHECK(A == Approx(1.0 / std::sqrt(kPi)).epsilon(1e-13));
    BoundaryFunction c = harmonic_delta(2, 0, 0, 0.7 / std::sqrt(4.0 * kPi));
    // lhs = 2 sqrt(pi) c^2, rhs = 4 pi B c^2: holds iff B >= 1/(2 sqrt(pi))
    const double Bcrit = 1.0 / (2.0 * std::sqrt(kPi));
    InequalityReport ok =
        functional_inequality_check(ctx(), InequalityKind::SobolevTrace, c, A, 1.01 * Bcrit);
    CHECK(ok.holds);
    InequalityReport bad =
        functional_inequality_check(ctx(), InequalityKind::SobolevTrace, c, A, 0.99 * Bcrit);
    CHECK_FALSE(bad.holds);
    CHECK(ok.margin > 0.0);
    CHECK(bad.margin < 0.0);
}

TEST_CASE("log-Sobolev beta simplifies at eps = nA/2", "[inequalities]") {
    const int n = 2;
    const double A = sharp_sobolev_gradient_constant(n), B = 0.9;
    // constant function: lhs = ||v||^2 ln|c|, rhs = beta ||v||^2 + ||v||^2 ln||v||
    const double cval = 2.0;
    BoundaryFunction c = harmonic_delta(2, 0, 0, cval * std::sqrt(4.0 * kPi));
    InequalityReport r = functional_inequality_check(ctx(), InequalityKind::LogSobolevTrace, c,
                                                     A, B, 0.5 * n * A);
    const double l2sq = 4.0 * kPi * cval * cval;
    const double beta_expected = 0.5 * n * (B - 1.0);
    CHECK(r.lhs == Approx(l2sq * std::log(cval)).epsilon(1e-12));
    CHECK(r.rhs ==
          Approx(beta_expected * l2sq + l2sq * std::log(std::sqrt(l2sq))).epsilon(1e-12));
    CHECK_THROWS_AS(
        functional_inequality_check(ctx(), InequalityKind::LogSobolevTrace, c, A, B), Error);
}

TEST_CASE("Nash inequality on constants", "[inequalities]") {
    const double A = sharp_sobolev_gradient_constant(2);
    const double Bcrit = 1.0 / std::sqrt(4.0 * kPi);
    BoundaryFunction c = harmonic_delta(2, 0, 0, 1.3 * std::sqrt(4.0 * kPi));
    CHECK(functional_inequality_check(ctx(), InequalityKind::NashTrace, c, A, 1.01 * Bcrit).holds);
    CHECK_FALSE(
        functional_inequality_check(ctx(), InequalityKind::NashTrace, c, A, 0.99 * Bcrit).holds);
}

TEST_CASE("scaling consistency of the Sobolev report", "[inequalities]") {
    const double A = sharp_sobolev_gradient_constant(2), B = 0.5;
    BoundaryFunction f = random_boundary_function(16, 42);
    InequalityReport base = functional_inequality_check(ctx(), InequalityKind::SobolevTrace, f, A, B);
    for (double s : {0.5, 3.0}) {
        BoundaryFunction g = f;
        g.coeffs *= s;
        InequalityReport r =
            functional_inequality_check(ctx(), InequalityKind::SobolevTrace, g, A, B);
        CHECK(r.lhs == Approx(s * s * base.lhs).epsilon(1e-11));
        CHECK(r.rhs == Approx(s * s * base.rhs).epsilon(1e-11));
        CHECK(r.margin == Approx(s * s * base.margin).epsilon(1e-10));
    }
}

TEST_CASE("calibrated constants make the random harness pass", "[inequalities]") {
    const double A = sharp_sobolev_gradient_constant(2);
    const double B = calibrate_sobolev_B(ctx(), A, 400, 20240809);
    CHECK(B > 0.0);
    for (int i = 0; i < 60; ++i) {
        BoundaryFunction f = random_boundary_function(32, 555000 + i);
        CHECK(functional_inequality_check(ctx(), InequalityKind::SobolevTrace, f, A, B).holds);
        CHECK(functional_inequality_check(ctx(), InequalityKind::NashTrace, f, A, B).holds);
        for (double eps : {0.1, 1.0, 10.0})
            CHECK(functional_inequality_check(ctx(), InequalityKind::LogSobolevTrace, f, A, B, eps)
                      .holds);
    }
}

TEST_CASE("kernel bound on the unit ball", "[inequalities]") {
    DomainSpec b;
    b.kind = DomainKind::Ball;
    b.n = 2;
    b = make_domain(b);
    std::vector<double> grid;
    for (int i = 0; i <= 160; ++i) grid.push_back(1e-3 * std::pow(1e4, i / 160.0));
    const double A = sharp_sobolev_gradient_constant(2);
    InequalityReport ok = kernel_bound_check(b, A, 0.6, grid);
    CHECK(ok.holds);
    // A = B = 1e-6 fails at small t with a witness
    InequalityReport bad = kernel_bound_check(b, 1e-6, 1e-6, grid);
    CHECK_FALSE(bad.holds);
    CHECK(bad.witness.find("violated at t") != std::string::npos);
}

TEST_CASE("beta sweep approaches the counting asymptote", "[inequalities][sweep]") {
    const SphereContext ctx(28, 56);
    const double A = sharp_sobolev_gradient_constant(2), B = 0.5;
    BoundaryFunction q = random_boundary_function(6, 1234);
    q.coeffs *= 0.25 / ctx.values(q).cwiseAbs().maxCoeff();
    q.coeffs(0) -= 0.3 * std::sqrt(4.0 * kPi);
    const BetaSweep sweep = rlc_beta_sweep(ctx, q, A, B, 24, {2.0, 12.0});
    REQUIRE(sweep.rows.size() == 2);
    // the count is a staircase in beta, so compare a genuinely coarse beta
    // against the far end rather than asking for monotone decay
    const double gap2 = std::abs(sweep.rows[0].scaled_count - sweep.predicted_limit);
    const double gap12 = std::abs(sweep.rows[1].scaled_count - sweep.predicted_limit);
    CHECK(gap12 < gap2);
    CHECK(gap12 < 0.35 * sweep.predicted_limit);
    const std::string csv = to_csv(sweep);
    CHECK(csv.rfind("beta,count,scaled_count,predicted_limit\n", 0) == 0);
}

TEST_CASE("rlc counts", "[inequalities]") {
    const double A = sharp_sobolev_gradient_constant(2), B = 0.6;

    // q = 0: I_q(0) = 0, bound 0, holds
    BoundaryFunction q0 = harmonic_delta(8, 0, 0, 0.0);
    RlcResult r0 = rlc_count(rlc_ctx(), q0, A, B, 12);
    CHECK(r0.count == 0);
    CHECK(r0.bound == 0.0);
    CHECK(r0.holds);

    // constant q = -c: diagonal case, count = sum (2l+1) over A l + B - c <= 0
    const double cval = 2.5;
    BoundaryFunction qc = harmonic_delta(8, 0, 0, -cval * std::sqrt(4.0 * kPi));
    RlcResult rc = rlc_count(rlc_ctx(), qc, A, B, 16);
    long expect = 0;
    for (int l = 0; l <= 16; ++l)
        if (A * l + B - cval <= 0.0) expect += 2 * l + 1;
    CHECK(rc.count == expect);
    CHECK(rc.holds);

    // monotonicity: pointwise q1 <= q2 implies I_{q1} >= I_{q2}
    BoundaryFunction q1 = random_boundary_function(8, 99);
    Eigen::VectorXd vals = rlc_ctx().values(q1);
    const double maxv = vals.cwiseAbs().maxCoeff();
    BoundaryFunction qa = q1;
    qa.coeffs *= 1.0 / maxv; // |q| <= ~1
    qa.coeffs(0) -= 2.2 * std::sqrt(4.0 * kPi); // shift well below zero
    BoundaryFunction qb = qa;
    qb.coeffs(0) += 0.8 * std::sqrt(4.0 * kPi); // qb = qa + 0.8 >= qa
    RlcResult ra = rlc_count(rlc_ctx(), qa, A, B, 16);
    RlcResult rb = rlc_count(rlc_ctx(), qb, A, B, 16);
    CHECK(ra.count >= rb.count);
    CHECK(ra.holds);
    CHECK(rb.holds);
}
