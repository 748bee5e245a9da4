#include <catch2/catch_amalgamated.hpp>

#include <steklov/spectrum.hpp>

using namespace steklov;
using Catch::Approx;

namespace {

DomainSpec disk(double R = 1.0) {
    DomainSpec s;
    s.kind = DomainKind::Disk;
    s.radius = R;
    return make_domain(s);
}

DomainSpec ball(int n, double R = 1.0) {
    DomainSpec s;
    s.kind = DomainKind::Ball;
    s.n = n;
    s.radius = R;
    return make_domain(s);
}

DomainSpec annulus(double rho) {
    DomainSpec s;
    s.kind = DomainKind::Annulus;
    s.inner_radius = rho;
    return make_domain(s);
}

DomainSpec star(std::vector<RadialCoeff> coeffs, double c0 = 1.0) {
    DomainSpec s;
    s.kind = DomainKind::StarPlanar;
    s.radius = c0;
    s.radial_coeffs = std::move(coeffs);
    return make_domain(s);
}

std::vector<double> expanded(const Spectrum& s) {
    std::vector<double> out;
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
        for (int m = 0; m < s.multiplicities[i]; ++m) out.push_back(s.eigenvalues[i]);
    return out;
}

} // namespace

TEST_CASE("closed-form disk spectrum", "[spectrum]") {
    Spectrum s = steklov_closed_form(disk(), 5);
    CHECK(expanded(s) == std::vector<double>{0, 1, 1, 2, 2});
    Spectrum h = steklov_closed_form(disk(2.0), 3);
    CHECK(expanded(h) == std::vector<double>{0, 0.5, 0.5});
    CHECK(s.eigenvalues.front() == 0.0);
    CHECK(s.multiplicities.front() == 1);
}

TEST_CASE("closed-form ball spectra", "[spectrum]") {
    Spectrum s2 = steklov_closed_form(ball(2), 9);
    CHECK(expanded(s2) == std::vector<double>{0, 1, 1, 1, 2, 2, 2, 2, 2});
    Spectrum s3 = steklov_closed_form(ball(3), 14);
    // multiplicities (l+1)^2: 1, 4, 9
    CHECK(s3.multiplicities == std::vector<int>{1, 4, 9});
    CHECK(s3.eigenvalues == std::vector<double>{0, 1, 2});
}

TEST_CASE("annulus spectrum satisfies the determinant condition", "[spectrum]") {
  for (const double rho : {0.3, 0.5, 0.8}) {
    Spectrum s = steklov_closed_form(annulus(rho), 12);
    CHECK(s.eigenvalues.front() == 0.0);
    CHECK(s.multiplicities.front() == 1);
    // independent oracle: u = a r^k + b r^{-k} with outward-normal Steklov
    // conditions on both circles; lambda must zero the 2x2 determinant
    auto det = [&](double lam, int k) {
        const double a11 = k - lam, a12 = -k - lam;
        const double a21 = -k * std::pow(rho, k - 1) - lam * std::pow(rho, k);
        const double a22 = k * std::pow(rho, -k - 1) - lam * std::pow(rho, -k);
        return a11 * a22 - a12 * a21;
    };
    // k = 0 pair value -(1 + 1/rho)/log(rho) must appear in the spectrum
    const double k0 = -(1.0 + 1.0 / rho) / std::log(rho);
    bool k0_present = false;
    int checked = 0;
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
        const double lam = s.eigenvalues[i];
        if (lam == 0.0) continue;
        if (std::abs(lam - k0) <= 1e-13 * k0) {
            k0_present = true;
            ++checked;
            continue;
        }
        bool zero = false;
        for (int k = 1; k <= 12; ++k)
            if (std::abs(det(lam, k)) < 1e-9 * (1.0 + lam * lam)) zero = true;
        CHECK(zero);
        ++checked;
    }
    CHECK((k0_present || k0 > s.eigenvalues.back()));
    CHECK(checked >= 4);
  }
}

TEST_CASE("numeric DtN reproduces the disk spectrum", "[spectrum]") {
    Spectrum s = steklov_numeric(disk(), 32, 20);
    const auto ev = expanded(s);
    for (int i = 0; i < 20; ++i) {
        const double expect = (i + 1) / 2; // 0,1,1,2,2,...
        CHECK(std::abs(ev[i] - expect) <= 1e-8 * std::max(1.0, expect));
    }
    CHECK(s.accuracy < 1e-8);
}

TEST_CASE("DtN matrix is symmetric and annihilates constants", "[spectrum]") {
    DomainSpec sp = star({{2, 0.1, 0.0}});
    DtnOperator op = assemble_dtn(sp, 32);
    CHECK(op.asymmetry < 1e-8);

    // coefficients of the constant boundary function 1 in the e_a/sqrt(J) basis
    const int B = 2 * op.modes + 1;
    const int M = 4096;
    Eigen::VectorXd cvec = Eigen::VectorXd::Zero(B);
    for (int i = 0; i < M; ++i) {
        const double t = 2.0 * kPi * i / M;
        const double r = sp.radial(t), r1 = sp.radial_d1(t);
        const double sj = std::sqrt(std::sqrt(r * r + r1 * r1));
        const double w = 2.0 * kPi / M;
        cvec(0) += w * sj / std::sqrt(2.0 * kPi);
        for (int k = 1; k <= op.modes; ++k) {
            cvec(2 * k - 1) += w * sj * std::cos(k * t) / std::sqrt(kPi);
            cvec(2 * k) += w * sj * std::sin(k * t) / std::sqrt(kPi);
        }
    }
    CHECK((op.matrix * cvec).norm() / cvec.norm() < 1e-8);

    // positive semidefinite after symmetrization
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.matrix);
    CHECK(es.eigenvalues().minCoeff() >= -1e-8 * es.eigenvalues().maxCoeff());
}

TEST_CASE("numeric path self-converges on a star domain", "[spectrum]") {
    DomainSpec sp = star({{2, 0.1, 0.0}});
    Spectrum s = steklov_numeric(sp, 64, 10, 1e-6);
    CHECK(s.accuracy <= 1e-6);
    CHECK(s.eigenvalues.front() == 0.0);
    CHECK(s.multiplicities.front() == 1);
}

TEST_CASE("numeric path rejects what it cannot solve", "[spectrum]") {
    CHECK_THROWS_AS(steklov_numeric(annulus(0.5), 32, 8), Error);
    CHECK_THROWS_AS(steklov_numeric(disk(), 32, 64), Error); // K > N_modes
}

TEST_CASE("dilation covariance", "[spectrum]") {
    // closed form: exact
    const auto d1 = expanded(steklov_closed_form(disk(1.0), 9));
    const auto d2 = expanded(steklov_closed_form(disk(2.0), 9));
    for (std::size_t i = 0; i < d1.size(); ++i) CHECK(d2[i] == Approx(d1[i] / 2.0).margin(1e-15));

    // numeric: scale one star domain by s = 2
    DomainSpec a = star({{2, 0.1, 0.0}}, 1.0);
    DomainSpec b = star({{2, 0.2, 0.0}}, 2.0); // all radii doubled
    const auto ea = expanded(steklov_numeric(a, 48, 10));
    const auto eb = expanded(steklov_numeric(b, 48, 10));
    for (int i = 0; i < 10; ++i) CHECK(eb[i] == Approx(ea[i] / 2.0).margin(1e-6));
}

TEST_CASE("multiplicity grouping on the numeric disk", "[spectrum]") {
    Spectrum s = steklov_numeric(disk(), 32, 9);
    CHECK(s.eigenvalues.size() == 5);
    CHECK(s.multiplicities == std::vector<int>{1, 2, 2, 2, 2});
}

TEST_CASE("Weyl counting check, disk and ball", "[spectrum]") {
    // disk: N(tau) ~ omega_1 vol tau / (2 pi) = 2 tau
    Spectrum d = steklov_closed_form(disk(), 1000);
    // ball n = 2: N(tau) ~ omega_2 vol tau^2/(2pi)^2 = tau^2
    Spectrum b = steklov_closed_form(ball(2), 20000);
    for (const Spectrum* s : {&d, &b}) {
        const int n = s->n;
        const double pref = unit_ball_volume(n) * s->boundary_volume /
                            std::pow(2.0 * kPi, n);
        bool found = false;
        for (double tau = 1.0; tau <= s->max_eigenvalue(); tau *= 1.5) {
            const long N = s->counting(tau);
            if (N < 200) continue;
            const double ratio = double(N) / (pref * std::pow(tau, n));
            if (std::abs(ratio - 1.0) <= 0.05) {
                found = true;
                break;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("spectrum CSV round trip", "[spectrum]") {
    Spectrum s = steklov_closed_form(ball(2), 9);
    Spectrum back = spectrum_from_csv(to_csv(s));
    CHECK(back.eigenvalues == s.eigenvalues);
    CHECK(back.multiplicities == s.multiplicities);
    CHECK(back.n == s.n);
    CHECK(back.boundary_volume == Approx(s.boundary_volume));
}
