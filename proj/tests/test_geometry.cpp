#include <catch2/catch_amalgamated.hpp>

#include <steklov/geometry.hpp>

using namespace steklov;
using Catch::Approx;

namespace {

DomainSpec disk(double R = 1.0) {
    DomainSpec s;
    s.kind = DomainKind::Disk;
    s.n = 1;
    s.radius = R;
    s.label = "disk";
    return make_domain(s);
}

DomainSpec ball(int n, double R = 1.0) {
    DomainSpec s;
    s.kind = DomainKind::Ball;
    s.n = n;
    s.radius = R;
    s.label = "ball";
    return make_domain(s);
}

DomainSpec star(std::vector<RadialCoeff> coeffs) {
    DomainSpec s;
    s.kind = DomainKind::StarPlanar;
    s.n = 1;
    s.radius = 1.0;
    s.radial_coeffs = std::move(coeffs);
    s.label = "star";
    return make_domain(s);
}

} // namespace

TEST_CASE("make_domain closed-form boundary volumes", "[geometry]") {
    CHECK(disk().boundary_volume == Approx(2.0 * kPi).epsilon(1e-15));
    CHECK(ball(2).boundary_volume == Approx(4.0 * kPi).epsilon(1e-15));
    CHECK(ball(3).boundary_volume == Approx(2.0 * kPi * kPi).epsilon(1e-15));
    DomainSpec a;
    a.kind = DomainKind::Annulus;
    a.inner_radius = 0.5;
    CHECK(make_domain(a).boundary_volume == Approx(2.0 * kPi * 1.5).epsilon(1e-15));
}

TEST_CASE("make_domain rejects bad input", "[geometry]") {
    DomainSpec s;
    s.kind = DomainKind::Disk;
    s.radius = -1.0;
    CHECK_THROWS_AS(make_domain(s), Error);

    // r(theta) = -1 everywhere
    DomainSpec st;
    st.kind = DomainKind::StarPlanar;
    st.radius = -1.0;
    CHECK_THROWS_AS(make_domain(st), Error);
    st.radius = 0.2;
    st.radial_coeffs = {{1, 0.5, 0.0}}; // dips negative
    CHECK_THROWS_AS(make_domain(st), Error);

    DomainSpec b;
    b.kind = DomainKind::Ball;
    b.n = 1;
    CHECK_THROWS_AS(make_domain(b), Error);
}

TEST_CASE("quadrature weights reproduce boundary volume", "[geometry]") {
    for (const auto& spec : {disk(), disk(2.5), ball(2), ball(3, 1.3)}) {
        CurvatureField f = curvature_field(spec, 400);
        std::vector<double> ones(f.nodes, 1.0);
        CHECK(boundary_integrate(f, ones) ==
              Approx(spec.boundary_volume).epsilon(1e-10));
    }
    // Annulus: both circles
    DomainSpec a;
    a.kind = DomainKind::Annulus;
    a.inner_radius = 0.5;
    a = make_domain(a);
    CurvatureField f = curvature_field(a, 64);
    std::vector<double> ones(f.nodes, 1.0);
    CHECK(boundary_integrate(f, ones) == Approx(a.boundary_volume).epsilon(1e-12));
}

TEST_CASE("model curvature values", "[geometry]") {
    CurvatureField f = curvature_field(disk(2.0), 32);
    for (int i = 0; i < f.nodes; ++i) CHECK(f.kappa_at(i, 0) == Approx(0.5).epsilon(1e-15));

    CurvatureField s2 = curvature_field(ball(2), 200);
    for (int i = 0; i < 5; ++i) {
        CHECK(s2.kappa_at(i, 0) == Approx(1.0));
        CHECK(s2.kappa_at(i, 1) == Approx(1.0));
        CHECK(s2.scalar_boundary[i] == Approx(2.0));
        CHECK(s2.scalar_ambient[i] == 0.0);
    }
    // f = sum kappa on unit S^2 integrates to 8 pi
    std::vector<double> mean_curv(s2.nodes);
    for (int i = 0; i < s2.nodes; ++i) mean_curv[i] = s2.trace_weingarten(i);
    CHECK(boundary_integrate(s2, mean_curv) == Approx(8.0 * kPi).epsilon(1e-10));
}

TEST_CASE("round sphere boundary matches the ball boundary field", "[geometry]") {
    DomainSpec r;
    r.kind = DomainKind::RoundSphereBoundary;
    r.n = 2;
    r.radius = 1.4;
    r = make_domain(r);
    DomainSpec b = ball(2, 1.4);
    CurvatureField fr = curvature_field(r, 200);
    CurvatureField fb = curvature_field(b, 200);
    CHECK(fr.weights == fb.weights);
    CHECK(fr.kappa == fb.kappa);
    CHECK(fr.scalar_boundary == fb.scalar_boundary);
}

TEST_CASE("star-planar curvature against finite differences", "[geometry]") {
    DomainSpec sp = star({{3, 0.3, 0.0}}); // r = 1 + 0.3 cos(3 theta)
    const int m = 512;
    CurvatureField f = curvature_field(sp, m);
    // second-order finite-difference curvature oracle on the parametrized curve
    const double h = 1e-5;
    for (int i = 0; i < m; i += 37) {
        const double t = 2.0 * kPi * i / m;
        auto xy = [&](double tt) {
            const double r = sp.radial(tt);
            return std::array<double, 2>{r * std::cos(tt), r * std::sin(tt)};
        };
        const auto pm = xy(t - h), p0 = xy(t), pp = xy(t + h);
        const double x1 = (pp[0] - pm[0]) / (2 * h), y1 = (pp[1] - pm[1]) / (2 * h);
        const double x2 = (pp[0] - 2 * p0[0] + pm[0]) / (h * h);
        const double y2 = (pp[1] - 2 * p0[1] + pm[1]) / (h * h);
        const double kap = (x1 * y2 - y1 * x2) / std::pow(x1 * x1 + y1 * y1, 1.5);
        CHECK(f.kappa_at(i, 0) == Approx(kap).margin(1e-6));
    }
}

TEST_CASE("spectral convergence of the boundary quadrature", "[geometry]") {
    DomainSpec sp = star({{3, 0.3, 0.0}});
    auto integral = [&](int m) {
        CurvatureField f = curvature_field(sp, m);
        std::vector<double> v(f.nodes);
        for (int i = 0; i < f.nodes; ++i) v[i] = f.trace_weingarten(i);
        return boundary_integrate(f, v);
    };
    const double a = integral(256), b = integral(512);
    CHECK(std::abs(b - a) / std::abs(b) < 1e-8);
}

TEST_CASE("Gauss relation R_boundary = Q1/2 nodewise for flat ambient", "[geometry]") {
    for (const auto& spec : {ball(2), ball(3, 0.7)}) {
        CurvatureField f = curvature_field(spec, 200);
        for (int i = 0; i < f.nodes; i += 97)
            CHECK(f.scalar_boundary[i] == Approx(0.5 * f.q1(i)).margin(1e-14));
    }
}

TEST_CASE("Q accessors agree with their kappa definitions", "[geometry]") {
    CurvatureField f = curvature_field(ball(3, 2.0), 64);
    const double k = 0.5;
    CHECK(f.q1(0) == Approx(4.0 * 3.0 * k * k).epsilon(1e-14));   // 3 pairs
    CHECK(f.q2(0) == Approx(-8.0 * k * k * k).epsilon(1e-14));    // 1 triple
    CHECK(f.q3(0) == Approx(4.0 * 6.0 * k * (0.0 - k * k)).epsilon(1e-14)); // 6 ordered pairs
}

TEST_CASE("boundary_integrate input validation", "[geometry]") {
    CurvatureField f = curvature_field(disk(), 16);
    std::vector<double> wrong(f.nodes + 1, 1.0);
    CHECK_THROWS_AS(boundary_integrate(f, wrong), Error);
    std::vector<double> zero(f.nodes, 0.0);
    CHECK(boundary_integrate(f, zero) == 0.0);
}

TEST_CASE("curvature field CSV round trip, including curved ambient data", "[geometry]") {
    CurvatureField f = curvature_field(ball(2), 64);
    // inject curved-ambient entries the way a CustomField user would
    for (int i = 0; i < f.nodes; ++i) {
        f.scalar_ambient[i] = 0.25;
        f.ricci_ambient_normal[std::size_t(i) * f.n] = 0.125;
        f.covderiv_normal[i] = -0.5;
    }
    CurvatureField back = curvature_field_from_csv(to_csv(f));
    CHECK(back.n == f.n);
    CHECK(back.nodes == f.nodes);
    CHECK(back.weights == f.weights);
    CHECK(back.kappa == f.kappa);
    CHECK(back.scalar_ambient == f.scalar_ambient);
    CHECK(back.ricci_ambient_normal == f.ricci_ambient_normal);
    CHECK(back.covderiv_normal == f.covderiv_normal);

    CHECK_THROWS_AS(curvature_field_from_csv("nope\n"), Error);
    CHECK_THROWS_AS(curvature_field_from_csv("node_index,weight,kappa_1\n0,1.0\n"), Error);
}

TEST_CASE("domain JSON round trip and unknown-key rejection", "[geometry]") {
    DomainSpec sp = star({{2, 0.1, 0.05}});
    const json j = to_json(sp);
    DomainSpec back = domain_from_json(j);
    CHECK(back.kind == DomainKind::StarPlanar);
    CHECK(back.radial(1.234) == Approx(sp.radial(1.234)).epsilon(1e-15));

    json bad = j;
    bad["surprise"] = 1;
    CHECK_THROWS_AS(domain_from_json(bad), Error);
}
