#pragma once
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "steklov/errors.hpp"
#include "steklov/io.hpp"
#include "steklov/quadrature.hpp"
#include "steklov/special.hpp"

// Model domains and the boundary quadrature / curvature data every
// downstream formula consumes.
//
// Conventions. The boundary has dimension n, the ambient space dimension
// n + 1. Principal curvatures are taken with respect to the inward unit
// normal of the domain, so a round sphere of radius R has kappa_j = +1/R.
// For Euclidean-embedded model domains every ambient curvature entry is
// identically zero; nonzero ambient data enters only through CustomField.

namespace steklov {

enum class DomainKind { Disk, Annulus, StarPlanar, Ball, RoundSphereBoundary, CustomField };

inline const char* to_string(DomainKind k) {
    switch (k) {
        case DomainKind::Disk: return "Disk";
        case DomainKind::Annulus: return "Annulus";
        case DomainKind::StarPlanar: return "StarPlanar";
        case DomainKind::Ball: return "Ball";
        case DomainKind::RoundSphereBoundary: return "RoundSphereBoundary";
        case DomainKind::CustomField: return "CustomField";
    }
    return "?";
}

inline DomainKind domain_kind_from_string(const std::string& s) {
    if (s == "Disk") return DomainKind::Disk;
    if (s == "Annulus") return DomainKind::Annulus;
    if (s == "StarPlanar") return DomainKind::StarPlanar;
    if (s == "Ball") return DomainKind::Ball;
    if (s == "RoundSphereBoundary") return DomainKind::RoundSphereBoundary;
    if (s == "CustomField") return DomainKind::CustomField;
    fail("ConfigError", "unknown domain kind '" + s + "'");
}

// One Fourier term of a star-shaped radial function: a cos(k t) + b sin(k t).
struct RadialCoeff {
    int k = 0;
    double a = 0.0;
    double b = 0.0;
};

struct DomainSpec {
    DomainKind kind = DomainKind::Disk;
    int n = 1;             // boundary dimension; ambient is n + 1
    double radius = 1.0;   // outer radius
    double inner_radius = 0.0; // Annulus only, in (0, 1) relative to radius
    std::vector<RadialCoeff> radial_coeffs; // StarPlanar only
    std::string label;

    // Filled by make_domain for model domains (closed form), else NaN.
    double boundary_volume = std::numeric_limits<double>::quiet_NaN();

    // StarPlanar radial function and derivatives.
    double radial(double t) const {
        double r = radius;
        for (const auto& c : radial_coeffs)
            r += c.a * std::cos(c.k * t) + c.b * std::sin(c.k * t);
        return r;
    }
    double radial_d1(double t) const {
        double r = 0.0;
        for (const auto& c : radial_coeffs)
            r += c.k * (-c.a * std::sin(c.k * t) + c.b * std::cos(c.k * t));
        return r;
    }
    double radial_d2(double t) const {
        double r = 0.0;
        for (const auto& c : radial_coeffs)
            r += -c.k * c.k * (c.a * std::cos(c.k * t) + c.b * std::sin(c.k * t));
        return r;
    }
};

// Boundary quadrature nodes with all curvature data the heat coefficients
// read. Arrays are node-major; per-node vector entries (kappa, ricci_*) are
// stored contiguously with stride n.
struct CurvatureField {
    int n = 1;
    int nodes = 0;
    std::vector<double> weights;              // w_i > 0, sums to vol(boundary)
    std::vector<double> kappa;                // principal curvatures, n per node
    std::vector<double> scalar_boundary;      // R_boundary per node
    std::vector<double> scalar_ambient;       // R_ambient per node
    std::vector<double> ricci_ambient_normal; // R~_{j(n+1)j(n+1)}, n per node
    std::vector<double> ricci_boundary;       // R_jj, n per node
    std::vector<double> ricci_ambient_tangent;// R~_jj, n per node
    std::vector<double> covderiv_normal;      // sum_j R~_{j(n+1)j(n+1),(n+1)} per node
    std::string label;

    double kappa_at(int i, int j) const { return kappa[std::size_t(i) * n + j]; }

    double trace_weingarten(int i) const {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += kappa_at(i, j);
        return s;
    }
    double sum_kappa_sq(int i) const {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += kappa_at(i, j) * kappa_at(i, j);
        return s;
    }
    double sum_kappa_cu(int i) const {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += std::pow(kappa_at(i, j), 3);
        return s;
    }
    // Q1 = 4 sum_{j<k} kappa_j kappa_k
    double q1(int i) const {
        double s = 0.0;
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k) s += kappa_at(i, j) * kappa_at(i, k);
        return 4.0 * s;
    }
    // Q2 = -8 sum_{j<k<l} kappa_j kappa_k kappa_l
    double q2(int i) const {
        double s = 0.0;
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int l = k + 1; l < n; ++l)
                    s += kappa_at(i, j) * kappa_at(i, k) * kappa_at(i, l);
        return -8.0 * s;
    }
    // Q3 in principal-curvature coordinates (A_nu diagonal):
    //   Q3 = sum_{j != k} (-2 kappa_j)(-2 R~_{k(n+1)k(n+1)} + 2 kappa_k^2)
    double q3(int i) const {
        double s = 0.0;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (j == k) continue;
                const double rk = ricci_ambient_normal[std::size_t(i) * n + k];
                s += (-2.0 * kappa_at(i, j)) * (-2.0 * rk + 2.0 * kappa_at(i, k) * kappa_at(i, k));
            }
        return s;
    }
};

// ---------------------------------------------------------------------------
// make_domain

inline DomainSpec make_domain(DomainSpec spec) {
    if (!(spec.radius > 0.0)) fail("NonPositiveRadius", "radius must be > 0");
    switch (spec.kind) {
        case DomainKind::Disk:
            if (spec.n != 1) fail("UnsupportedDimension", "Disk has boundary dimension 1");
            spec.boundary_volume = 2.0 * kPi * spec.radius;
            break;
        case DomainKind::Annulus:
            if (spec.n != 1) fail("UnsupportedDimension", "Annulus has boundary dimension 1");
            if (!(spec.inner_radius > 0.0 && spec.inner_radius < 1.0))
                fail("NonPositiveRadius", "Annulus needs inner_radius in (0,1)");
            spec.boundary_volume = 2.0 * kPi * spec.radius * (1.0 + spec.inner_radius);
            break;
        case DomainKind::StarPlanar: {
            if (spec.n != 1) fail("UnsupportedDimension", "StarPlanar has boundary dimension 1");
            // r(theta) > 0 checked on a dense sample; arc length by the same
            // trapezoid sweep (spectrally exact for analytic radial data)
            const int m = 4096;
            double len = 0.0;
            for (int i = 0; i < m; ++i) {
                const double t = 2.0 * kPi * i / m;
                const double r = spec.radial(t);
                if (!(r > 0.0)) fail("NonStarShaped", "radial function is not positive");
                const double r1 = spec.radial_d1(t);
                len += std::sqrt(r * r + r1 * r1);
            }
            spec.boundary_volume = len * 2.0 * kPi / m;
            break;
        }
        case DomainKind::Ball:
        case DomainKind::RoundSphereBoundary:
            if (spec.n < 2) fail("UnsupportedDimension", "Ball/RoundSphereBoundary need n >= 2");
            // vol(S^n_R) = area(S^n) R^n
            spec.boundary_volume = unit_sphere_area(spec.n + 1) * std::pow(spec.radius, spec.n);
            break;
        case DomainKind::CustomField:
            if (spec.n < 1) fail("UnsupportedDimension", "CustomField needs n >= 1");
            break;
    }
    return spec;
}

// ---------------------------------------------------------------------------
// curvature_field

namespace detail {

inline CurvatureField planar_field(const DomainSpec& spec, int num_nodes) {
    CurvatureField f;
    f.n = 1;
    f.label = spec.label;
    const bool annulus = spec.kind == DomainKind::Annulus;
    const int per_circle = num_nodes;
    f.nodes = annulus ? 2 * per_circle : per_circle;
    const auto push = [&](double w, double kap) {
        f.weights.push_back(w);
        f.kappa.push_back(kap);
        f.scalar_boundary.push_back(0.0);
        f.scalar_ambient.push_back(0.0);
        f.ricci_ambient_normal.push_back(0.0);
        f.ricci_boundary.push_back(0.0);
        f.ricci_ambient_tangent.push_back(0.0);
        f.covderiv_normal.push_back(0.0);
    };
    const double dt = 2.0 * kPi / per_circle;
    if (spec.kind == DomainKind::Disk) {
        for (int i = 0; i < per_circle; ++i) push(spec.radius * dt, 1.0 / spec.radius);
    } else if (annulus) {
        const double ri = spec.inner_radius * spec.radius;
        for (int i = 0; i < per_circle; ++i) push(spec.radius * dt, 1.0 / spec.radius);
        // inner circle: the domain's inward normal points away from the origin
        for (int i = 0; i < per_circle; ++i) push(ri * dt, -1.0 / ri);
    } else { // StarPlanar; trapezoid in the boundary parameter is spectral here
        for (int i = 0; i < per_circle; ++i) {
            const double t = dt * i;
            const double r = spec.radial(t), r1 = spec.radial_d1(t), r2 = spec.radial_d2(t);
            const double g = r * r + r1 * r1;
            const double kap = (r * r + 2.0 * r1 * r1 - r * r2) / std::pow(g, 1.5);
            push(std::sqrt(g) * dt, kap);
        }
    }
    return f;
}

inline CurvatureField sphere2_field(const DomainSpec& spec, int num_nodes) {
    // Gauss-Legendre in the polar angle x uniform azimuth.
    const double R = spec.radius;
    int nu = std::max(8, int(std::lround(std::sqrt(num_nodes / 2.0))));
    int nphi = 2 * nu;
    Rule1d gl = gauss_legendre(nu, -1.0, 1.0); // in cos(theta)
    CurvatureField f;
    f.n = 2;
    f.label = spec.label;
    f.nodes = nu * nphi;
    const double wphi = 2.0 * kPi / nphi;
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nphi; ++j) {
            f.weights.push_back(R * R * gl.weights[i] * wphi);
            f.kappa.insert(f.kappa.end(), {1.0 / R, 1.0 / R});
            f.scalar_boundary.push_back(2.0 / (R * R));
            f.scalar_ambient.push_back(0.0);
            f.ricci_ambient_normal.insert(f.ricci_ambient_normal.end(), {0.0, 0.0});
            f.ricci_boundary.insert(f.ricci_boundary.end(), {1.0 / (R * R), 1.0 / (R * R)});
            f.ricci_ambient_tangent.insert(f.ricci_ambient_tangent.end(), {0.0, 0.0});
            f.covderiv_normal.push_back(0.0);
        }
    return f;
}

inline CurvatureField sphere3_field(const DomainSpec& spec, int num_nodes) {
    // Product rule in hyperspherical angles (psi, theta, phi),
    // dS = R^3 sin^2(psi) sin(theta) dpsi dtheta dphi.
    const double R = spec.radius;
    int m = std::max(8, int(std::lround(std::cbrt(num_nodes / 2.0))));
    Rule1d glpsi = gauss_legendre(m, 0.0, kPi);
    Rule1d glcos = gauss_legendre(m, -1.0, 1.0);
    int nphi = 2 * m;
    CurvatureField f;
    f.n = 3;
    f.label = spec.label;
    f.nodes = m * m * nphi;
    const double wphi = 2.0 * kPi / nphi;
    const double R2 = R * R;
    for (int i = 0; i < m; ++i) {
        const double spsi = std::sin(glpsi.nodes[i]);
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < nphi; ++k) {
                f.weights.push_back(R * R2 * glpsi.weights[i] * spsi * spsi *
                                    glcos.weights[j] * wphi);
                f.kappa.insert(f.kappa.end(), {1.0 / R, 1.0 / R, 1.0 / R});
                f.scalar_boundary.push_back(6.0 / R2);
                f.scalar_ambient.push_back(0.0);
                f.ricci_ambient_normal.insert(f.ricci_ambient_normal.end(), {0.0, 0.0, 0.0});
                f.ricci_boundary.insert(f.ricci_boundary.end(),
                                        {2.0 / R2, 2.0 / R2, 2.0 / R2});
                f.ricci_ambient_tangent.insert(f.ricci_ambient_tangent.end(), {0.0, 0.0, 0.0});
                f.covderiv_normal.push_back(0.0);
            }
    }
    return f;
}

} // namespace detail

inline CurvatureField curvature_field(const DomainSpec& spec, int num_nodes) {
    if (num_nodes < 8) fail("UnsupportedDimension", "curvature_field needs num_nodes >= 8");
    switch (spec.kind) {
        case DomainKind::Disk:
        case DomainKind::Annulus:
        case DomainKind::StarPlanar:
            return detail::planar_field(spec, num_nodes);
        case DomainKind::Ball:
        case DomainKind::RoundSphereBoundary:
            if (spec.n == 2) return detail::sphere2_field(spec, num_nodes);
            if (spec.n == 3) return detail::sphere3_field(spec, num_nodes);
            fail("UnsupportedDimension", "sphere quadrature implemented for n in {2,3}");
        case DomainKind::CustomField:
            fail("UnsupportedDimension", "CustomField: caller supplies the CurvatureField");
    }
    fail("UnsupportedKind", "unreachable");
}

// sum_i w_i f_i
inline double boundary_integrate(const CurvatureField& field, const std::vector<double>& values) {
    if (values.size() != std::size_t(field.nodes))
        fail("LengthMismatch", "value array length must equal the node count");
    double s = 0.0, c = 0.0;
    for (int i = 0; i < field.nodes; ++i) { // compensated
        const double y = field.weights[i] * values[i] - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

// ---------------------------------------------------------------------------
// serialization

inline json to_json(const DomainSpec& spec) {
    json j;
    j["kind"] = to_string(spec.kind);
    j["n"] = spec.n;
    j["radius"] = spec.radius;
    if (spec.kind == DomainKind::Annulus) j["inner_radius"] = spec.inner_radius;
    if (!spec.radial_coeffs.empty()) {
        json arr = json::array();
        for (const auto& c : spec.radial_coeffs) arr.push_back({c.k, c.a, c.b});
        j["radial_coeffs"] = arr;
    }
    j["label"] = spec.label;
    return j;
}

inline DomainSpec domain_from_json(const json& j) {
    static const std::vector<std::string> known = {"kind", "n", "radius", "inner_radius",
                                                   "radial_coeffs", "label"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            fail("ConfigError", "unknown key '" + it.key() + "' in domain document");
    }
    DomainSpec s;
    if (!j.contains("kind")) fail("ConfigError", "domain document needs 'kind'");
    s.kind = domain_kind_from_string(j.at("kind").get<std::string>());
    s.n = j.value("n", s.kind == DomainKind::Ball || s.kind == DomainKind::RoundSphereBoundary ? 2 : 1);
    s.radius = j.value("radius", 1.0);
    s.inner_radius = j.value("inner_radius", 0.0);
    if (j.contains("radial_coeffs")) {
        for (const auto& row : j.at("radial_coeffs")) {
            if (!row.is_array() || row.size() != 3)
                fail("ConfigError", "radial_coeffs rows must be [k, a_k, b_k]");
            s.radial_coeffs.push_back({row[0].get<int>(), row[1].get<double>(), row[2].get<double>()});
        }
    }
    s.label = j.value("label", std::string{});
    return make_domain(s);
}

// CSV: one row per node (parse direction, for user-supplied CustomField data).
inline CurvatureField curvature_field_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string header;
    if (!std::getline(is, header)) fail("ConfigError", "empty curvature field CSV");
    // infer n from the kappa_* columns
    int n = 0;
    {
        std::istringstream hs(header);
        std::string col;
        while (std::getline(hs, col, ','))
            if (col.rfind("kappa_", 0) == 0) ++n;
    }
    if (n < 1) fail("ConfigError", "curvature field CSV has no kappa columns");
    CurvatureField f;
    f.n = n;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
        const std::size_t expect = 2 + n + 2 + 3 * std::size_t(n) + 1;
        if (vals.size() != expect)
            fail("ConfigError", "curvature field row has " + std::to_string(vals.size()) +
                                    " cells, expected " + std::to_string(expect));
        std::size_t c = 1; // skip node_index
        if (!(vals[c] > 0.0)) fail("ConfigError", "node weights must be positive");
        f.weights.push_back(vals[c++]);
        for (int j = 0; j < n; ++j) f.kappa.push_back(vals[c++]);
        f.scalar_boundary.push_back(vals[c++]);
        f.scalar_ambient.push_back(vals[c++]);
        for (int j = 0; j < n; ++j) f.ricci_ambient_normal.push_back(vals[c++]);
        for (int j = 0; j < n; ++j) f.ricci_boundary.push_back(vals[c++]);
        for (int j = 0; j < n; ++j) f.ricci_ambient_tangent.push_back(vals[c++]);
        f.covderiv_normal.push_back(vals[c++]);
        ++f.nodes;
    }
    if (f.nodes == 0) fail("ConfigError", "curvature field CSV has no nodes");
    return f;
}

// CSV: one row per node.
inline std::string to_csv(const CurvatureField& f) {
    std::ostringstream os;
    os << "node_index,weight";
    for (int j = 1; j <= f.n; ++j) os << ",kappa_" << j;
    os << ",R_boundary,R_ambient";
    for (int j = 1; j <= f.n; ++j) os << ",ric_amb_normal_" << j;
    for (int j = 1; j <= f.n; ++j) os << ",ric_boundary_" << j;
    for (int j = 1; j <= f.n; ++j) os << ",ric_amb_tangent_" << j;
    os << ",covderiv_normal\n";
    for (int i = 0; i < f.nodes; ++i) {
        os << i << ',' << format_double(f.weights[i]);
        for (int j = 0; j < f.n; ++j) os << ',' << format_double(f.kappa_at(i, j));
        os << ',' << format_double(f.scalar_boundary[i]) << ','
           << format_double(f.scalar_ambient[i]);
        for (int j = 0; j < f.n; ++j)
            os << ',' << format_double(f.ricci_ambient_normal[std::size_t(i) * f.n + j]);
        for (int j = 0; j < f.n; ++j)
            os << ',' << format_double(f.ricci_boundary[std::size_t(i) * f.n + j]);
        for (int j = 0; j < f.n; ++j)
            os << ',' << format_double(f.ricci_ambient_tangent[std::size_t(i) * f.n + j]);
        os << ',' << format_double(f.covderiv_normal[i]) << '\n';
    }
    return os.str();
}

} // namespace steklov
