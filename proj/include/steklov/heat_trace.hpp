#pragma once
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "steklov/spectrum.hpp"

// Heat trace Z(t) = sum_k e^{-lambda_k t} with truncation-tail control, and
// the on-diagonal kernels of the homogeneous model domains.

namespace steklov {

struct HeatTraceSamples {
    std::vector<double> t_grid;
    std::vector<double> values;
    std::vector<double> tail_estimates;
    int n = 1;
    std::string spectrum_hash;
};

// Weyl-density estimate of the truncated tail sum_{lambda > lambda_K} e^{-lambda t}:
// integrate n omega_n vol lambda^{n-1} / (2 pi)^n e^{-lambda t} over
// (lambda_K, inf) and multiply by safety factor 2. An estimate, not a bound.
inline double weyl_tail(const Spectrum& spec, double t) {
    if (!(t > 0.0)) fail("NonPositiveTime", "weyl_tail needs t > 0");
    if (!std::isfinite(spec.boundary_volume) || spec.boundary_volume <= 0.0)
        fail("MissingVolumeMetadata", "spectrum lacks boundary volume");
    const int n = spec.n;
    const double lamK = spec.max_eigenvalue();
    const double density = n * unit_ball_volume(n) * spec.boundary_volume /
                           std::pow(2.0 * kPi, n);
    // int_{lamK}^inf lambda^{n-1} e^{-lambda t} dlambda = Gamma(n, lamK t)/t^n
    return 2.0 * density * upper_incomplete_gamma_int(n, lamK * t) / std::pow(t, n);
}

struct TraceValue {
    double value = 0.0;
    double tail_estimate = 0.0;
};

// Partial sum over the stored spectrum, smallest terms first, compensated.
inline TraceValue trace_value(const Spectrum& spec, double t) {
    if (!(t > 0.0)) fail("NonPositiveTime", "trace_value needs t > 0");
    if (spec.eigenvalues.empty()) fail("UnsupportedKind", "empty spectrum");
    double s = 0.0, c = 0.0;
    for (std::size_t i = spec.eigenvalues.size(); i-- > 0;) {
        const double term = spec.multiplicities[i] * std::exp(-spec.eigenvalues[i] * t);
        const double y = term - c;
        const double tt = s + y;
        c = (tt - s) - y;
        s = tt;
    }
    return {s, weyl_tail(spec, t)};
}

// Exact model traces (radius R):
//   Disk:      Z(t) = coth(t / 2R)
//   Ball n=2:  Z(t) = (1+x)/(1-x)^2,  x = e^{-t/R}
//   Ball n=3:  Z(t) = (1+x)/(1-x)^3
inline double disk_trace_exact(double t, double R = 1.0) {
    return 1.0 / std::tanh(0.5 * t / R);
}
inline double ball2_trace_exact(double t, double R = 1.0) {
    const double x = std::exp(-t / R);
    return (1.0 + x) / ((1.0 - x) * (1.0 - x));
}
inline double ball3_trace_exact(double t, double R = 1.0) {
    const double x = std::exp(-t / R);
    return (1.0 + x) / std::pow(1.0 - x, 3);
}

// On-diagonal DtN heat kernel of the homogeneous models (constant in x).
inline double model_kernel_diagonal(const DomainSpec& spec, double t) {
    if (!(t > 0.0)) fail("NonPositiveTime", "model_kernel_diagonal needs t > 0");
    const double R = spec.radius;
    if (spec.kind == DomainKind::Disk)
        return disk_trace_exact(t, R) / (2.0 * kPi * R);
    if (spec.kind == DomainKind::Ball && spec.n == 2)
        return ball2_trace_exact(t, R) / (4.0 * kPi * R * R);
    if (spec.kind == DomainKind::Ball && spec.n == 3)
        return ball3_trace_exact(t, R) / (2.0 * kPi * kPi * R * R * R);
    fail("UnsupportedKind", "kernel diagonal exists for Disk and Ball");
}

// Geometric t-grid with the tail-tolerance coupling: the grid is refused
// (TailTooLarge) unless tail_estimate < tail_fraction * Z at t_min.
inline HeatTraceSamples make_trace_samples(const Spectrum& spec, double t_min, double t_max,
                                           int points_per_decade = 40,
                                           double tail_fraction = 1e-8) {
    if (!(t_min > 0.0) || !(t_max > t_min)) fail("NonPositiveTime", "bad t-window");
    HeatTraceSamples h;
    h.n = spec.n;
    h.spectrum_hash = hex64(fnv1a64(content_key(spec)));
    const double decades = std::log10(t_max / t_min);
    const int m = std::max(2, int(std::ceil(decades * points_per_decade)) + 1);
    for (int i = 0; i < m; ++i) {
        const double t = t_min * std::pow(t_max / t_min, double(i) / (m - 1));
        const TraceValue v = trace_value(spec, t);
        h.t_grid.push_back(t);
        h.values.push_back(v.value);
        h.tail_estimates.push_back(v.tail_estimate);
    }
    if (h.tail_estimates.front() >= tail_fraction * h.values.front())
        fail("TailTooLarge", "truncation tail exceeds tolerance at t_min; increase K or t_min");
    return h;
}

inline std::string to_csv(const HeatTraceSamples& h) {
    std::ostringstream os;
    os << "t,Z,tail_estimate\n";
    for (std::size_t i = 0; i < h.t_grid.size(); ++i)
        os << format_double(h.t_grid[i]) << ',' << format_double(h.values[i]) << ','
           << format_double(h.tail_estimates[i]) << '\n';
    return os.str();
}

} // namespace steklov
