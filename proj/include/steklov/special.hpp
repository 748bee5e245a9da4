#pragma once
#include <cmath>
#include <cstdint>
#include <numbers>

#include "steklov/errors.hpp"

// Shared special functions. The gamma function is implemented once, here:
// a Lanczos approximation (g = 7, 9 terms, ~1e-14 relative on the real line)
// with exact factorial / sqrt(pi)-recurrence fast paths for integer and
// half-integer arguments, which is where every formula in this library
// evaluates it.

namespace steklov {

inline constexpr double kPi = std::numbers::pi;

namespace detail {

inline double lanczos_positive(double x) {
    // Lanczos coefficients, g = 7.
    static constexpr double c[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7};
    const double z = x - 1.0;
    double acc = c[0];
    for (int i = 1; i < 9; ++i) acc += c[i] / (z + i);
    const double t = z + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

} // namespace detail

// Gamma(x) for real x off the nonpositive integers.
inline double gamma_fn(double x) {
    if (x <= 0.0 && x == std::floor(x))
        fail("GammaPole", "gamma_fn evaluated at nonpositive integer");

    const double two_x = 2.0 * x;
    if (two_x == std::floor(two_x) && std::abs(x) < 170.0) {
        // Exact integer / half-integer paths.
        if (x == std::floor(x)) {
            double r = 1.0;
            for (double k = 2.0; k < x; ++k) r *= k;
            return r;
        }
        // x = m + 1/2, m integer (possibly negative).
        double r = std::sqrt(kPi); // Gamma(1/2)
        double a = 0.5;
        if (x > 0.5) {
            for (; a + 1.0 <= x + 1e-12; a += 1.0) r *= a;
        } else {
            for (; a - 1.0 >= x - 1e-12; a -= 1.0) r /= (a - 1.0);
        }
        return r;
    }

    if (x < 0.5) // reflection
        return kPi / (std::sin(kPi * x) * detail::lanczos_positive(1.0 - x));
    return detail::lanczos_positive(x);
}

// Surface area of the unit sphere S^{n-1} in R^n: 2 pi^{n/2} / Gamma(n/2).
inline double unit_sphere_area(int n) {
    if (n < 1) fail("UnsupportedDimension", "unit_sphere_area needs n >= 1");
    return 2.0 * std::pow(kPi, 0.5 * n) / gamma_fn(0.5 * n);
}

// Volume omega_n of the unit ball in R^n.
inline double unit_ball_volume(int n) {
    if (n < 0) fail("UnsupportedDimension", "unit_ball_volume needs n >= 0");
    if (n == 0) return 1.0;
    return std::pow(kPi, 0.5 * n) / gamma_fn(0.5 * n + 1.0);
}

// Upper incomplete gamma Gamma(n, x) for integer n >= 1:
//   Gamma(n, x) = (n-1)! e^{-x} sum_{k=0}^{n-1} x^k / k!
inline double upper_incomplete_gamma_int(int n, double x) {
    if (n < 1) fail("UnsupportedDimension", "upper_incomplete_gamma_int needs n >= 1");
    if (x < 0.0) fail("NonPositiveArgument", "upper_incomplete_gamma_int needs x >= 0");
    double term = 1.0, sum = 1.0; // x^k/k! starting at k = 0
    for (int k = 1; k < n; ++k) {
        term *= x / k;
        sum += term;
    }
    return gamma_fn(double(n)) * std::exp(-x) * sum;
}

} // namespace steklov
