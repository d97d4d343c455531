// Independent oracles used by the tests. These deliberately avoid the
// library's own evaluation paths: the Bessel oracle is a direct power
// series, the complex Gamma oracle a Lanczos approximation, and the Jacobi
// oracle is the adaptive integration of the defining initial-value problem.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include "specproj/numerics.hpp"

namespace oracles {

// J_alpha(t) by the defining power series (small/moderate t only).
inline double bessel_series(double alpha, double t, int terms = 60) {
    double sum = 0.0;
    for (int k = 0; k < terms; ++k) {
        const double lg = -(alpha + 2.0 * k) * std::log(2.0) +
                          (alpha + 2.0 * k) * std::log(t) - std::lgamma(k + 1.0) -
                          std::lgamma(k + alpha + 1.0);
        sum += ((k % 2) ? -1.0 : 1.0) * std::exp(lg);
    }
    return sum;
}

// Complex Gamma via the g = 7, 9-coefficient Lanczos approximation.
inline std::complex<double> lanczos_gamma(std::complex<double> z) {
    static const double c[9] = {0.99999999999980993,
                                676.5203681218851,
                                -1259.1392167224028,
                                771.32342877765313,
                                -176.61502916214059,
                                12.507343278686905,
                                -0.13857109526572012,
                                9.9843695780195716e-6,
                                1.5056327351493116e-7};
    const double pi = 3.14159265358979323846;
    if (z.real() < 0.5) {
        return pi / (std::sin(pi * z) * lanczos_gamma(1.0 - z));
    }
    z -= 1.0;
    std::complex<double> x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (z + static_cast<double>(i));
    const std::complex<double> t = z + 7.5;
    return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

// Centered 5-point residual of the Jacobi equation
//   u'' + ((2a+1) coth r + (2b+1) tanh r) u' + (lambda^2 + rho^2) u = 0
// on the library's phi values, normalized by the scale of its terms.
inline double jacobi_ode_residual(const specproj::JacobiParams& p, double lambda,
                                  double r) {
    const specproj::JacobiPhi phi(p, lambda);
    const double ev = lambda * lambda + p.rho() * p.rho();
    const double h = 0.02 / std::max({std::abs(lambda), p.rho(), 1.0});
    const double f0 = phi(r);
    const double fp1 = phi(r + h), fm1 = phi(r - h);
    const double fp2 = phi(r + 2 * h), fm2 = phi(r - 2 * h);
    const double d1 = (-fp2 + 8 * fp1 - 8 * fm1 + fm2) / (12 * h);
    const double d2 = (-fp2 + 16 * fp1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h);
    const double B = (2.0 * p.alpha + 1.0) / std::tanh(r) +
                     (2.0 * p.beta + 1.0) * std::tanh(r);
    const double res = d2 + B * d1 + ev * f0;
    const double scale = std::abs(d2) + std::abs(B * d1) + ev * std::abs(f0) + 1e-30;
    return std::abs(res) / scale;
}

// Deterministic Plancherel-regime parameter draw.
struct ParamSampler {
    std::mt19937 rng{20240615u};
    specproj::JacobiParams draw_params() {
        std::uniform_real_distribution<double> ua(-0.9, 3.0);
        const double a = ua(rng);
        std::uniform_real_distribution<double> ub(-(a + 1.0), a + 1.0);
        return {a, ub(rng)};
    }
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }
};

inline specproj::SampledRadialFunction smooth_bump(const specproj::RadialGrid& g,
                                                   double a, double b) {
    auto f = specproj::SampledRadialFunction::tabulate(g, [&](double r) {
        if (r <= a || r >= b) return 0.0;
        const double u = 2.0 * (r - a) / (b - a) - 1.0;
        return std::exp(-1.0 / (1.0 - u * u));
    });
    f.support_hint = std::array<double, 2>{a, b};
    return f;
}

} // namespace oracles
