// Hankel and Jacobi transform pairs with inversion, Plancherel accounting
// and spectral operator powers.
//
// Conventions, fixed once for the whole project:
//  * Hankel: both directions integrate against the normalized measure
//    d mu_alpha(t) = (2^alpha Gamma(alpha+1))^{-1} t^{2 alpha + 1} dt, which
//    makes exp(-t^2/2) a fixed point of the pair.
//  * Jacobi: forward against w_{alpha,beta}(r) dr, inversion
//    f(r) = (2 pi)^{-1} Int_0^inf F(lambda) phi_lambda(r) |c(lambda)|^{-2}
//    d lambda; the half-line 1/(2 pi) constant reproduces the classical
//    cosine pair at (alpha, beta) = (-1/2, -1/2) where |c|^{-2} = 4.

#pragma once

#include <optional>

#include "specproj/numerics.hpp"
#include "specproj/specfun.hpp"

namespace specproj {

struct TransformKind {
    enum class Family { Hankel, Jacobi, Custom };
    Family family = Family::Custom;
    double alpha = 0.0;                    // Hankel order
    std::optional<JacobiParams> jacobi;    // Jacobi parameters

    static TransformKind hankel(double alpha);
    static TransformKind jacobi_pair(const JacobiParams& p);
    static TransformKind custom();

    // Plancherel measure density in lambda (1 for custom).
    double density(double lambda) const;
    // Natural spectral shift: a for Bessel (caller-supplied), rho for Jacobi.
    double natural_shift(double bessel_a) const;
};

// Transform values on a half-line lambda window; evenness in lambda is
// implicit. lambda_weights are the quadrature weights of the window, used
// by inversion and by every spectral integral downstream.
struct SpectralSamples {
    std::vector<double> lambdas;
    std::vector<double> lambda_weights;
    std::vector<double> values;
    TransformKind kind;
    bool tail_ok = true;

    std::size_t size() const { return lambdas.size(); }
    double lambda_max() const { return lambdas.empty() ? 0.0 : lambdas.back(); }
    // Linear interpolation in |lambda| between nodes.
    double interp(double lambda) const;

    static SpectralSamples on_grid(const RadialGrid& lambda_grid, TransformKind kind);
};

struct TransformPairReport {
    SpectralSamples forward;
    double roundtrip_l2_rel_error = 0.0;
    double plancherel_lhs = 0.0;
    double plancherel_rhs = 0.0;
};

// A lambda window mirrored from the radial grid density: the Nyquist-style
// rule lambda_max * dr <= pi/4, capped at `lambda_cap`.
RadialGrid mirrored_lambda_grid(const RadialGrid& r_grid, double lambda_cap = 64.0);

SpectralSamples hankel_forward(const SampledRadialFunction& f, double alpha,
                               const RadialGrid& lambda_grid);
SampledRadialFunction hankel_inverse(const SpectralSamples& F, double alpha,
                                     const RadialGrid& r_grid);

SpectralSamples jacobi_forward(const SampledRadialFunction& f, const JacobiParams& p,
                               const RadialGrid& lambda_grid);
SampledRadialFunction jacobi_inverse(const SpectralSamples& F, const JacobiParams& p,
                                     const RadialGrid& r_grid);

// Both sides of the Plancherel identity plus the round-trip error, under
// the fixed constants above.
TransformPairReport plancherel_check(const SampledRadialFunction& f,
                                     const TransformKind& kind,
                                     const RadialGrid& lambda_grid);

// L2 norm under the pair's spectral measure: ||f||_2 with multiplier 1.
double spectral_l2_norm(const SpectralSamples& F);

// log ||L^m f||_2 where L has spectral multiplier (lambda^2 + shift^2);
// accumulated in the log domain so m ~ 50 stays representable.
double spectral_power_log_norm(const SpectralSamples& F, double shift, int m);

struct SpectralPowerResult {
    double value = 0.0;       // inf when overflowed
    double log_value = 0.0;   // always valid (-inf for zero input)
    bool overflow = false;
};
SpectralPowerResult spectral_power_norm(const SpectralSamples& F, double shift, int m);

} // namespace specproj
