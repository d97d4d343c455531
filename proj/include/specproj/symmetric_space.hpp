// Rank-one noncompact layer: space parameters from root multiplicities,
// spherical functions, the spherical transform, generalized spectral
// projections, spherical means and the projection-decay audit.

#pragma once

#include "specproj/ingham.hpp"
#include "specproj/transforms.hpp"

namespace specproj {

struct RankOneSpace {
    int m_gamma = 1;
    int m_2gamma = 0;
    JacobiParams params{0.0, -0.5};   // alpha = (mg + m2g - 1)/2, beta = (m2g - 1)/2

    double rho() const { return params.rho(); }
};

// Derives (alpha, beta, rho) from the root multiplicities; rho coincides
// with (m_gamma + m_2gamma)/2.
RankOneSpace space_from_multiplicities(int m_gamma, int m_2gamma);

// Spherical function Phi_lambda(a_r) = phi_lambda at the space parameters.
double spherical_fn(const RankOneSpace& space, double lambda, double r);

// K-type spherical function
//   Q_delta(i lambda + rho) (alpha+1)_p^{-1} (sinh r)^p (cosh r)^q
//       phi_lambda^{(alpha+p, beta+q)}(r).
// Complex-valued for lambda != 0 since Q_delta is; the (0,0) case reduces
// to spherical_fn.
Complex spherical_fn_delta(const RankOneSpace& space, const KTypeIndex& ktype,
                           double lambda, double r);

// Spherical transform of a radial profile: delegates to jacobi_forward at
// the space parameters.
SpectralSamples spherical_transform(const RankOneSpace& space,
                                    const SampledRadialFunction& f,
                                    const RadialGrid& lambda_grid);

struct ProjectionField {
    double lambda = 0.0;
    SampledRadialFunction profile;   // f~(lambda) Phi_lambda(r) along a_r
    double eigenvalue = 0.0;         // -(lambda^2 + rho^2)
};

// Spectral projection fiber at lambda (linear interpolation of f~ between
// nodes). Throws std::domain_error when lambda falls outside the window.
ProjectionField project(const RankOneSpace& space, const SpectralSamples& f_tilde,
                        double lambda, const RadialGrid& r_grid);

// Radial profile of the spherical mean centered at distance x_r:
//   F_x(r) = (2 pi)^{-1} Int_0^inf f~(lambda) Phi_lambda(x_r) Phi_lambda(r)
//            |c(lambda)|^{-2} dlambda.
SampledRadialFunction spherical_mean_profile(const RankOneSpace& space,
                                             const SpectralSamples& f_tilde,
                                             double x_r, const RadialGrid& r_grid);

// Projection-decay audit against the modulus theta at the sample point
// x_r: per-lambda decay data d(lambda) = |f~(lambda) Phi_lambda(x_r)|, the
// measured envelope constant, and Carleman sums of the operator powers
// under the imposed envelope e^{-lambda theta(lambda)} (spectral shift
// rho). Spectral data passed in directly.
UncertaintyAuditReport uncertainty_audit_spectral(const RankOneSpace& space,
                                                  const SpectralSamples& f_tilde,
                                                  const ThetaSpec& theta, double x_r,
                                                  int m_max = 40);

// Same audit starting from a radial profile that vanishes on [0, l); the
// profile's vanishing is checked before transforming. x_r defaults to l/2.
UncertaintyAuditReport uncertainty_audit_thm11(const RankOneSpace& space,
                                               const SampledRadialFunction& f,
                                               double vanish_radius,
                                               const ThetaSpec& theta,
                                               const RadialGrid& lambda_grid,
                                               double x_r = -1.0, int m_max = 40);

} // namespace specproj
