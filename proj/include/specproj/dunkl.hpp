// Dunkl layer for Z_2^d coordinate reflection groups: settings with their
// sphere normalization, h-harmonic components, component transforms as
// shifted-order Hankel transforms, radial projection kernels, spherical
// means and the projection-decay audit.
//
// Normalization: the component transform b_m is the normalized Hankel
// transform of f_m(r) r^{-m} at order lambda_kappa + m, which makes the
// radial Gaussian a fixed point and reassembles to the plain inversion
// f = Int P_lambda f dmu_{lambda_kappa}(lambda) without extra constants.

#pragma once

#include <string>
#include <vector>

#include "specproj/ingham.hpp"
#include "specproj/transforms.hpp"

namespace specproj {

// Polynomial as a sum of monomials c * x^e; exact under the coordinate
// reflections.
struct HarmonicPolynomial {
    struct Term {
        double coeff;
        std::vector<int> exps;
    };
    int degree = 0;
    std::string id;
    std::vector<Term> terms;

    double eval(const std::vector<double>& x) const;
};

enum class RootConfig { Z2Coordinate };

struct DunklSetting {
    int n = 1;
    std::vector<double> kappa;    // multiplicities on e_1..e_d, d <= n
    double a_kappa_inv = 0.0;     // Int_{S^{n-1}} h^2 dsigma
    std::vector<HarmonicPolynomial> basis;   // degrees 0..2, (.,.)_kappa-orthonormal

    double gamma() const;
    double lambda_kappa() const { return gamma() + 0.5 * (n - 2); }
    double kappa_at(int i) const {
        return (i < static_cast<int>(kappa.size())) ? kappa[i] : 0.0;
    }
    double h2(const std::vector<double>& x) const;
    const HarmonicPolynomial& harmonic(const std::string& id) const;
};

// Builds the setting: sphere normalization in closed Beta form and the
// degree 0..2 h-harmonic basis orthonormalized against (.,.)_kappa.
// Requires lambda_kappa > -1.
DunklSetting make_setting(int n, RootConfig config, const std::vector<double>& kappa);

// Sphere moment Int_{S^{n-1}} prod |w_i|^{p_i} dsigma (surface measure),
// p_i > -1; zero when the corresponding plain exponent would be odd is the
// caller's concern (used with even monomial products).
double sphere_moment(int n, const std::vector<double>& p);

// (f, g)_kappa = a_kappa Int_{S^{n-1}} f g h^2 dsigma for polynomials.
double sphere_inner_kappa(const DunklSetting& s, const HarmonicPolynomial& f,
                          const HarmonicPolynomial& g);

// phi_{kappa,lambda}(x) = a_kappa^{-1} psi^{(lambda_kappa)}(lambda |x|)
//                         / Gamma(lambda_kappa + 1).
double phi_kappa(const DunklSetting& s, double lambda, double x_norm);

// Dunkl Laplacian by finite differences plus exact reflection terms:
//   Delta f + sum_i kappa_i [ (2/x_i) d_i f - (f(x) - f(r_i x)) / x_i^2 ].
double dunkl_laplacian_fd(const DunklSetting& s,
                          const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& x, double h = 1e-2);

// Single Dunkl operator D_i by finite differences (invariant checks).
double dunkl_op_fd(const DunklSetting& s, int i,
                   const std::function<double(const std::vector<double>&)>& f,
                   const std::vector<double>& x, double h = 1e-3);

// Gate for user-supplied harmonics: FD annihilation |Delta_kappa S| at
// sample points, tolerance 1e-6 relative to the polynomial scale.
void validate_harmonic(const DunklSetting& s, const HarmonicPolynomial& poly);

struct HarmonicComponent {
    int degree = 0;               // m
    std::string harmonic_id;      // label into the setting basis
    SampledRadialFunction radial_profile;   // f_m
};

struct ComponentSpectrum {
    int degree = 0;
    std::string harmonic_id;
    SpectralSamples b;            // b_m(lambda), Hankel order lambda_kappa + m
};

// b_m = hankel_forward(f_m r^{-m}, lambda_kappa + m). Throws when
// f_m r^{-m} grows toward 0 (singular profile).
ComponentSpectrum component_transform(const DunklSetting& s,
                                      const HarmonicComponent& comp,
                                      const RadialGrid& lambda_grid);

struct DunklProjection {
    int degree = 0;
    std::string harmonic_id;
    double lambda = 0.0;
    // radial factor gamma_m lambda^{2m} b_m(lambda) r^m psi^{(lk+m)}(lambda r);
    // the field is profile(r) * S_m(x') with gamma_m =
    // Gamma(lk+1) / (2^m Gamma(lk+m+1)).
    SampledRadialFunction profile;
    double eigenvalue = 0.0;      // -lambda^2 under the shifted radial operator
};

std::vector<DunklProjection> dunkl_project(const DunklSetting& s,
                                           const std::vector<ComponentSpectrum>& spectra,
                                           double lambda, const RadialGrid& r_grid);

// Pointwise projection trace P_lambda f(x) assembled over components.
double projection_trace(const DunklSetting& s,
                        const std::vector<ComponentSpectrum>& spectra,
                        const std::vector<double>& x, double lambda);

// Spherical mean profile F_x(r): the order-lambda_kappa Hankel inverse of
// lambda -> P_lambda f(x) over the spectral window.
SampledRadialFunction dunkl_spherical_mean(const DunklSetting& s,
                                           const std::vector<ComponentSpectrum>& spectra,
                                           const std::vector<double>& x,
                                           const RadialGrid& r_grid);

// Componentwise Plancherel gap: max over components of the relative
// mismatch between ||f_m r^{-m}|| and ||b_m|| at order lambda_kappa + m.
double componentwise_plancherel_gap(const DunklSetting& s,
                                    const std::vector<HarmonicComponent>& comps,
                                    const RadialGrid& lambda_grid);

// Projection-decay audit at the point x (mirror of the symmetric-space
// audit with Bessel-side norms, spectral shift a).
UncertaintyAuditReport uncertainty_audit_spectral(const DunklSetting& s,
                                                  const std::vector<ComponentSpectrum>& spectra,
                                                  const ThetaSpec& theta,
                                                  const std::vector<double>& x,
                                                  double shift_a, int m_max = 40);

UncertaintyAuditReport uncertainty_audit_thm13(const DunklSetting& s,
                                               const std::vector<HarmonicComponent>& comps,
                                               double vanish_radius, const ThetaSpec& theta,
                                               const std::vector<double>& x,
                                               const RadialGrid& lambda_grid,
                                               double shift_a = 1.0, int m_max = 40);

} // namespace specproj
