#include "specproj/symmetric_space.hpp"

#include <cmath>
#include <stdexcept>

namespace specproj {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
}

RankOneSpace space_from_multiplicities(int m_gamma, int m_2gamma) {
    if (m_gamma < 1)
        throw std::domain_error("space_from_multiplicities: m_gamma must be >= 1");
    if (m_2gamma < 0)
        throw std::domain_error("space_from_multiplicities: m_2gamma must be >= 0");
    RankOneSpace s;
    s.m_gamma = m_gamma;
    s.m_2gamma = m_2gamma;
    s.params = JacobiParams(0.5 * (m_gamma + m_2gamma - 1.0), 0.5 * (m_2gamma - 1.0));
    // rho = alpha + beta + 1 must equal (m_gamma + m_2gamma)/2 exactly.
    if (s.params.rho() != 0.5 * (m_gamma + m_2gamma))
        throw std::logic_error("space_from_multiplicities: rho consistency violated");
    return s;
}

double spherical_fn(const RankOneSpace& space, double lambda, double r) {
    return jacobi_phi(space.params, lambda, r);
}

Complex spherical_fn_delta(const RankOneSpace& space, const KTypeIndex& ktype,
                           double lambda, double r) {
    const JacobiParams shifted = space.params.shifted(ktype.p, ktype.q);
    const Complex q = kostant_Q(space.params, ktype, lambda);
    const Complex poch = pochhammer(Complex(space.params.alpha + 1.0), ktype.p);
    const double radial = std::pow(std::sinh(r), ktype.p) * std::pow(std::cosh(r), ktype.q);
    return q / poch * radial * jacobi_phi(shifted, lambda, r);
}

SpectralSamples spherical_transform(const RankOneSpace& space,
                                    const SampledRadialFunction& f,
                                    const RadialGrid& lambda_grid) {
    return jacobi_forward(f, space.params, lambda_grid);
}

ProjectionField project(const RankOneSpace& space, const SpectralSamples& f_tilde,
                        double lambda, const RadialGrid& r_grid) {
    if (lambda < 0.0 || lambda > f_tilde.lambda_max())
        throw std::domain_error("project: lambda outside the spectral window");
    ProjectionField field;
    field.lambda = lambda;
    const double ft = f_tilde.interp(lambda);
    const JacobiPhi phi(space.params, lambda);
    std::vector<double> vals(r_grid.size());
    for (std::size_t i = 0; i < r_grid.size(); ++i)
        vals[i] = ft * phi(r_grid.nodes[i]);
    field.profile = SampledRadialFunction(r_grid, std::move(vals));
    field.eigenvalue = -(lambda * lambda + space.rho() * space.rho());
    return field;
}

SampledRadialFunction spherical_mean_profile(const RankOneSpace& space,
                                             const SpectralSamples& f_tilde,
                                             double x_r, const RadialGrid& r_grid) {
    if (x_r < 0.0)
        throw std::domain_error("spherical_mean_profile: x_r must be nonnegative");
    const std::size_t nl = f_tilde.size();
    std::vector<double> coeff(nl);
    for (std::size_t j = 0; j < nl; ++j) {
        const double lam = f_tilde.lambdas[j];
        coeff[j] = f_tilde.lambda_weights[j] * f_tilde.values[j] *
                   c_function_inv_sq(space.params, lam) / (2.0 * kPi);
    }
    std::vector<double> vals(r_grid.size(), 0.0);
    const int nt = thread_count();
    std::vector<std::vector<double>> partial(nt, std::vector<double>(r_grid.size(), 0.0));
    parallel_for(nt, [&](std::size_t t) {
        auto& acc = partial[t];
        for (std::size_t j = t; j < nl; j += nt) {
            if (coeff[j] == 0.0) continue;
            const JacobiPhi phi(space.params, f_tilde.lambdas[j]);
            const double cj = coeff[j] * phi(x_r);
            for (std::size_t i = 0; i < r_grid.size(); ++i)
                acc[i] += cj * phi(r_grid.nodes[i]);
        }
    });
    for (int t = 0; t < nt; ++t)
        for (std::size_t i = 0; i < r_grid.size(); ++i) vals[i] += partial[t][i];
    return {r_grid, std::move(vals)};
}

UncertaintyAuditReport uncertainty_audit_spectral(const RankOneSpace& space,
                                                  const SpectralSamples& f_tilde,
                                                  const ThetaSpec& theta, double x_r,
                                                  int m_max) {
    UncertaintyAuditReport rep;
    rep.x_r = x_r;
    rep.theta_class = classify_theta(theta);

    const double peak = [&] {
        double m = 0.0;
        for (double v : f_tilde.values) m = std::max(m, std::abs(v));
        return m;
    }();
    const bool zero_data = (peak == 0.0);
    if (!zero_data && peak < 1e-250)
        throw std::runtime_error(
            "uncertainty_audit: transform underflows across the whole window");

    rep.lambdas = f_tilde.lambdas;
    rep.transform_abs.resize(f_tilde.size());
    rep.kernel_abs.resize(f_tilde.size());
    rep.projection_abs.resize(f_tilde.size());
    rep.envelope_constant.resize(f_tilde.size());
    for (std::size_t j = 0; j < f_tilde.size(); ++j) {
        const double lam = f_tilde.lambdas[j];
        const double k = jacobi_phi(space.params, lam, x_r);
        rep.transform_abs[j] = std::abs(f_tilde.values[j]);
        rep.kernel_abs[j] = std::abs(k);
        rep.projection_abs[j] = std::abs(f_tilde.values[j] * k);
        rep.envelope_constant[j] = rep.projection_abs[j] * std::exp(lam * theta(lam));
        rep.best_constant = std::max(rep.best_constant, rep.envelope_constant[j]);
    }

    // Operator powers under the imposed envelope e^{-lambda theta(lambda)}.
    SpectralSamples env = f_tilde;
    for (std::size_t j = 0; j < env.size(); ++j) {
        const double lam = env.lambdas[j];
        env.values[j] = zero_data ? 0.0 : std::exp(-lam * theta(lam));
    }
    rep.power_log_norms.resize(m_max);
    for (int m = 1; m <= m_max; ++m)
        rep.power_log_norms[m - 1] = spectral_power_log_norm(env, space.rho(), m);
    rep.carleman = carleman_verdict_from_log_norms(rep.power_log_norms);
    rep.obstruction_evidence = (rep.theta_class.verdict == ThetaClass::Divergent) &&
                               rep.carleman.positive_trend &&
                               rep.carleman.verdict == CarlemanVerdictKind::Diverging;
    return rep;
}

UncertaintyAuditReport uncertainty_audit_thm11(const RankOneSpace& space,
                                               const SampledRadialFunction& f,
                                               double vanish_radius,
                                               const ThetaSpec& theta,
                                               const RadialGrid& lambda_grid,
                                               double x_r, int m_max) {
    // The profile must vanish on [0, vanish_radius).
    const double peak = f.max_abs();
    for (std::size_t i = 0; i < f.grid.size(); ++i) {
        if (f.grid.nodes[i] >= vanish_radius) break;
        if (std::abs(f.values[i]) > 1e-14 * peak)
            throw std::domain_error(
                "uncertainty_audit_thm11: profile does not vanish on [0, l)");
    }
    if (x_r < 0.0) x_r = 0.5 * vanish_radius;
    const SpectralSamples f_tilde = spherical_transform(space, f, lambda_grid);
    return uncertainty_audit_spectral(space, f_tilde, theta, x_r, m_max);
}

} // namespace specproj
