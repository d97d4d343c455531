#include "specproj/dunkl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specproj {

namespace {

double norm2(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

// gamma_m = Gamma(lk+1) / (2^m Gamma(lk+m+1)): the constant that makes the
// component projections reassemble to the plain Hankel inversion.
double gamma_m(double lk, int m) {
    return std::exp(std::lgamma(lk + 1.0) - m * std::log(2.0) - std::lgamma(lk + m + 1.0));
}

} // namespace

double HarmonicPolynomial::eval(const std::vector<double>& x) const {
    double s = 0.0;
    for (const auto& t : terms) {
        double v = t.coeff;
        for (std::size_t i = 0; i < t.exps.size(); ++i)
            for (int e = 0; e < t.exps[i]; ++e) v *= x[i];
        s += v;
    }
    return s;
}

double DunklSetting::gamma() const {
    double g = 0.0;
    for (double k : kappa) g += k;
    return g;
}

double DunklSetting::h2(const std::vector<double>& x) const {
    double p = 1.0;
    for (std::size_t i = 0; i < kappa.size(); ++i)
        p *= std::pow(std::abs(x[i]), 2.0 * kappa[i]);
    return p;
}

const HarmonicPolynomial& DunklSetting::harmonic(const std::string& id) const {
    for (const auto& b : basis)
        if (b.id == id) return b;
    throw std::invalid_argument("DunklSetting: unknown harmonic id '" + id + "'");
}

double sphere_moment(int n, const std::vector<double>& p) {
    // Int_{S^{n-1}} prod |w_i|^{p_i} dsigma
    //   = 2 prod Gamma((p_i+1)/2) / Gamma((n + sum p_i)/2).
    double lg = std::log(2.0);
    double psum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double pi_ = (i < static_cast<int>(p.size())) ? p[i] : 0.0;
        lg += std::lgamma(0.5 * (pi_ + 1.0));
        psum += pi_;
    }
    lg -= std::lgamma(0.5 * (n + psum));
    return std::exp(lg);
}

double sphere_inner_kappa(const DunklSetting& s, const HarmonicPolynomial& f,
                          const HarmonicPolynomial& g) {
    double acc = 0.0;
    for (const auto& tf : f.terms) {
        for (const auto& tg : g.terms) {
            bool odd = false;
            std::vector<double> p(s.n, 0.0);
            for (int i = 0; i < s.n; ++i) {
                const int ef = (i < static_cast<int>(tf.exps.size())) ? tf.exps[i] : 0;
                const int eg = (i < static_cast<int>(tg.exps.size())) ? tg.exps[i] : 0;
                if (((ef + eg) % 2) != 0) {
                    odd = true;
                    break;
                }
                p[i] = ef + eg + 2.0 * s.kappa_at(i);
            }
            if (odd) continue;
            acc += tf.coeff * tg.coeff * sphere_moment(s.n, p);
        }
    }
    return acc / s.a_kappa_inv;
}

namespace {

HarmonicPolynomial monomial(int n, std::vector<int> exps, double c, std::string id) {
    HarmonicPolynomial h;
    h.degree = 0;
    for (int e : exps) h.degree += e;
    h.id = std::move(id);
    h.terms.push_back({c, std::move(exps)});
    return h;
}

void scale_to_unit(const DunklSetting& s, HarmonicPolynomial& h) {
    const double nrm = std::sqrt(sphere_inner_kappa(s, h, h));
    for (auto& t : h.terms) t.coeff /= nrm;
}

} // namespace

DunklSetting make_setting(int n, RootConfig config, const std::vector<double>& kappa) {
    if (config != RootConfig::Z2Coordinate)
        throw std::domain_error("make_setting: unsupported root configuration");
    if (n < 1) throw std::domain_error("make_setting: n must be >= 1");
    if (static_cast<int>(kappa.size()) > n)
        throw std::domain_error("make_setting: more multiplicities than coordinates");
    for (double k : kappa)
        if (k < 0.0) throw std::domain_error("make_setting: kappa must be nonnegative");

    DunklSetting s;
    s.n = n;
    s.kappa = kappa;
    if (!(s.lambda_kappa() > -1.0))
        throw std::domain_error("make_setting: lambda_kappa must exceed -1");

    std::vector<double> p(n, 0.0);
    for (int i = 0; i < n; ++i) p[i] = 2.0 * s.kappa_at(i);
    s.a_kappa_inv = sphere_moment(n, p);

    // Degree 0: the constant 1 already has unit (.,.)_kappa norm.
    s.basis.push_back(monomial(n, std::vector<int>(n, 0), 1.0, "1"));
    // Degree 1: coordinates.
    for (int i = 0; i < n; ++i) {
        std::vector<int> e(n, 0);
        e[i] = 1;
        auto h = monomial(n, std::move(e), 1.0, "x" + std::to_string(i + 1));
        h.degree = 1;
        scale_to_unit(s, h);
        s.basis.push_back(std::move(h));
    }
    if (n >= 2) {
        // Degree 2, off-diagonal x_i x_j: mutually orthogonal as is.
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                std::vector<int> e(n, 0);
                e[i] = 1;
                e[j] = 1;
                auto h = monomial(n, std::move(e), 1.0,
                                  "x" + std::to_string(i + 1) + "x" + std::to_string(j + 1));
                h.degree = 2;
                scale_to_unit(s, h);
                s.basis.push_back(std::move(h));
            }
        }
        // Degree 2, diagonal combinations x_i^2/(1+2k_i) - x_{i+1}^2/(1+2k_{i+1})
        // (each annihilated by the Dunkl Laplacian), Gram-Schmidt among
        // themselves.
        std::vector<HarmonicPolynomial> diag;
        for (int i = 0; i + 1 < n; ++i) {
            HarmonicPolynomial h;
            h.degree = 2;
            h.id = "q" + std::to_string(i + 1);
            std::vector<int> e1(n, 0), e2(n, 0);
            e1[i] = 2;
            e2[i + 1] = 2;
            h.terms.push_back({1.0 / (1.0 + 2.0 * s.kappa_at(i)), e1});
            h.terms.push_back({-1.0 / (1.0 + 2.0 * s.kappa_at(i + 1)), e2});
            for (const auto& prev : diag) {
                const double c = sphere_inner_kappa(s, h, prev);
                for (const auto& t : prev.terms) {
                    bool merged = false;
                    for (auto& mine : h.terms)
                        if (mine.exps == t.exps) {
                            mine.coeff -= c * t.coeff;
                            merged = true;
                            break;
                        }
                    if (!merged) h.terms.push_back({-c * t.coeff, t.exps});
                }
            }
            scale_to_unit(s, h);
            diag.push_back(h);
            s.basis.push_back(std::move(h));
        }
    }
    return s;
}

double phi_kappa(const DunklSetting& s, double lambda, double x_norm) {
    if (x_norm < 0.0) throw std::domain_error("phi_kappa: |x| must be nonnegative");
    const double lk = s.lambda_kappa();
    return bessel_psi(lk, std::abs(lambda) * x_norm) /
           (s.a_kappa_inv * std::exp(std::lgamma(lk + 1.0)));
}

namespace {

double partial_fd(const std::function<double(const std::vector<double>&)>& f,
                  std::vector<double> x, int i, double h, int order) {
    // 5-point central stencils, 4th order.
    const double xi = x[i];
    auto at = [&](double t) {
        x[i] = xi + t;
        const double v = f(x);
        x[i] = xi;
        return v;
    };
    if (order == 1)
        return (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
    return (-at(2 * h) + 16 * at(h) - 30 * at(0) + 16 * at(-h) - at(-2 * h)) /
           (12 * h * h);
}

} // namespace

double dunkl_laplacian_fd(const DunklSetting& s,
                          const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& x, double h) {
    double acc = 0.0;
    for (int i = 0; i < s.n; ++i) acc += partial_fd(f, x, i, h, 2);
    const double fx = f(x);
    for (int i = 0; i < static_cast<int>(s.kappa.size()); ++i) {
        if (s.kappa[i] == 0.0) continue;
        if (std::abs(x[i]) < 1e-8)
            throw std::domain_error("dunkl_laplacian_fd: x too close to a reflecting wall");
        std::vector<double> rx = x;
        rx[i] = -rx[i];
        acc += s.kappa[i] * (2.0 / x[i] * partial_fd(f, x, i, h, 1) -
                             (fx - f(rx)) / (x[i] * x[i]));
    }
    return acc;
}

double dunkl_op_fd(const DunklSetting& s, int i,
                   const std::function<double(const std::vector<double>&)>& f,
                   const std::vector<double>& x, double h) {
    double acc = partial_fd(f, x, i, h, 1);
    if (i < static_cast<int>(s.kappa.size()) && s.kappa[i] != 0.0) {
        if (std::abs(x[i]) < 1e-8)
            throw std::domain_error("dunkl_op_fd: x too close to a reflecting wall");
        std::vector<double> rx = x;
        rx[i] = -rx[i];
        acc += s.kappa[i] * (f(x) - f(rx)) / x[i];
    }
    return acc;
}

void validate_harmonic(const DunklSetting& s, const HarmonicPolynomial& poly) {
    auto f = [&](const std::vector<double>& x) { return poly.eval(x); };
    // Deterministic sample points away from the reflecting walls.
    double scale = 0.0;
    double worst = 0.0;
    for (int t = 0; t < 8; ++t) {
        std::vector<double> x(s.n);
        for (int i = 0; i < s.n; ++i)
            x[i] = 0.35 + 0.61 * std::fmod(0.37 * (t + 1) * (i + 2), 1.0);
        scale = std::max(scale, std::abs(poly.eval(x)) + 1.0);
        worst = std::max(worst, std::abs(dunkl_laplacian_fd(s, f, x)));
    }
    if (worst > 1e-6 * scale)
        throw std::domain_error("validate_harmonic: Delta_kappa residual " +
                                std::to_string(worst) + " exceeds tolerance for '" +
                                poly.id + "'");
}

ComponentSpectrum component_transform(const DunklSetting& s,
                                      const HarmonicComponent& comp,
                                      const RadialGrid& lambda_grid) {
    if (comp.degree < 0)
        throw std::domain_error("component_transform: degree must be nonnegative");
    const auto& grid = comp.radial_profile.grid;
    std::vector<double> g(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        g[i] = comp.radial_profile.values[i] * std::pow(grid.nodes[i], -comp.degree);

    if (comp.degree > 0) {
        // Reject f_m whose reduced profile grows toward 0: compare the
        // innermost magnitudes against the bulk scale.
        double bulk = 0.0;
        for (double v : g) bulk = std::max(bulk, std::abs(v));
        const std::size_t probe = std::min<std::size_t>(3, grid.size());
        bool hinted_away = comp.radial_profile.support_hint &&
                           (*comp.radial_profile.support_hint)[0] > grid.nodes[probe];
        if (!hinted_away && bulk > 0.0) {
            for (std::size_t i = 0; i + 1 < probe; ++i) {
                if (std::abs(g[i]) > 50.0 * bulk)
                    throw std::domain_error(
                        "component_transform: f_m r^{-m} diverges at the origin");
            }
        }
    }

    SampledRadialFunction gf(grid, std::move(g));
    gf.support_hint = comp.radial_profile.support_hint;
    ComponentSpectrum out;
    out.degree = comp.degree;
    out.harmonic_id = comp.harmonic_id;
    out.b = hankel_forward(gf, s.lambda_kappa() + comp.degree, lambda_grid);
    return out;
}

std::vector<DunklProjection> dunkl_project(const DunklSetting& s,
                                           const std::vector<ComponentSpectrum>& spectra,
                                           double lambda, const RadialGrid& r_grid) {
    const double lk = s.lambda_kappa();
    std::vector<DunklProjection> out;
    out.reserve(spectra.size());
    for (const auto& cs : spectra) {
        if (lambda < 0.0 || lambda > cs.b.lambda_max())
            throw std::domain_error("dunkl_project: lambda outside the spectral window");
        DunklProjection pr;
        pr.degree = cs.degree;
        pr.harmonic_id = cs.harmonic_id;
        pr.lambda = lambda;
        pr.eigenvalue = -lambda * lambda;
        const double bm = cs.b.interp(lambda);
        const double cm = gamma_m(lk, cs.degree) * std::pow(lambda, 2 * cs.degree) * bm;
        std::vector<double> vals(r_grid.size());
        for (std::size_t i = 0; i < r_grid.size(); ++i) {
            const double r = r_grid.nodes[i];
            vals[i] = cm * std::pow(r, cs.degree) *
                      bessel_psi(lk + cs.degree, lambda * r);
        }
        pr.profile = SampledRadialFunction(r_grid, std::move(vals));
        out.push_back(std::move(pr));
    }
    return out;
}

double projection_trace(const DunklSetting& s,
                        const std::vector<ComponentSpectrum>& spectra,
                        const std::vector<double>& x, double lambda) {
    const double lk = s.lambda_kappa();
    const double r = norm2(x);
    std::vector<double> xp(x);
    if (r > 0.0)
        for (double& v : xp) v /= r;
    double acc = 0.0;
    for (const auto& cs : spectra) {
        const double bm = cs.b.interp(lambda);
        double sval = 1.0;
        if (cs.degree > 0) {
            if (r == 0.0) continue;   // r^m factor kills nonradial terms at 0
            sval = s.harmonic(cs.harmonic_id).eval(xp);
        }
        acc += gamma_m(lk, cs.degree) * std::pow(lambda, 2 * cs.degree) * bm *
               std::pow(r, cs.degree) * bessel_psi(lk + cs.degree, lambda * r) * sval;
    }
    return acc;
}

SampledRadialFunction dunkl_spherical_mean(const DunklSetting& s,
                                           const std::vector<ComponentSpectrum>& spectra,
                                           const std::vector<double>& x,
                                           const RadialGrid& r_grid) {
    if (spectra.empty())
        return SampledRadialFunction(r_grid, std::vector<double>(r_grid.size(), 0.0));
    SpectralSamples trace = spectra.front().b;
    trace.kind = TransformKind::hankel(s.lambda_kappa());
    for (std::size_t j = 0; j < trace.size(); ++j)
        trace.values[j] = projection_trace(s, spectra, x, trace.lambdas[j]);
    return hankel_inverse(trace, s.lambda_kappa(), r_grid);
}

double componentwise_plancherel_gap(const DunklSetting& s,
                                    const std::vector<HarmonicComponent>& comps,
                                    const RadialGrid& lambda_grid) {
    double gap = 0.0;
    for (const auto& comp : comps) {
        const auto& grid = comp.radial_profile.grid;
        std::vector<double> g(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            g[i] = comp.radial_profile.values[i] * std::pow(grid.nodes[i], -comp.degree);
        SampledRadialFunction gf(grid, std::move(g));
        const auto rep = plancherel_check(
            gf, TransformKind::hankel(s.lambda_kappa() + comp.degree), lambda_grid);
        if (rep.plancherel_lhs > 0.0)
            gap = std::max(gap, std::abs(rep.plancherel_lhs - rep.plancherel_rhs) /
                                    rep.plancherel_lhs);
    }
    return gap;
}

UncertaintyAuditReport uncertainty_audit_spectral(const DunklSetting& s,
                                                  const std::vector<ComponentSpectrum>& spectra,
                                                  const ThetaSpec& theta,
                                                  const std::vector<double>& x,
                                                  double shift_a, int m_max) {
    if (spectra.empty())
        throw std::invalid_argument("uncertainty_audit: no components");
    UncertaintyAuditReport rep;
    rep.x_r = norm2(x);
    rep.theta_class = classify_theta(theta);

    const auto& lambdas = spectra.front().b.lambdas;
    const double lk = s.lambda_kappa();
    double peak = 0.0;
    for (const auto& cs : spectra)
        for (double v : cs.b.values) peak = std::max(peak, std::abs(v));
    const bool zero_data = (peak == 0.0);
    if (!zero_data && peak < 1e-250)
        throw std::runtime_error(
            "uncertainty_audit: transform underflows across the whole window");

    rep.lambdas = lambdas;
    rep.transform_abs.resize(lambdas.size());
    rep.kernel_abs.resize(lambdas.size());
    rep.projection_abs.resize(lambdas.size());
    rep.envelope_constant.resize(lambdas.size());
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
        const double lam = lambdas[j];
        double tsum = 0.0;
        for (const auto& cs : spectra) tsum += std::abs(cs.b.values[j]);
        rep.transform_abs[j] = tsum;
        rep.kernel_abs[j] = std::abs(bessel_psi(lk, lam * rep.x_r));
        rep.projection_abs[j] = std::abs(projection_trace(s, spectra, x, lam));
        rep.envelope_constant[j] = rep.projection_abs[j] * std::exp(lam * theta(lam));
        rep.best_constant = std::max(rep.best_constant, rep.envelope_constant[j]);
    }

    SpectralSamples env = spectra.front().b;
    env.kind = TransformKind::hankel(lk);
    for (std::size_t j = 0; j < env.size(); ++j)
        env.values[j] = zero_data ? 0.0 : std::exp(-env.lambdas[j] * theta(env.lambdas[j]));
    rep.power_log_norms.resize(m_max);
    for (int m = 1; m <= m_max; ++m)
        rep.power_log_norms[m - 1] = spectral_power_log_norm(env, shift_a, m);
    rep.carleman = carleman_verdict_from_log_norms(rep.power_log_norms);
    rep.obstruction_evidence = (rep.theta_class.verdict == ThetaClass::Divergent) &&
                               rep.carleman.positive_trend &&
                               rep.carleman.verdict == CarlemanVerdictKind::Diverging;
    return rep;
}

UncertaintyAuditReport uncertainty_audit_thm13(const DunklSetting& s,
                                               const std::vector<HarmonicComponent>& comps,
                                               double vanish_radius, const ThetaSpec& theta,
                                               const std::vector<double>& x,
                                               const RadialGrid& lambda_grid,
                                               double shift_a, int m_max) {
    std::vector<ComponentSpectrum> spectra;
    spectra.reserve(comps.size());
    for (const auto& comp : comps) {
        const double peak = comp.radial_profile.max_abs();
        for (std::size_t i = 0; i < comp.radial_profile.grid.size(); ++i) {
            if (comp.radial_profile.grid.nodes[i] >= vanish_radius) break;
            if (std::abs(comp.radial_profile.values[i]) > 1e-14 * peak)
                throw std::domain_error(
                    "uncertainty_audit_thm13: component does not vanish on [0, l)");
        }
        spectra.push_back(component_transform(s, comp, lambda_grid));
    }
    return uncertainty_audit_spectral(s, spectra, theta, x, shift_a, m_max);
}

} // namespace specproj
