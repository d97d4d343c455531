#include "specproj/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace specproj {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Flags a window whose integrand has not decayed by its far end: the
// largest magnitude over the last 5% of nodes vs the global peak.
bool tail_decayed(const std::vector<double>& nodes, const std::vector<double>& mags) {
    if (nodes.size() < 20) return true;
    double peak = 0.0;
    for (double m : mags) peak = std::max(peak, m);
    if (peak == 0.0) return true;
    const std::size_t from = nodes.size() - std::max<std::size_t>(1, nodes.size() / 20);
    double tail = 0.0;
    for (std::size_t i = from; i < mags.size(); ++i) tail = std::max(tail, mags[i]);
    return tail <= 1e-10 * peak;
}

double weighted_l2(const SampledRadialFunction& f,
                   const std::function<double(double)>& density) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.grid.size(); ++i) {
        const double v = f.values[i];
        s += f.grid.weights[i] * v * v * density(f.grid.nodes[i]);
    }
    return std::sqrt(s);
}

} // namespace

TransformKind TransformKind::hankel(double alpha) {
    if (!(alpha > -1.0))
        throw std::domain_error("TransformKind::hankel: alpha must exceed -1");
    TransformKind k;
    k.family = Family::Hankel;
    k.alpha = alpha;
    return k;
}

TransformKind TransformKind::jacobi_pair(const JacobiParams& p) {
    TransformKind k;
    k.family = Family::Jacobi;
    k.jacobi = p;
    return k;
}

TransformKind TransformKind::custom() { return {}; }

double TransformKind::density(double lambda) const {
    switch (family) {
        case Family::Hankel:
            return std::exp((2.0 * alpha + 1.0) * std::log(std::abs(lambda)) -
                            alpha * std::log(2.0) - std::lgamma(alpha + 1.0));
        case Family::Jacobi:
            return c_function_inv_sq(*jacobi, lambda) / (2.0 * kPi);
        case Family::Custom:
            return 1.0;
    }
    return 1.0;
}

double TransformKind::natural_shift(double bessel_a) const {
    return (family == Family::Jacobi) ? jacobi->rho() : bessel_a;
}

double SpectralSamples::interp(double lambda) const {
    lambda = std::abs(lambda);
    if (lambdas.empty() || lambda > lambdas.back()) return 0.0;
    const auto it = std::upper_bound(lambdas.begin(), lambdas.end(), lambda);
    if (it == lambdas.begin()) return values.front();
    if (it == lambdas.end()) return values.back();
    const std::size_t i = static_cast<std::size_t>(it - lambdas.begin());
    const double t = (lambda - lambdas[i - 1]) / (lambdas[i] - lambdas[i - 1]);
    return (1.0 - t) * values[i - 1] + t * values[i];
}

SpectralSamples SpectralSamples::on_grid(const RadialGrid& g, TransformKind kind) {
    SpectralSamples s;
    s.lambdas = g.nodes;
    s.lambda_weights = g.weights;
    s.values.assign(g.size(), 0.0);
    s.kind = kind;
    return s;
}

RadialGrid mirrored_lambda_grid(const RadialGrid& r_grid, double lambda_cap) {
    const double dr = r_grid.r_max() / static_cast<double>(r_grid.size());
    const double lambda_max = std::min(lambda_cap, kPi / (4.0 * dr));
    const int panels =
        std::max(8, static_cast<int>(std::ceil(lambda_max * r_grid.r_max() / kPi)) + 4);
    return make_grid(lambda_max, panels, 8);
}

SpectralSamples hankel_forward(const SampledRadialFunction& f, double alpha,
                               const RadialGrid& lambda_grid) {
    SpectralSamples out = SpectralSamples::on_grid(lambda_grid, TransformKind::hankel(alpha));
    const TransformKind& k = out.kind;
    const std::size_t nr = f.grid.size();
    std::vector<double> fw(nr), mags(nr);
    for (std::size_t i = 0; i < nr; ++i) {
        fw[i] = f.grid.weights[i] * f.values[i] * k.density(f.grid.nodes[i]);
        mags[i] = std::abs(f.values[i] * k.density(f.grid.nodes[i]));
    }
    parallel_for(out.size(), [&](std::size_t j) {
        const double lam = out.lambdas[j];
        double s = 0.0;
        for (std::size_t i = 0; i < nr; ++i)
            s += fw[i] * bessel_psi(alpha, lam * f.grid.nodes[i]);
        out.values[j] = s;
    });
    out.tail_ok = tail_decayed(f.grid.nodes, mags);
    return out;
}

SampledRadialFunction hankel_inverse(const SpectralSamples& F, double alpha,
                                     const RadialGrid& r_grid) {
    const TransformKind k = TransformKind::hankel(alpha);
    const std::size_t nl = F.size();
    std::vector<double> fw(nl), mags(nl);
    for (std::size_t j = 0; j < nl; ++j) {
        fw[j] = F.lambda_weights[j] * F.values[j] * k.density(F.lambdas[j]);
        mags[j] = std::abs(F.values[j] * k.density(F.lambdas[j]));
    }
    std::vector<double> vals(r_grid.size(), 0.0);
    parallel_for(r_grid.size(), [&](std::size_t i) {
        const double r = r_grid.nodes[i];
        double s = 0.0;
        for (std::size_t j = 0; j < nl; ++j)
            s += fw[j] * bessel_psi(alpha, F.lambdas[j] * r);
        vals[i] = s;
    });
    SampledRadialFunction g(r_grid, std::move(vals));
    return g;
}

SpectralSamples jacobi_forward(const SampledRadialFunction& f, const JacobiParams& p,
                               const RadialGrid& lambda_grid) {
    SpectralSamples out = SpectralSamples::on_grid(lambda_grid, TransformKind::jacobi_pair(p));
    const std::size_t nr = f.grid.size();
    std::vector<double> fw(nr), mags(nr);
    for (std::size_t i = 0; i < nr; ++i) {
        const double w = jacobi_weight(p, f.grid.nodes[i]);
        fw[i] = f.grid.weights[i] * f.values[i] * w;
        mags[i] = std::abs(f.values[i]) * w * std::exp(-p.rho() * f.grid.nodes[i]);
    }
    parallel_for(out.size(), [&](std::size_t j) {
        const JacobiPhi phi(p, out.lambdas[j]);
        double s = 0.0;
        for (std::size_t i = 0; i < nr; ++i)
            s += fw[i] * phi(f.grid.nodes[i]);
        out.values[j] = s;
    });
    out.tail_ok = tail_decayed(f.grid.nodes, mags);
    return out;
}

SampledRadialFunction jacobi_inverse(const SpectralSamples& F, const JacobiParams& p,
                                     const RadialGrid& r_grid) {
    const std::size_t nl = F.size();
    std::vector<double> fw(nl), mags(nl);
    for (std::size_t j = 0; j < nl; ++j) {
        const double dens = c_function_inv_sq(p, F.lambdas[j]) / (2.0 * kPi);
        fw[j] = F.lambda_weights[j] * F.values[j] * dens;
        mags[j] = std::abs(F.values[j]) * dens;
    }
    // phi evaluators are per-lambda; accumulate r-profiles lambda-major so
    // each evaluator is built once.
    std::vector<double> vals(r_grid.size(), 0.0);
    const int nt = thread_count();
    std::vector<std::vector<double>> partial(nt, std::vector<double>(r_grid.size(), 0.0));
    parallel_for(nt, [&](std::size_t t) {
        auto& acc = partial[t];
        for (std::size_t j = t; j < nl; j += nt) {
            const JacobiPhi phi(p, F.lambdas[j]);
            for (std::size_t i = 0; i < r_grid.size(); ++i)
                acc[i] += fw[j] * phi(r_grid.nodes[i]);
        }
    });
    for (int t = 0; t < nt; ++t)
        for (std::size_t i = 0; i < r_grid.size(); ++i) vals[i] += partial[t][i];
    return {r_grid, std::move(vals)};
}

TransformPairReport plancherel_check(const SampledRadialFunction& f,
                                     const TransformKind& kind,
                                     const RadialGrid& lambda_grid) {
    TransformPairReport rep;
    SampledRadialFunction back;
    std::function<double(double)> r_density, l_density;
    if (kind.family == TransformKind::Family::Hankel) {
        rep.forward = hankel_forward(f, kind.alpha, lambda_grid);
        back = hankel_inverse(rep.forward, kind.alpha, f.grid);
        r_density = [&](double r) { return kind.density(r); };
        l_density = [&](double lam) { return kind.density(lam); };
    } else if (kind.family == TransformKind::Family::Jacobi) {
        const JacobiParams& p = *kind.jacobi;
        rep.forward = jacobi_forward(f, p, lambda_grid);
        back = jacobi_inverse(rep.forward, p, f.grid);
        r_density = [p](double r) { return jacobi_weight(p, r); };
        l_density = [&](double lam) { return kind.density(lam); };
    } else {
        throw std::invalid_argument("plancherel_check: custom kind has no pair");
    }

    double lhs2 = 0.0, rhs2 = 0.0, diff2 = 0.0, norm2 = 0.0;
    for (std::size_t i = 0; i < f.grid.size(); ++i) {
        const double w = f.grid.weights[i] * r_density(f.grid.nodes[i]);
        lhs2 += w * f.values[i] * f.values[i];
        const double d = back.values[i] - f.values[i];
        diff2 += w * d * d;
        norm2 += w * f.values[i] * f.values[i];
    }
    for (std::size_t j = 0; j < rep.forward.size(); ++j) {
        const double w = rep.forward.lambda_weights[j] * l_density(rep.forward.lambdas[j]);
        rhs2 += w * rep.forward.values[j] * rep.forward.values[j];
    }
    rep.plancherel_lhs = lhs2;
    rep.plancherel_rhs = rhs2;
    rep.roundtrip_l2_rel_error = (norm2 > 0.0) ? std::sqrt(diff2 / norm2) : 0.0;
    return rep;
}

double spectral_l2_norm(const SpectralSamples& F) {
    double s = 0.0;
    for (std::size_t j = 0; j < F.size(); ++j) {
        const double v = F.values[j];
        s += F.lambda_weights[j] * F.kind.density(F.lambdas[j]) * v * v;
    }
    return std::sqrt(s);
}

double spectral_power_log_norm(const SpectralSamples& F, double shift, int m) {
    if (m < 0)
        throw std::domain_error("spectral_power_norm: m must be nonnegative");
    // log sum_j w_j W(lambda_j) |F_j|^2 (lambda_j^2 + shift^2)^{2m}, halved.
    double peak = -kInf;
    std::vector<double> logs;
    logs.reserve(F.size());
    for (std::size_t j = 0; j < F.size(); ++j) {
        const double v = std::abs(F.values[j]);
        if (v == 0.0) continue;
        const double base = F.lambda_weights[j] * F.kind.density(F.lambdas[j]);
        if (base <= 0.0) continue;
        const double lg = std::log(base) + 2.0 * std::log(v) +
                          2.0 * m * std::log(F.lambdas[j] * F.lambdas[j] + shift * shift);
        logs.push_back(lg);
        peak = std::max(peak, lg);
    }
    if (logs.empty()) return -kInf;
    double acc = 0.0;
    for (double lg : logs) acc += std::exp(lg - peak);
    return 0.5 * (peak + std::log(acc));
}

SpectralPowerResult spectral_power_norm(const SpectralSamples& F, double shift, int m) {
    SpectralPowerResult out;
    out.log_value = spectral_power_log_norm(F, shift, m);
    if (out.log_value > 700.0) {
        out.overflow = true;
        out.value = kInf;
    } else {
        out.value = std::exp(out.log_value);
    }
    return out;
}

} // namespace specproj
