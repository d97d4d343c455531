#include "specproj/ingham.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace specproj {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double den = n * sxx - sx * sx;
    return (den != 0.0) ? (n * sxy - sx * sy) / den : 0.0;
}

} // namespace

ThetaSpec ThetaSpec::inv_sqrt() {
    return {"inv-sqrt", [](double t) { return 1.0 / std::sqrt(1.0 + t); }};
}

ThetaSpec ThetaSpec::inv_log() {
    return {"inv-log", [](double t) { return 1.0 / std::log(std::exp(1.0) + t); }};
}

ThetaSpec ThetaSpec::log_log() {
    return {"log-log", [](double t) {
                const double l = std::log(std::exp(1.0) + t);
                const double ll = std::log(std::log(std::exp(std::exp(1.0)) + t));
                return 1.0 / (l * ll);
            }};
}

ThetaSpec ThetaSpec::zero() {
    return {"zero", [](double) { return 0.0; }};
}

ThetaSpec ThetaSpec::from_table(std::vector<std::pair<double, double>> rows,
                                std::string name) {
    if (rows.size() < 2)
        throw std::invalid_argument("ThetaSpec::from_table: need at least two rows");
    std::sort(rows.begin(), rows.end());
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].first == rows[i - 1].first)
            throw std::invalid_argument("ThetaSpec::from_table: duplicate abscissa " +
                                        std::to_string(rows[i].first));
        if (rows[i].second > rows[i - 1].second + 1e-12)
            throw std::invalid_argument(
                "ThetaSpec::from_table: values must be nonincreasing (row " +
                std::to_string(i + 1) + ")");
        if (rows[i].second < 0.0)
            throw std::invalid_argument("ThetaSpec::from_table: negative value");
    }
    auto table = std::make_shared<std::vector<std::pair<double, double>>>(std::move(rows));
    return {std::move(name), [table](double t) {
                const auto& v = *table;
                if (t <= v.front().first) return v.front().second;
                if (t >= v.back().first) return v.back().second;
                auto it = std::upper_bound(v.begin(), v.end(), std::make_pair(t, kInf));
                const auto hi = *it;
                const auto lo = *(it - 1);
                const double u = (t - lo.first) / (hi.first - lo.first);
                return (1.0 - u) * lo.second + u * hi.second;
            }};
}

ThetaSpec ThetaSpec::by_name(const std::string& name) {
    if (name == "inv-sqrt") return inv_sqrt();
    if (name == "inv-log") return inv_log();
    if (name == "log-log") return log_log();
    if (name == "zero") return zero();
    throw std::invalid_argument("unknown theta '" + name +
                                "' (built-ins: inv-sqrt, inv-log, log-log, zero)");
}

const char* to_string(ThetaClass c) {
    switch (c) {
        case ThetaClass::Divergent: return "divergent";
        case ThetaClass::Convergent: return "convergent";
        default: return "undetermined";
    }
}

ThetaClassification classify_theta(const ThetaSpec& theta, double t_max) {
    if (!(t_max > 4.0))
        throw std::domain_error("classify_theta: t_max must exceed 4");
    // Monotonicity and vanishing checks on a geometric grid.
    double prev = theta(1.0);
    if (prev < 0.0) throw std::domain_error("classify_theta: theta must be nonnegative");
    for (double t = 1.0; t <= t_max * 1.0001; t *= 1.5) {
        const double v = theta(t);
        if (v > prev + 1e-12 * (1.0 + std::abs(prev)))
            throw std::domain_error("classify_theta: theta is not nonincreasing near t = " +
                                    std::to_string(t));
        prev = v;
    }
    if (theta(1.0) > 0.0 && theta(t_max) > 0.9 * theta(1.0))
        throw std::domain_error("classify_theta: theta does not vanish at infinity");

    ThetaClassification out;
    const int K = static_cast<int>(std::floor(std::log2(t_max)));
    std::vector<double> gx, gw;
    gauss_legendre(16, gx, gw);
    std::vector<double> incr;
    double acc = 0.0;
    for (int k = 0; k < K; ++k) {
        const double a = std::pow(2.0, k), b = std::pow(2.0, k + 1);
        double s = 0.0;
        for (std::size_t j = 0; j < gx.size(); ++j) {
            const double t = a + 0.5 * (b - a) * (gx[j] + 1.0);
            s += 0.5 * (b - a) * gw[j] * theta(t) / t;
        }
        incr.push_back(s);
        acc += s;
        out.partial_integrals.push_back({b, acc});
    }

    double peak = 0.0;
    for (double d : incr) peak = std::max(peak, d);
    if (peak < 1e-14) {
        out.verdict = ThetaClass::Convergent;
        return out;
    }

    // Increment ratios: geometric decay reads convergent outright; otherwise
    // fit increments ~ c k^{-p} over windows and band on p. A fitted slope
    // that keeps sliding downward between the early and late windows is the
    // signature of harmonic decay with logarithmic corrections, whose sum
    // still diverges; a stable slope is a genuine power.
    const std::size_t nk = incr.size();
    double ratio_median;
    {
        std::vector<double> ratios;
        for (std::size_t k = nk / 2; k + 1 < nk; ++k)
            if (incr[k] > 0.0 && incr[k + 1] > 0.0) ratios.push_back(incr[k + 1] / incr[k]);
        if (ratios.empty()) {
            out.verdict = ThetaClass::Convergent;  // increments died out
            return out;
        }
        std::sort(ratios.begin(), ratios.end());
        ratio_median = ratios[ratios.size() / 2];
    }
    auto fit_window = [&](std::size_t lo, std::size_t hi) {
        std::vector<double> lk, ld;
        for (std::size_t k = lo; k < std::min(hi, nk); ++k) {
            if (incr[k] <= 0.0) continue;
            lk.push_back(std::log(static_cast<double>(k + 1)));
            ld.push_back(std::log(incr[k]));
        }
        return -fit_slope(lk, ld);
    };
    const double p = fit_window(nk / 2, nk);
    const double p_early = fit_window(nk / 4, nk / 2 + 1);
    const double p_late = fit_window(3 * nk / 4, nk);
    const double drift = p_early - p_late;
    out.decay_exponent = p;

    if (ratio_median <= 0.9) {
        out.verdict = ThetaClass::Convergent;
        out.tail_estimate = incr.back() * ratio_median / (1.0 - ratio_median);
    } else if (p <= 1.1) {
        out.verdict = ThetaClass::Divergent;
    } else if (drift >= 0.08 && p_late <= 1.45) {
        out.verdict = ThetaClass::Divergent;
    } else if (p >= 1.5 && drift <= 0.04) {
        out.verdict = ThetaClass::Convergent;
        out.tail_estimate = incr.back() * static_cast<double>(nk) / (p - 1.0);
    } else {
        out.verdict = ThetaClass::Undetermined;
    }
    return out;
}

double BoxProduct::total_support() const {
    double s = 0.0;
    for (double a : lengths) s += a;
    return s;
}

double BoxProduct::hat(double xi) const {
    double p = 1.0;
    for (double a : lengths) p *= sinc(a * xi);
    return p;
}

namespace {

// Exact moving average of the even piecewise-linear extension of the
// sampled half-line profile: (M_a f)(x) = (2a)^{-1} Int_{x-a}^{x+a} f.
std::vector<double> box_average(const std::vector<double>& v, double h, double a) {
    const std::size_t n = v.size();
    // F[i] = Int_0^{x_i} f with the piecewise-linear interpolant.
    std::vector<double> F(n, 0.0);
    for (std::size_t i = 1; i < n; ++i)
        F[i] = F[i - 1] + 0.5 * (v[i] + v[i - 1]) * h;
    auto cum = [&](double t) -> double {   // odd extension handles t < 0
        const double s = (t < 0.0) ? -1.0 : 1.0;
        t = std::abs(t);
        if (t >= (n - 1) * h) return s * F[n - 1];
        const std::size_t i = static_cast<std::size_t>(t / h);
        const double u = t - i * h;
        const double slope = (v[i + 1] - v[i]) / h;
        return s * (F[i] + v[i] * u + 0.5 * slope * u * u);
    };
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = i * h;
        out[i] = (cum(x + a) - cum(x - a)) / (2.0 * a);
    }
    return out;
}

} // namespace

BoxConstruction construct_box_product(const ThetaSpec& theta, int N,
                                      double support_budget) {
    if (N < 1) throw std::domain_error("construct_box_product: N must be >= 1");
    if (!(support_budget > 0.0))
        throw std::domain_error("construct_box_product: support budget must be positive");
    const ThetaClassification cls = classify_theta(theta);
    if (cls.verdict != ThetaClass::Convergent)
        throw std::domain_error(
            "construct_box_product: modulus must classify convergent, got " +
            std::string(to_string(cls.verdict)));

    BoxConstruction out;
    out.box.lengths.resize(N);
    const double ln2 = std::log(2.0);
    double sum = 0.0;
    for (int k = 1; k <= N; ++k) {
        out.box.lengths[k - 1] = theta(std::pow(2.0, k)) * ln2;
        sum += out.box.lengths[k - 1];
    }
    if (!(sum > 0.0))
        throw std::domain_error("construct_box_product: modulus vanished on the dyadic grid");
    double calibration = 1.0;
    if (sum > support_budget) {
        calibration = support_budget / sum;
        if (calibration < 0.01)
            throw std::domain_error(
                "construct_box_product: dyadic sums exceed the support budget "
                "beyond the calibration floor (needed " +
                std::to_string(sum) + ")");
    }
    for (double& a : out.box.lengths) a *= calibration;

    // Iterated exact moving averages on a uniform half-line grid. The seed
    // is the closed-form convolution of the two largest boxes (a trapezoid,
    // already piecewise linear), so no jump has to sit on a grid line.
    const double S = out.box.total_support();
    const int cells = 16384;
    const double h = S / cells;
    std::vector<double> v(cells + 1, 0.0);
    const double a1 = out.box.lengths[0];
    if (N == 1) {
        for (int i = 0; i <= cells; ++i) v[i] = (i * h <= a1) ? 1.0 / (2.0 * a1) : 0.0;
    } else {
        const double a2 = out.box.lengths[1];
        for (int i = 0; i <= cells; ++i) {
            const double x = i * h;
            if (x <= a1 - a2)
                v[i] = 1.0 / (2.0 * a1);
            else if (x < a1 + a2)
                v[i] = (a1 + a2 - x) / (4.0 * a1 * a2);
            else
                v[i] = 0.0;
        }
        for (int k = 2; k < N; ++k) {
            const double a = out.box.lengths[k];
            if (a < 1e-300) continue;
            v = box_average(v, h, a);
        }
    }
    out.profile = SampledRadialFunction(make_trapezoid_grid(S, cells), std::move(v));
    out.profile.support_hint = std::array<double, 2>{0.0, S};

    // Decay certificate on the geometric window [1, 1e3].
    double C = 0.0;
    for (int i = 0; i <= 300; ++i) {
        const double xi = std::pow(10.0, 3.0 * i / 300.0);
        const double fh = std::abs(out.box.hat(xi));
        const double env = std::exp(-xi * theta(xi));
        out.envelope_trace.push_back({xi, fh, env});
        if (env > 0.0) C = std::max(C, fh / env);
    }
    out.envelope_constant = C;
    return out;
}

double profile_cosine_transform(const SampledRadialFunction& f, double xi) {
    // 2 Int_0^S f(x) cos(xi x) dx with f piecewise linear on its grid,
    // resolved in closed form cell by cell.
    const auto& x = f.grid.nodes;
    const auto& v = f.values;
    if (std::abs(xi) < 1e-12) {
        double s = 0.0;
        for (std::size_t i = 1; i < x.size(); ++i)
            s += 0.5 * (v[i] + v[i - 1]) * (x[i] - x[i - 1]);
        return 2.0 * s;
    }
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double a = x[i - 1], b = x[i];
        const double slope = (v[i] - v[i - 1]) / (b - a);
        const double c0 = v[i - 1] - slope * a;
        // Int (c0 + c1 x) cos(xi x) dx = c0 sin/xi + c1 (cos/xi^2 + x sin/xi)
        const double sb = std::sin(xi * b), sa = std::sin(xi * a);
        const double cb = std::cos(xi * b), ca = std::cos(xi * a);
        s += c0 * (sb - sa) / xi +
             slope * ((cb - ca) / (xi * xi) + (b * sb - a * sa) / xi);
    }
    return 2.0 * s;
}

double SupportReport::tail_mass_at(double r) const {
    for (const auto& row : tail_curve)
        if (row[0] >= r) return row[1];
    return tail_curve.empty() ? 1.0 : tail_curve.back()[1];
}

TransferResult transfer_via_paley_wiener(const SpectralSamples& fhat, double alpha,
                                         const RadialGrid& r_grid) {
    TransferResult out;
    out.g = hankel_inverse(fhat, alpha, r_grid);
    const TransformKind k = TransformKind::hankel(alpha);
    const std::size_t n = r_grid.size();
    std::vector<double> cum(n, 0.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = r_grid.weights[i] * k.density(r_grid.nodes[i]);
        acc += w * out.g.values[i] * out.g.values[i];
        cum[i] = acc;
    }
    if (!(acc > 0.0)) {
        out.support.r9999 = 0.0;
        out.support.tail_curve.push_back({r_grid.r_max(), 0.0});
        return out;
    }
    out.support.r9999 = r_grid.r_max();
    for (std::size_t i = 0; i < n; ++i) {
        if (cum[i] >= 0.9999 * acc) {
            out.support.r9999 = r_grid.nodes[i];
            break;
        }
    }
    const std::size_t stride = std::max<std::size_t>(1, n / 64);
    for (std::size_t i = 0; i < n; i += stride)
        out.support.tail_curve.push_back({r_grid.nodes[i], 1.0 - cum[i] / acc});
    out.support.tail_curve.push_back({r_grid.nodes[n - 1], 1.0 - cum[n - 1] / acc});
    const double tail_end = out.support.tail_mass_at(0.95 * r_grid.r_max());
    if (tail_end > 1e-6)
        throw std::runtime_error(
            "transfer_via_paley_wiener: window too small, tail mass " +
            std::to_string(tail_end) + " at the grid end");
    return out;
}

const char* to_string(CarlemanVerdictKind v) {
    switch (v) {
        case CarlemanVerdictKind::Diverging: return "diverging";
        case CarlemanVerdictKind::Converging: return "converging";
        default: return "inconclusive";
    }
}

CarlemanReport carleman_verdict_from_log_norms(const std::vector<double>& log_norms) {
    CarlemanReport rep;
    const std::size_t n = log_norms.size();
    rep.terms.resize(n);
    rep.partial_sums.resize(n);
    double s = 0.0;
    bool any_inf = false;
    for (std::size_t i = 0; i < n; ++i) {
        const int m = static_cast<int>(i) + 1;
        const double lt = -log_norms[i] / (2.0 * m);
        rep.terms[i] = std::exp(lt);
        if (log_norms[i] == -kInf) {
            rep.terms[i] = kInf;
            any_inf = true;
        }
        s += rep.terms[i];
        rep.partial_sums[i] = s;
    }
    if (n == 0) return rep;
    if (any_inf) {
        // Vacuous divergence: some norms vanish identically.
        rep.verdict = CarlemanVerdictKind::Diverging;
        rep.positive_trend = true;
        rep.shift_robust = true;
        rep.slope = 0.0;
        return rep;
    }

    auto fit_p = [&](std::size_t drop) {
        std::vector<double> lx, ly;
        for (std::size_t i = std::max(drop, n / 2); i < n; ++i) {
            if (rep.terms[i] <= 0.0) continue;
            lx.push_back(std::log(static_cast<double>(i + 1)));
            ly.push_back(std::log(rep.terms[i]));
        }
        return -fit_slope(lx, ly);
    };
    rep.slope = fit_p(0);

    const std::size_t q = std::max<std::size_t>(1, n / 4);
    double recent = 0.0;
    for (std::size_t i = n - q; i < n; ++i) recent += rep.terms[i];
    recent /= q;
    const double overall = rep.partial_sums.back() / n;
    rep.positive_trend = recent > 1e-12 && recent >= 0.1 * overall;

    auto band = [](double p) {
        if (p <= 1.1) return CarlemanVerdictKind::Diverging;
        if (p >= 1.5) return CarlemanVerdictKind::Converging;
        return CarlemanVerdictKind::Inconclusive;
    };
    rep.verdict = band(rep.slope);
    if (rep.partial_sums.back() > 1e3 && rep.positive_trend)
        rep.verdict = CarlemanVerdictKind::Diverging;
    rep.shift_robust = n > 6 && band(fit_p(3)) == rep.verdict;
    return rep;
}

CarlemanReport carleman_verdict(const std::vector<double>& norms) {
    std::vector<double> ln(norms.size());
    for (std::size_t i = 0; i < norms.size(); ++i) {
        if (norms[i] < 0.0)
            throw std::domain_error("carleman_verdict: norms must be nonnegative");
        ln[i] = (norms[i] == 0.0) ? -kInf : std::log(norms[i]);
    }
    return carleman_verdict_from_log_norms(ln);
}

MomentReport moment_report(const SpectralSamples& F, int m_max, double delta) {
    if (m_max < 1) throw std::domain_error("moment_report: m_max must be >= 1");
    MomentReport rep;

    // log-domain moments of |F(lambda)| W(lambda) dlambda.
    std::vector<double> base_log(F.size(), -kInf), log_lam(F.size(), -kInf);
    bool all_zero = true;
    for (std::size_t j = 0; j < F.size(); ++j) {
        const double v = std::abs(F.values[j]);
        const double w = F.lambda_weights[j] * F.kind.density(F.lambdas[j]);
        if (v > 0.0 && w > 0.0) {
            base_log[j] = std::log(v) + std::log(w);
            all_zero = false;
        }
        if (F.lambdas[j] > 0.0) log_lam[j] = std::log(F.lambdas[j]);
    }
    rep.moments.resize(m_max + 1, 0.0);
    rep.log_moments.resize(m_max + 1, -kInf);
    if (!all_zero) {
        for (int m = 0; m <= m_max; ++m) {
            double peak = -kInf;
            for (std::size_t j = 0; j < F.size(); ++j)
                if (base_log[j] != -kInf)
                    peak = std::max(peak, base_log[j] + 2.0 * m * log_lam[j]);
            double acc = 0.0;
            for (std::size_t j = 0; j < F.size(); ++j)
                if (base_log[j] != -kInf)
                    acc += std::exp(base_log[j] + 2.0 * m * log_lam[j] - peak);
            rep.log_moments[m] = peak + std::log(acc);
            rep.moments[m] = (rep.log_moments[m] > 700.0)
                                 ? kInf
                                 : std::exp(rep.log_moments[m]);
            if (rep.log_moments[m] > 700.0) rep.overflow = true;
        }
    }

    std::vector<double> log_even_moments(rep.log_moments.begin() + 1, rep.log_moments.end());
    rep.carleman = carleman_verdict_from_log_norms(log_even_moments);

    // Smallest j with a finite tail constant against the pair's polynomial
    // growth 2 alpha + 1; the window integral itself is used for C_j.
    double growth = 1.0;
    if (F.kind.family == TransformKind::Family::Hankel)
        growth = 2.0 * F.kind.alpha + 1.0;
    else if (F.kind.family == TransformKind::Family::Jacobi)
        growth = 2.0 * F.kind.jacobi->alpha + 1.0;
    int j = 1;
    while (4.0 * j - growth <= 1.0) ++j;
    rep.j_used = j;
    double cj2 = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i) {
        const double lam = F.lambdas[i];
        cj2 += F.lambda_weights[i] * F.kind.density(lam) *
               std::pow(lam * lam + delta * delta, -2.0 * j);
    }
    rep.cj = std::sqrt(cj2);

    rep.bound_rhs.resize(m_max + 1, 0.0);
    for (int m = 0; m <= m_max; ++m) {
        const double lg = spectral_power_log_norm(F, delta, m + j);
        rep.bound_rhs[m] = (lg > 700.0) ? kInf : rep.cj * std::exp(lg);
        if (rep.moments[m] > rep.bound_rhs[m] * (1.0 + 1e-12) &&
            !(rep.moments[m] == kInf && rep.bound_rhs[m] == kInf))
            rep.bound_holds = false;
    }
    return rep;
}

} // namespace specproj
