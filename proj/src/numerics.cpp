#include "specproj/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace specproj {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
}

void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
    if (order < 1)
        throw std::domain_error("gauss_legendre: order must be positive");
    nodes.assign(order, 0.0);
    weights.assign(order, 0.0);
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton iteration on P_n from the Chebyshev-like initial guess.
        double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < order; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = order * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[order - 1 - i] = weights[i];
    }
}

RadialGrid make_grid(double r_max, int panels, int order) {
    if (!(r_max > 0.0) || panels < 1 || order < 1)
        throw std::domain_error("make_grid: r_max, panels and order must be positive");
    std::vector<double> gx, gw;
    gauss_legendre(order, gx, gw);
    RadialGrid grid;
    grid.scheme = RadialGrid::Scheme::GaussLegendre;
    grid.nodes.reserve(static_cast<std::size_t>(panels) * order);
    grid.weights.reserve(static_cast<std::size_t>(panels) * order);
    const double h = r_max / panels;
    for (int p = 0; p < panels; ++p) {
        const double a = p * h;
        for (int j = 0; j < order; ++j) {
            grid.nodes.push_back(a + 0.5 * h * (gx[j] + 1.0));
            grid.weights.push_back(0.5 * h * gw[j]);
        }
    }
    return grid;
}

RadialGrid make_graded_grid(double r_max, int panels, int order, double graded_len,
                            int graded_panels) {
    if (!(r_max > graded_len) || panels < 1 || order < 1 || graded_panels < 2)
        throw std::domain_error("make_graded_grid: bad parameters");
    std::vector<double> gx, gw;
    gauss_legendre(order, gx, gw);
    RadialGrid grid;
    grid.scheme = RadialGrid::Scheme::GaussLegendre;
    auto push_panel = [&](double a, double b) {
        const double h = b - a;
        for (int j = 0; j < order; ++j) {
            grid.nodes.push_back(a + 0.5 * h * (gx[j] + 1.0));
            grid.weights.push_back(0.5 * h * gw[j]);
        }
    };
    double left = 0.0;
    for (int p = 0; p < graded_panels; ++p) {
        const double right = graded_len * std::pow(2.0, p + 1 - graded_panels);
        push_panel(left, right);
        left = right;
    }
    const double h = (r_max - graded_len) / panels;
    for (int p = 0; p < panels; ++p)
        push_panel(graded_len + p * h, graded_len + (p + 1) * h);
    return grid;
}

RadialGrid make_trapezoid_grid(double r_max, int n) {
    if (!(r_max > 0.0) || n < 1)
        throw std::domain_error("make_trapezoid_grid: r_max and n must be positive");
    RadialGrid grid;
    grid.scheme = RadialGrid::Scheme::Trapezoid;
    const double h = r_max / n;
    grid.nodes.resize(n + 1);
    grid.weights.assign(n + 1, h);
    for (int i = 0; i <= n; ++i) grid.nodes[i] = i * h;
    grid.weights.front() = 0.5 * h;
    grid.weights.back() = 0.5 * h;
    return grid;
}

SampledRadialFunction::SampledRadialFunction(RadialGrid g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
    if (grid.nodes.size() != values.size())
        throw std::invalid_argument("SampledRadialFunction: node/value length mismatch");
}

SampledRadialFunction SampledRadialFunction::tabulate(
    const RadialGrid& g, const std::function<double(double)>& f) {
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g.nodes[i]);
    return {g, std::move(v)};
}

double SampledRadialFunction::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double SampledRadialFunction::interp(double r) const {
    const auto& x = grid.nodes;
    if (x.empty() || r < x.front() || r > x.back()) return 0.0;
    const auto it = std::upper_bound(x.begin(), x.end(), r);
    if (it == x.begin()) return values.front();
    if (it == x.end()) return values.back();
    const std::size_t i = static_cast<std::size_t>(it - x.begin());
    const double t = (r - x[i - 1]) / (x[i] - x[i - 1]);
    return (1.0 - t) * values[i - 1] + t * values[i];
}

double integrate(const SampledRadialFunction& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        s += f.grid.weights[i] * f.values[i];
    return s;
}

double integrate(const SampledRadialFunction& f,
                 const std::function<double(double)>& extra_weight) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        s += f.grid.weights[i] * f.values[i] * extra_weight(f.grid.nodes[i]);
    return s;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double A21 = 1.0 / 5.0;
constexpr double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0;
constexpr double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0;
constexpr double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0,
                 A53 = 64448.0 / 6561.0, A54 = -212.0 / 729.0;
constexpr double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0, A63 = 46732.0 / 5247.0,
                 A64 = 49.0 / 176.0, A65 = -5103.0 / 18656.0;
constexpr double B1 = 35.0 / 384.0, B3 = 500.0 / 1113.0, B4 = 125.0 / 192.0,
                 B5 = -2187.0 / 6784.0, B6 = 11.0 / 84.0;
constexpr double E1 = 71.0 / 57600.0, E3 = -71.0 / 16695.0, E4 = 71.0 / 1920.0,
                 E5 = -17253.0 / 339200.0, E6 = 22.0 / 525.0, E7 = -1.0 / 40.0;

using Vec2 = std::array<double, 2>;

Vec2 axpy(const Vec2& y, double h, const Vec2& d) {
    return {y[0] + h * d[0], y[1] + h * d[1]};
}

} // namespace

SampledRadialFunction ode_solve_ivp(const OdeRhs& rhs, double r0, Vec2 y0,
                                    const RadialGrid& out_grid, double tol) {
    if (!(tol > 0.0))
        throw std::domain_error("ode_solve_ivp: tol must be positive");
    std::vector<double> out(out_grid.size(), 0.0);

    double r = r0;
    Vec2 y = y0;
    std::size_t next = 0;
    while (next < out_grid.size() && out_grid.nodes[next] <= r0) {
        out[next++] = y0[0];
    }
    if (next >= out_grid.size()) return {out_grid, std::move(out)};

    double h = std::min(1e-2, (out_grid.r_max() - r0) / 16.0);
    Vec2 k1, k2, k3, k4, k5, k6, k7, tmp;
    rhs(r, y, k1);
    const double r_end = out_grid.r_max();
    int guard = 0;
    while (r < r_end) {
        if (++guard > 2000000)
            throw std::runtime_error("ode_solve_ivp: step budget exhausted");
        bool hit = false;
        if (r + h >= out_grid.nodes[next]) {
            h = out_grid.nodes[next] - r;
            hit = true;
        }
        if (h < 1e-15 * std::max(1.0, std::abs(r))) {
            if (hit) {
                // Node collides with the current position; emit and move on.
                out[next++] = y[0];
                if (next >= out_grid.size()) break;
                h = 1e-2;
                continue;
            }
            throw std::runtime_error("ode_solve_ivp: step underflow near r = " +
                                     std::to_string(r));
        }

        tmp = axpy(y, h * A21, k1);
        rhs(r + h / 5.0, tmp, k2);
        tmp = {y[0] + h * (A31 * k1[0] + A32 * k2[0]), y[1] + h * (A31 * k1[1] + A32 * k2[1])};
        rhs(r + 0.3 * h, tmp, k3);
        tmp = {y[0] + h * (A41 * k1[0] + A42 * k2[0] + A43 * k3[0]),
               y[1] + h * (A41 * k1[1] + A42 * k2[1] + A43 * k3[1])};
        rhs(r + 0.8 * h, tmp, k4);
        tmp = {y[0] + h * (A51 * k1[0] + A52 * k2[0] + A53 * k3[0] + A54 * k4[0]),
               y[1] + h * (A51 * k1[1] + A52 * k2[1] + A53 * k3[1] + A54 * k4[1])};
        rhs(r + 8.0 / 9.0 * h, tmp, k5);
        tmp = {y[0] + h * (A61 * k1[0] + A62 * k2[0] + A63 * k3[0] + A64 * k4[0] + A65 * k5[0]),
               y[1] + h * (A61 * k1[1] + A62 * k2[1] + A63 * k3[1] + A64 * k4[1] + A65 * k5[1])};
        rhs(r + h, tmp, k6);
        Vec2 y5 = {y[0] + h * (B1 * k1[0] + B3 * k3[0] + B4 * k4[0] + B5 * k5[0] + B6 * k6[0]),
                   y[1] + h * (B1 * k1[1] + B3 * k3[1] + B4 * k4[1] + B5 * k5[1] + B6 * k6[1])};
        rhs(r + h, y5, k7);

        const double e0 = h * (E1 * k1[0] + E3 * k3[0] + E4 * k4[0] + E5 * k5[0] +
                               E6 * k6[0] + E7 * k7[0]);
        const double e1 = h * (E1 * k1[1] + E3 * k3[1] + E4 * k4[1] + E5 * k5[1] +
                               E6 * k6[1] + E7 * k7[1]);
        const double sc0 = 1.0 + std::abs(y[0]);
        const double sc1 = 1.0 + std::abs(y[1]);
        const double err = std::sqrt(0.5 * ((e0 / sc0) * (e0 / sc0) + (e1 / sc1) * (e1 / sc1)));

        if (err <= tol) {
            r += h;
            y = y5;
            k1 = k7;
            if (hit) {
                out[next++] = y[0];
                if (next >= out_grid.size()) break;
            }
        }
        const double fac =
            (err > 0.0) ? std::clamp(0.9 * std::pow(tol / err, 0.2), 0.2, 5.0) : 5.0;
        h = std::min(h * fac, r_end - r + 1e-30);
        if (h <= 0.0) h = 1e-12;
    }
    return {out_grid, std::move(out)};
}

SampledRadialFunction jacobi_phi_via_ode(const JacobiParams& p, double lambda,
                                         const RadialGrid& out_grid, double tol) {
    const double ev = lambda * lambda + p.rho() * p.rho();
    const double a1 = 2.0 * p.alpha + 1.0;
    const double b1 = 2.0 * p.beta + 1.0;
    OdeRhs rhs = [=](double r, const Vec2& y, Vec2& dy) {
        dy[0] = y[1];
        dy[1] = -(a1 / std::tanh(r) + b1 * std::tanh(r)) * y[1] - ev * y[0];
    };
    const double r0 = 1e-4;
    const Vec2 y0 = {1.0 - ev * r0 * r0 / (2.0 * (2.0 * p.alpha + 2.0)),
                     -ev * r0 / (2.0 * p.alpha + 2.0)};
    return ode_solve_ivp(rhs, r0, y0, out_grid, tol);
}

DifferentialOp DifferentialOp::bessel(double alpha, double a) {
    if (!(alpha > -1.0))
        throw std::domain_error("DifferentialOp::bessel: alpha must exceed -1");
    DifferentialOp op;
    op.kind = Kind::BesselShifted;
    op.alpha = alpha;
    op.a = a;
    return op;
}

DifferentialOp DifferentialOp::jacobi(const JacobiParams& p) {
    DifferentialOp op;
    op.kind = Kind::Jacobi;
    op.jac_alpha = p.alpha;
    op.jac_beta = p.beta;
    return op;
}

double DifferentialOp::coeff_B(double r) const {
    if (kind == Kind::BesselShifted) return (2.0 * alpha + 1.0) / r;
    return (2.0 * jac_alpha + 1.0) / std::tanh(r) + (2.0 * jac_beta + 1.0) * std::tanh(r);
}

double DifferentialOp::coeff_C() const {
    return (kind == Kind::BesselShifted) ? -a * a : 0.0;
}

void fd_weights(double x0, const std::vector<double>& x, int m,
                std::vector<std::vector<double>>& c) {
    // Fornberg's recursive generation of interpolation-based FD weights.
    const int n = static_cast<int>(x.size()) - 1;
    c.assign(x.size(), std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
}

SampledRadialFunction apply_operator_fd(const SampledRadialFunction& f,
                                        const DifferentialOp& op) {
    // Radial profiles are even extensions, so the left boundary stencils
    // reflect across 0; that keeps the first-derivative error symmetric
    // where the 1/r coefficient would otherwise amplify a one-sided bias.
    const auto& x = f.grid.nodes;
    const std::size_t n = x.size();
    if (n < 5)
        throw std::invalid_argument("apply_operator_fd: need at least 5 nodes");
    std::vector<double> out(n, 0.0);
    std::vector<double> stencil(5), sval(5);
    std::vector<std::vector<double>> w;
    for (std::size_t i = 0; i < n; ++i) {
        if (i < 2 && x[0] > 0.0) {
            for (int j = 0; j < 5; ++j) {
                const int k = static_cast<int>(i) + j - 2;
                const std::size_t src = (k < 0) ? static_cast<std::size_t>(-k - 1)
                                                : static_cast<std::size_t>(k);
                stencil[j] = (k < 0) ? -x[src] : x[src];
                sval[j] = f.values[src];
            }
        } else {
            const std::size_t lo = (i < 2) ? 0 : std::min(i - 2, n - 5);
            for (int j = 0; j < 5; ++j) {
                stencil[j] = x[lo + j];
                sval[j] = f.values[lo + j];
            }
        }
        fd_weights(x[i], stencil, 2, w);
        double d1 = 0.0, d2 = 0.0;
        for (int j = 0; j < 5; ++j) {
            d1 += w[j][1] * sval[j];
            d2 += w[j][2] * sval[j];
        }
        const double r = x[i];
        if (r < 1e-12) {
            // Removable singularity of B(r) at 0 for even profiles:
            // u''(0) + B(r) u'(0+) -> (2 alpha + 2) u''(0).
            const double two_a = (op.kind == DifferentialOp::Kind::BesselShifted)
                                     ? op.alpha
                                     : op.jac_alpha;
            out[i] = (2.0 * two_a + 2.0) * d2 + op.coeff_C() * f.values[i];
        } else {
            out[i] = d2 + op.coeff_B(r) * d1 + op.coeff_C() * f.values[i];
        }
    }
    SampledRadialFunction g(f.grid, std::move(out));
    g.support_hint = f.support_hint;
    return g;
}

double eigen_residual(const SampledRadialFunction& f, const DifferentialOp& op,
                      double eigenvalue, double r_lo, double r_hi) {
    const SampledRadialFunction lf = apply_operator_fd(f, op);
    const double scale = std::abs(eigenvalue) * f.max_abs();
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < f.grid.size(); ++i) {
        const double r = f.grid.nodes[i];
        if (r < r_lo || r > r_hi) continue;
        worst = std::max(worst, std::abs(lf.values[i] - eigenvalue * f.values[i]));
    }
    return worst / scale;
}

double operator_fd_selfcheck(const RadialGrid& grid, const DifferentialOp& op,
                             double lambda) {
    SampledRadialFunction f;
    double ev = 0.0;
    if (op.kind == DifferentialOp::Kind::BesselShifted) {
        f = SampledRadialFunction::tabulate(
            grid, [&](double r) { return bessel_psi(op.alpha, lambda * r); });
        ev = -(lambda * lambda + op.a * op.a);
    } else {
        const JacobiParams p(op.jac_alpha, op.jac_beta);
        const JacobiPhi phi(p, lambda);
        f = SampledRadialFunction::tabulate(grid, [&](double r) { return phi(r); });
        ev = -(lambda * lambda + p.rho() * p.rho());
    }
    const double lo = grid.nodes.front() + 0.05 * grid.r_max();
    const double hi = 0.95 * grid.r_max();
    return eigen_residual(f, op, ev, lo, hi);
}

int thread_count() {
    if (const char* env = std::getenv("SPECPROJ_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return std::min(n, 64);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return std::clamp<int>(static_cast<int>(hw), 1, 16);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const int nt = thread_count();
    if (nt <= 1 || n < 32) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace specproj
