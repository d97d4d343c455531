// Grids, weighted quadrature, adaptive ODE integration and finite-difference
// application of the radial differential operators.

#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "specproj/specfun.hpp"

namespace specproj {

struct RadialGrid {
    enum class Scheme { GaussLegendre, Trapezoid };

    std::vector<double> nodes;     // strictly increasing, >= 0
    std::vector<double> weights;   // positive quadrature weights
    Scheme scheme = Scheme::GaussLegendre;

    std::size_t size() const { return nodes.size(); }
    double r_max() const { return nodes.empty() ? 0.0 : nodes.back(); }
};

// Composite Gauss-Legendre rule: `panels` equal panels on [0, r_max], each
// carrying an `order`-point rule. Exact for polynomials of degree
// 2*order - 1 per panel.
RadialGrid make_grid(double r_max, int panels, int order);

// Uniform trapezoid grid on [0, r_max] with n+1 nodes (includes both ends).
RadialGrid make_trapezoid_grid(double r_max, int n);

// Composite Gauss-Legendre rule whose first unit of length is refined
// geometrically toward 0 (ratio 2 panels down to ~1e-12). Keeps fractional
// power weights r^s, s > -1, integrable to near machine precision; the
// remainder of [0, r_max] carries `panels` uniform panels.
RadialGrid make_graded_grid(double r_max, int panels, int order,
                            double graded_len = 1.0, int graded_panels = 40);

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights);

struct SampledRadialFunction {
    RadialGrid grid;
    std::vector<double> values;
    std::optional<std::array<double, 2>> support_hint;

    SampledRadialFunction() = default;
    SampledRadialFunction(RadialGrid g, std::vector<double> v);
    static SampledRadialFunction tabulate(const RadialGrid& g,
                                          const std::function<double(double)>& f);

    double max_abs() const;
    // Linear interpolation between nodes; zero outside the grid.
    double interp(double r) const;
};

// Quadrature of f against an extra pointwise weight.
double integrate(const SampledRadialFunction& f);
double integrate(const SampledRadialFunction& f,
                 const std::function<double(double)>& extra_weight);

// y' = rhs(r, y) for the 2-vector y = (u, u'); adaptive Dormand-Prince 5(4)
// with local error <= tol, sampled at the output grid nodes (solution
// component u only). Throws std::runtime_error on step underflow.
using OdeRhs =
    std::function<void(double, const std::array<double, 2>&, std::array<double, 2>&)>;
SampledRadialFunction ode_solve_ivp(const OdeRhs& rhs, double r0,
                                    std::array<double, 2> y0,
                                    const RadialGrid& out_grid, double tol);

// Jacobi initial-value oracle: integrates the defining equation from
// r0 = 1e-4 with the two-term Taylor launch
// u ~ 1 - (lambda^2 + rho^2) r^2 / (2 (2 alpha + 2)).
SampledRadialFunction jacobi_phi_via_ode(const JacobiParams& p, double lambda,
                                         const RadialGrid& out_grid, double tol);

// Radial differential operators applied by finite differences.
struct DifferentialOp {
    enum class Kind { BesselShifted, Jacobi };
    Kind kind;
    double alpha = 0.0;   // Bessel order
    double a = 0.0;       // Bessel shift (L = Delta_alpha - a^2)
    double jac_alpha = 0.0, jac_beta = 0.0;

    static DifferentialOp bessel(double alpha, double a);
    static DifferentialOp jacobi(const JacobiParams& p);

    // First-order coefficient and zeroth-order term of
    // L u = u'' + B(r) u' + C u.
    double coeff_B(double r) const;
    double coeff_C() const;
};

// Pointwise application of the operator by 5-point finite differences on
// the (possibly nonuniform) grid; one-sided stencils at the boundary.
SampledRadialFunction apply_operator_fd(const SampledRadialFunction& f,
                                        const DifferentialOp& op);

// Relative eigen-relation residual max |L u - ev u| / (|ev| max |u|) over
// nodes in [r_lo, r_hi].
double eigen_residual(const SampledRadialFunction& f, const DifferentialOp& op,
                      double eigenvalue, double r_lo, double r_hi);

// Self-check of the FD stencil: residual of the operator's own
// eigenfunction at this lambda on the given grid. Values above ~1e-4
// indicate a grid too coarse for FD diagnostics.
double operator_fd_selfcheck(const RadialGrid& grid, const DifferentialOp& op,
                             double lambda);

// Finite-difference weights on an arbitrary stencil (Fornberg's algorithm):
// weights[j][k] multiplies f(x_j) in the k-th derivative at x0, k <= m.
void fd_weights(double x0, const std::vector<double>& x, int m,
                std::vector<std::vector<double>>& weights);

// Static-partition parallel loop; thread count from SPECPROJ_THREADS
// (default: hardware concurrency, clamped to [1, 16]).
int thread_count();
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace specproj
