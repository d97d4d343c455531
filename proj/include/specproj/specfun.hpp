// Scalar special functions used throughout: complex log-gamma, Pochhammer
// symbols, the normalized Bessel kernel, Jacobi functions, the Plancherel
// density |c(lambda)|^{-2} and Kostant polynomial factors.

#pragma once

#include <complex>
#include <vector>

namespace specproj {

using Complex = std::complex<double>;

// Parameter pair for Jacobi analysis; rho = alpha + beta + 1 is derived.
// Valid range: alpha > -1 and |beta| <= alpha + 1.
struct JacobiParams {
    double alpha;
    double beta;

    JacobiParams(double a, double b);
    double rho() const { return alpha + beta + 1.0; }

    JacobiParams shifted(int p, int q) const { return {alpha + p, beta + q}; }
};

// K-type label (p, q) with p >= |q| and p == q mod 2, so that (p +- q)/2
// are nonnegative integers.
struct KTypeIndex {
    int p;
    int q;
    KTypeIndex(int p_, int q_);
    int len_plus() const { return (p + q) / 2; }
    int len_minus() const { return (p - q) / 2; }
};

// Principal-branch log Gamma(z). Throws std::domain_error at the poles
// z = 0, -1, -2, ...  Relative accuracy ~1e-13 for |z| <= 50.
Complex log_gamma(Complex z);

// Rising factorial (z)_m = z (z+1) ... (z+m-1), exact product; (z)_0 = 1.
Complex pochhammer(Complex z, int m);

// Normalized Bessel kernel psi(t) = 2^alpha Gamma(alpha+1) t^{-alpha}
// J_alpha(t) with psi(0) = 1. Power series below t = 18, amplitude-phase
// asymptotics above; both regimes hold ~1e-12 relative on [0, 1e4] for
// moderate alpha. Requires alpha > -1.
double bessel_psi(double alpha, double t);

// Jacobi function phi_lambda^{(alpha,beta)}(r): the even eigenfunction of
// the Jacobi operator normalized to phi(0) = 1. Evaluated through the
// Gauss hypergeometric representation in -sinh^2 r; see JacobiPhi below
// for the two series regimes. Requires r >= 0.
double jacobi_phi(const JacobiParams& p, double lambda, double r);

// Evaluator for phi_lambda at fixed (params, lambda). Three regimes:
//   * Pfaff series in tanh^2 r while lambda tanh r stays within the
//     long-double cancellation budget;
//   * the |z| > 1 connection (c-function) series for r large enough that
//     lambda / (4 sinh^2 r) stays within budget;
//   * in the remaining high-lambda pocket, Taylor continuation of the
//     hypergeometric equation in z = -sinh^2 r, anchored deep in the
//     connection zone and stepped geometrically toward 0 (checkpoints are
//     built lazily, once per evaluator).
// A single instance is not safe for concurrent use; build one per thread.
class JacobiPhi {
public:
    JacobiPhi(const JacobiParams& p, double lambda);
    double operator()(double r) const;

private:
    double rho_;
    double alpha_, beta_;
    double lam_;
    std::complex<long double> conn_coeff_;   // Gamma quotient of the c-term

    struct Checkpoint {
        long double z;
        std::vector<long double> coeff;      // local Taylor coefficients
    };
    mutable std::vector<Checkpoint> table_;
    mutable bool table_ready_ = false;

    double pfaff_series(double r) const;
    double connection_series(double r) const;
    void connection_with_derivative(double r, double& f, double& df_dr) const;
    void build_table() const;
    double continuation_eval(long double z) const;
};

// Plancherel density |c_{alpha,beta}(lambda)|^{-2}. Even in lambda,
// positive, polynomial growth. lambda = 0 returns the continuity limit
// (0 when rho > 0, 4 on the rho = 0 boundary).
double c_function_inv_sq(const JacobiParams& p, double lambda);

// Kostant polynomial Q_delta(i lambda + rho) =
//   ((alpha+beta+1+i lambda)/2)_{(p+q)/2} ((alpha-beta+1+i lambda)/2)_{(p-q)/2}.
Complex kostant_Q(const JacobiParams& p, const KTypeIndex& ktype, double lambda);

// Weight (2 sinh r)^{2 alpha + 1} (2 cosh r)^{2 beta + 1}, r >= 0.
double jacobi_weight(const JacobiParams& p, double r);

} // namespace specproj
