// Decay-modulus classification, the box-convolution construction of
// compactly supported profiles with prescribed transform decay, transfer to
// the Hankel side, and Carleman/moment quasi-analyticity diagnostics.

#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "specproj/transforms.hpp"

namespace specproj {

// A positive nonincreasing decay modulus vanishing at infinity.
struct ThetaSpec {
    std::string name;
    std::function<double(double)> eval;

    double operator()(double t) const { return eval(t); }

    static ThetaSpec inv_sqrt();   // (1+t)^{-1/2}
    static ThetaSpec inv_log();    // 1/log(e+t)
    static ThetaSpec log_log();    // 1/(log(e+t) log log(e^e+t))
    static ThetaSpec zero();
    // Tabulated modulus, linear in t between rows; rejects nonmonotone tables.
    static ThetaSpec from_table(std::vector<std::pair<double, double>> rows,
                                std::string name);
    static ThetaSpec by_name(const std::string& name);
};

enum class ThetaClass { Divergent, Convergent, Undetermined };
const char* to_string(ThetaClass c);

struct ThetaClassification {
    ThetaClass verdict = ThetaClass::Undetermined;
    // (T, int_1^T theta(t)/t dt) on dyadic T.
    std::vector<std::array<double, 2>> partial_integrals;
    double tail_estimate = 0.0;   // extrapolated remainder when geometric
    double decay_exponent = 0.0;  // fitted p in dyadic increments ~ c k^{-p}
};

// Dyadic partial integrals of theta(t)/t on [1, t_max] with a
// ratio/slope-based verdict. The bands are finite-horizon constants:
// geometric increment decay or fitted p >= 1.5 reads convergent,
// p <= 1.1 divergent, anything between is undetermined.
ThetaClassification classify_theta(const ThetaSpec& theta, double t_max = 1e9);

struct BoxProduct {
    std::vector<double> lengths;   // nonincreasing
    double total_support() const;
    double hat(double xi) const;   // prod_k sinc(a_k xi)
};

struct BoxConstruction {
    BoxProduct box;
    SampledRadialFunction profile;  // iterated box convolution, half line
    double envelope_constant;       // measured C with |fhat| <= C e^{-xi theta}
    // rows (xi, |fhat(xi)|, e^{-xi theta(xi)}) on a geometric window
    std::vector<std::array<double, 3>> envelope_trace;
};

// Lengths a_k = calibration * theta(2^k) * log 2, k = 1..N, scaled to the
// support budget. Requires a convergent modulus; throws when the dyadic
// sums exceed the budget by more than the calibration floor.
BoxConstruction construct_box_product(const ThetaSpec& theta, int N,
                                      double support_budget);

// Cosine transform of the construction profile, resolved analytically on
// its piecewise-linear representation (test oracle for BoxProduct::hat).
double profile_cosine_transform(const SampledRadialFunction& even_profile, double xi);

struct SupportReport {
    double r9999 = 0.0;   // radius containing 99.99% of the L2 mass
    std::vector<std::array<double, 2>> tail_curve;   // (r, tail mass fraction)
    double tail_mass_at(double r) const;
};

struct TransferResult {
    SampledRadialFunction g;
    SupportReport support;
};

// Hankel-side realization of even spectral data: g = hankel_inverse(fhat),
// with a numerical compact-support certificate. Throws when the spectral
// window is too small for the tail mass to fall below 1e-6.
TransferResult transfer_via_paley_wiener(const SpectralSamples& fhat, double alpha,
                                         const RadialGrid& r_grid);

enum class CarlemanVerdictKind { Diverging, Converging, Inconclusive };
const char* to_string(CarlemanVerdictKind v);

struct CarlemanReport {
    std::vector<double> terms;          // norms[m-1]^{-1/(2m)}
    std::vector<double> partial_sums;
    double slope = 0.0;                 // fitted p in terms ~ c m^{-p}
    bool positive_trend = false;        // recent increments not collapsing
    bool shift_robust = false;          // verdict stable dropping first terms
    CarlemanVerdictKind verdict = CarlemanVerdictKind::Inconclusive;
};

// Verdict on sum_m norms[m]^{-1/(2m)} by slope extrapolation. Divergence
// is also declared when partial sums pass 1e3 with a positive trend.
CarlemanReport carleman_verdict(const std::vector<double>& norms);
CarlemanReport carleman_verdict_from_log_norms(const std::vector<double>& log_norms);

struct MomentReport {
    std::vector<double> moments;        // M(2m) = int lambda^{2m} |F| W dlambda, m = 0..m_max
    std::vector<double> log_moments;
    CarlemanReport carleman;
    int j_used = 0;                     // smallest j with finite tail constant
    double cj = 0.0;
    std::vector<double> bound_rhs;      // C_j ||L^{m+j} f||_2 per m
    bool bound_holds = true;            // M(2m) <= C_j ||L^{m+j} f||_2 for all m
    bool overflow = false;
};

// Moments of the measure |F(lambda)| W(lambda) dlambda on the half line,
// their Carleman sums, and the Cauchy-Schwarz cross-check against the
// spectral power norms with shift delta.
MomentReport moment_report(const SpectralSamples& F, int m_max, double delta);

// Shared result shape for the uncertainty audits (symmetric-space and
// Dunkl sides).
struct UncertaintyAuditReport {
    double x_r = 0.0;
    std::vector<double> lambdas;
    std::vector<double> transform_abs;       // |f~(lambda)|
    std::vector<double> kernel_abs;          // |Phi_lambda(x)| or |psi(lambda |x|)|
    std::vector<double> projection_abs;      // d(lambda)
    std::vector<double> envelope_constant;   // d(lambda) e^{lambda theta(lambda)}
    double best_constant = 0.0;
    std::vector<double> power_log_norms;     // log ||L^m|| under the imposed envelope
    CarlemanReport carleman;
    ThetaClassification theta_class;
    bool obstruction_evidence = false;
};

} // namespace specproj
