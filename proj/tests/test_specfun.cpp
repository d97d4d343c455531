#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "specproj/specfun.hpp"

using namespace specproj;

TEST_SUITE("specfun") {

TEST_CASE("log_gamma anchors and poles") {
    CHECK(std::abs(log_gamma({1.0, 0.0})) < 1e-14);
    CHECK(log_gamma({5.0, 0.0}).real() == doctest::Approx(std::log(24.0)).epsilon(1e-13));
    CHECK(log_gamma({0.5, 0.0}).real() ==
          doctest::Approx(0.5 * std::log(3.14159265358979323846)).epsilon(1e-13));
    CHECK_THROWS_AS(log_gamma({0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(log_gamma({-3.0, 0.0}), std::domain_error);
}

TEST_CASE("log_gamma recurrence on a complex grid") {
    double worst = 0.0;
    for (double re = -6.3; re < 7.0; re += 0.83) {
        for (double im = -5.1; im < 5.0; im += 0.77) {
            if (std::abs(im) < 1e-9 && re <= 0.5) continue;
            const Complex z{re, im};
            const Complex ratio = std::exp(log_gamma(z + 1.0) - log_gamma(z));
            worst = std::max(worst, std::abs(ratio - z) / std::abs(z));
        }
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("log_gamma against the Lanczos oracle") {
    for (double re : {0.3, 1.7, 4.2, 9.5}) {
        for (double im : {-3.0, 0.4, 8.0}) {
            const Complex z{re, im};
            const Complex mine = std::exp(log_gamma(z));
            const Complex ref = oracles::lanczos_gamma(z);
            CHECK(std::abs(mine - ref) / std::abs(ref) < 1e-11);
        }
    }
}

TEST_CASE("pochhammer") {
    CHECK(pochhammer({3.7, 1.1}, 0) == Complex{1.0, 0.0});
    CHECK(pochhammer({2.0, 0.0}, 3).real() == doctest::Approx(24.0));
    CHECK(pochhammer({0.5, 0.0}, 2).real() == doctest::Approx(0.75));
    CHECK_THROWS_AS(pochhammer({1.0, 0.0}, -1), std::domain_error);
}

TEST_CASE("bessel_psi normalization and bounds") {
    for (double a : {-0.4, 0.0, 0.5, 1.5, 3.0}) {
        CHECK(bessel_psi(a, 0.0) == 1.0);
    }
    for (double a : {-0.5, 0.0, 1.0, 2.5}) {
        for (double t = 0.0; t < 60.0; t += 0.7) {
            CHECK(std::abs(bessel_psi(a, t)) <= 1.0 + 1e-12);
        }
    }
    CHECK_THROWS_AS(bessel_psi(-1.0, 1.0), std::domain_error);
}

TEST_CASE("bessel_psi half-integer closed form across both regimes") {
    // psi(1/2, t) = sin t / t; tolerance measured against the oscillation
    // envelope 1/t so the zeros of sin don't blow up a relative check.
    for (double t = 0.05; t < 1e4; t *= 1.37) {
        const double want = std::sin(t) / t;
        const double got = bessel_psi(0.5, t);
        CHECK(std::abs(got - want) <= 1e-10 * std::max(std::abs(want), 0.1 / t) + 1e-15);
    }
}

TEST_CASE("bessel_psi against the series oracle") {
    CHECK(bessel_psi(0.0, 1.0) ==
          doctest::Approx(oracles::bessel_series(0.0, 1.0, 30)).epsilon(1e-13));
    CHECK(bessel_psi(0.0, 1.0) == doctest::Approx(0.76519768655796655).epsilon(1e-13));
    for (double a : {-0.4, 0.7, 2.0}) {
        for (double t : {0.3, 2.0, 9.0}) {
            const double pref =
                std::exp(a * std::log(2.0 / t) + std::lgamma(a + 1.0));
            CHECK(bessel_psi(a, t) ==
                  doctest::Approx(pref * oracles::bessel_series(a, t)).epsilon(1e-11));
        }
    }
}

TEST_CASE("bessel_psi regime boundary") {
    // Both sides of the series/asymptotic switch, pinned to high-precision
    // reference values.
    const struct {
        double alpha, below, above;
    } anchors[] = {
        {-0.4, 0.359185378421069614, 0.359186516187390375},
        {0.0, -0.013355993716868143, -0.013355617727097167},
        {1.5, -0.0065003480367807389, -0.0065003597771673397},
        {3.0, 0.0015335066907836496, 0.0015335055444542232},
    };
    for (const auto& a : anchors) {
        CHECK(bessel_psi(a.alpha, 17.999999) ==
              doctest::Approx(a.below).epsilon(1e-11));
        CHECK(bessel_psi(a.alpha, 18.000001) ==
              doctest::Approx(a.above).epsilon(1e-11));
    }
}

TEST_CASE("jacobi_phi initial value and evenness") {
    const JacobiParams p(1.2, 0.4);
    CHECK(jacobi_phi(p, 3.1, 0.0) == 1.0);
    for (double r : {0.2, 0.9, 1.4, 3.0}) {
        CHECK(jacobi_phi(p, 2.5, r) == jacobi_phi(p, -2.5, r));
    }
    CHECK_THROWS_AS(jacobi_phi(p, 1.0, -0.5), std::domain_error);
}

TEST_CASE("jacobi_phi cosine degeneration") {
    // alpha = beta = -1/2: rho = 0 and the first-order coefficient cancels,
    // leaving f'' + lambda^2 f = 0.
    const JacobiParams p(-0.5, -0.5);
    for (double lam : {0.0, 0.7, 3.0, 11.0}) {
        for (double r : {0.1, 0.8, 1.3, 2.0, 4.0}) {
            CHECK(jacobi_phi(p, lam, r) ==
                  doctest::Approx(std::cos(lam * r)).epsilon(1e-11));
        }
    }
}

TEST_CASE("jacobi_phi frozen values") {
    // sin(lambda r)/(lambda sinh r) at (1/2, -1/2); generic parameters from
    // an independent hypergeometric evaluation.
    CHECK(jacobi_phi(JacobiParams(0.5, -0.5), 2.0, 1.0) ==
          doctest::Approx(0.38686883222367026).epsilon(1e-12));
    CHECK(jacobi_phi(JacobiParams(0.5, -0.5), 1.0, 2.0) ==
          doctest::Approx(0.25071200006990617).epsilon(1e-12));
    CHECK(jacobi_phi(JacobiParams(2.5, 1.0), 1.3, 0.8) ==
          doctest::Approx(0.38846713653762593).epsilon(1e-11));
    CHECK(jacobi_phi(JacobiParams(2.5, 1.0), 4.0, 2.5) ==
          doctest::Approx(5.6782417566647013e-05).epsilon(1e-10));
}

TEST_CASE("jacobi_phi against the ODE oracle") {
    const RadialGrid out = make_grid(3.0, 12, 4);
    for (const auto& [a, b, lam] :
         {std::tuple{0.5, -0.5, 2.0}, std::tuple{2.5, 1.0, 1.3}, std::tuple{0.0, -0.5, 5.0}}) {
        const JacobiParams p(a, b);
        const SampledRadialFunction ode = jacobi_phi_via_ode(p, lam, out, 1e-11);
        const JacobiPhi phi(p, lam);
        for (std::size_t i = 0; i < out.size(); ++i) {
            CHECK(std::abs(phi(out.nodes[i]) - ode.values[i]) < 1e-8);
        }
    }
}

TEST_CASE("jacobi_phi ODE residual on random Plancherel-regime draws") {
    oracles::ParamSampler sampler;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const JacobiParams p = sampler.draw_params();
        const double lam = sampler.uniform(0.1, 10.0);
        const double r = sampler.uniform(0.1, 5.0);
        worst = std::max(worst, oracles::jacobi_ode_residual(p, lam, r));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("c_function_inv_sq duplication anchor and evenness") {
    const JacobiParams pc(-0.5, -0.5);
    for (double lam : {0.1, 1.0, 10.0, 100.0}) {
        CHECK(std::abs(c_function_inv_sq(pc, lam) - 4.0) < 1e-10);
    }
    const JacobiParams p(1.7, 0.3);
    for (double lam : {0.4, 2.2, 17.0}) {
        CHECK(c_function_inv_sq(p, lam) == c_function_inv_sq(p, -lam));
        CHECK(c_function_inv_sq(p, lam) > 0.0);
    }
}

TEST_CASE("c_function_inv_sq against the Gamma-product oracle") {
    auto oracle = [](const JacobiParams& p, double lam) {
        const std::complex<double> il{0.0, lam};
        const std::complex<double> c =
            std::pow(2.0, std::complex<double>(p.rho()) - il) *
            oracles::lanczos_gamma(p.alpha + 1.0) * oracles::lanczos_gamma(il) /
            (oracles::lanczos_gamma(0.5 * (il + p.rho())) *
             oracles::lanczos_gamma(0.5 * (il + p.alpha - p.beta + 1.0)));
        return 1.0 / std::norm(c);
    };
    const JacobiParams p(0.5, -0.5);
    CHECK(std::abs(c_function_inv_sq(p, 1.0) - 1.0) < 1e-10);
    CHECK(c_function_inv_sq(p, 1.0) == doctest::Approx(oracle(p, 1.0)).epsilon(1e-10));
    for (const auto& [a, b] : {std::pair{2.5, 1.0}, std::pair{1.0, 0.0}}) {
        const JacobiParams q(a, b);
        for (double lam : {0.3, 1.9, 8.0}) {
            CHECK(c_function_inv_sq(q, lam) ==
                  doctest::Approx(oracle(q, lam)).epsilon(1e-10));
        }
    }
}

TEST_CASE("c_function_inv_sq lambda = 0 limit") {
    CHECK(c_function_inv_sq(JacobiParams(0.5, -0.5), 0.0) == 0.0);
    CHECK(c_function_inv_sq(JacobiParams(2.0, 1.0), 0.0) == 0.0);
    // rho = 0 boundary keeps the cosine-pair limit.
    CHECK(c_function_inv_sq(JacobiParams(-0.5, -0.5), 0.0) == 4.0);
    CHECK(c_function_inv_sq(JacobiParams(0.25, -1.25), 0.0) == 4.0);
}

TEST_CASE("kostant_Q") {
    const JacobiParams p(0.5, -0.5);
    CHECK(kostant_Q(p, KTypeIndex(0, 0), 3.7) == Complex{1.0, 0.0});
    CHECK(kostant_Q(p, KTypeIndex(2, 0), 0.0).real() == doctest::Approx(0.5));
    CHECK(kostant_Q(p, KTypeIndex(2, 0), 0.0).imag() == doctest::Approx(0.0));

    const JacobiParams q(1.5, 0.5);
    const Complex got = kostant_Q(q, KTypeIndex(2, 2), 1.0);
    CHECK(got.real() == doctest::Approx(3.5).epsilon(1e-13));
    CHECK(got.imag() == doctest::Approx(2.0).epsilon(1e-13));
    // pochhammer composition
    const Complex want = pochhammer(0.5 * Complex(3.0, 1.0), 2) *
                         pochhammer(0.5 * Complex(2.0, 1.0), 0);
    CHECK(std::abs(got - want) < 1e-13);
}

TEST_CASE("KTypeIndex invariants") {
    CHECK_NOTHROW(KTypeIndex(2, 0));
    CHECK_NOTHROW(KTypeIndex(3, 1));
    CHECK_NOTHROW(KTypeIndex(2, -2));
    CHECK_THROWS_AS(KTypeIndex(1, 0), std::domain_error);
    CHECK_THROWS_AS(KTypeIndex(1, 2), std::domain_error);
}

TEST_CASE("jacobi_weight") {
    CHECK(jacobi_weight(JacobiParams(0.5, -0.5), 0.0) == 0.0);
    CHECK(jacobi_weight(JacobiParams(-0.5, -0.5), 1.3) == doctest::Approx(1.0));
    CHECK(jacobi_weight(JacobiParams(0.5, -0.5), 1.0) ==
          doctest::Approx(std::pow(2.0 * std::sinh(1.0), 2.0)).epsilon(1e-14));
}

TEST_CASE("JacobiParams invariants") {
    CHECK_THROWS_AS(JacobiParams(-1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(JacobiParams(0.5, 1.6), std::domain_error);
    CHECK_NOTHROW(JacobiParams(0.5, 1.5));
    CHECK(JacobiParams(0.5, -0.5).rho() == 1.0);
}

} // TEST_SUITE
