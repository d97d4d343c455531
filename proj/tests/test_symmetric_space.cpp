#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "specproj/symmetric_space.hpp"

using namespace specproj;

TEST_SUITE("symmetric_space") {

TEST_CASE("space parameters from multiplicities") {
    const RankOneSpace a = space_from_multiplicities(2, 0);
    CHECK(a.params.alpha == 0.5);
    CHECK(a.params.beta == -0.5);
    CHECK(a.rho() == 1.0);
    const RankOneSpace b = space_from_multiplicities(1, 0);
    CHECK(b.params.alpha == 0.0);
    CHECK(b.params.beta == -0.5);
    CHECK(b.rho() == 0.5);
    const RankOneSpace c = space_from_multiplicities(2, 1);
    CHECK(c.params.alpha == 1.0);
    CHECK(c.params.beta == 0.0);
    CHECK(c.rho() == 1.5);
    CHECK_THROWS_AS(space_from_multiplicities(0, 0), std::domain_error);
    CHECK_THROWS_AS(space_from_multiplicities(2, -1), std::domain_error);
    // rho = alpha + beta + 1 across a sweep
    for (int mg = 1; mg <= 6; ++mg)
        for (int m2 = 0; m2 <= 4; ++m2) {
            const RankOneSpace s = space_from_multiplicities(mg, m2);
            CHECK(s.params.rho() == doctest::Approx(0.5 * (mg + m2)).epsilon(1e-15));
        }
}

TEST_CASE("spherical function closed form and normalization") {
    const RankOneSpace s = space_from_multiplicities(2, 0);
    CHECK(spherical_fn(s, 1.7, 0.0) == 1.0);
    for (double lam : {0.5, 2.0, 6.0}) {
        for (double r : {0.3, 1.0, 2.5}) {
            const double want = std::sin(lam * r) / (lam * std::sinh(r));
            CHECK(spherical_fn(s, lam, r) == doctest::Approx(want).epsilon(1e-11));
        }
    }
    // ODE oracle at the space parameters
    const RadialGrid out = make_grid(3.0, 12, 4);
    const auto ode = jacobi_phi_via_ode(s.params, 2.3, out, 1e-11);
    for (std::size_t i = 0; i < out.size(); ++i)
        CHECK(std::abs(spherical_fn(s, 2.3, out.nodes[i]) - ode.values[i]) < 1e-7);
}

TEST_CASE("spherical function dominated by the lambda = 0 value") {
    for (const auto& [mg, m2] : {std::pair{2, 0}, std::pair{1, 0}, std::pair{2, 1}}) {
        const RankOneSpace s = space_from_multiplicities(mg, m2);
        for (int i = 1; i <= 50; ++i) {
            const double lam = 0.05 + 10.0 * (i - 1) / 49.0;
            for (int j = 1; j <= 50; ++j) {
                const double r = 0.05 + 5.0 * (j - 1) / 49.0;
                CHECK(std::abs(spherical_fn(s, lam, r)) <=
                      spherical_fn(s, 0.0, r) + 1e-12);
            }
        }
    }
}

TEST_CASE("spherical_fn_delta factors") {
    const RankOneSpace s = space_from_multiplicities(2, 0);
    SUBCASE("(0,0) reduces to the spherical function") {
        const Complex v = spherical_fn_delta(s, KTypeIndex(0, 0), 1.3, 0.9);
        CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(v.real() == doctest::Approx(spherical_fn(s, 1.3, 0.9)).epsilon(1e-12));
    }
    SUBCASE("sinh^p vanishing at the origin") {
        const Complex near0 = spherical_fn_delta(s, KTypeIndex(2, 0), 1.0, 1e-4);
        CHECK(std::abs(near0) < 1e-7);   // ~ sinh^2 r
        const Complex at0 = spherical_fn_delta(s, KTypeIndex(2, 0), 1.0, 0.0);
        CHECK(std::abs(at0) == 0.0);
    }
    SUBCASE("factor-by-factor oracle") {
        const KTypeIndex kt(2, 0);
        const double lam = 1.0, r = 1.0;
        const Complex got = spherical_fn_delta(s, kt, lam, r);
        const Complex want = kostant_Q(s.params, kt, lam) /
                             pochhammer(Complex(s.params.alpha + 1.0), 2) *
                             std::pow(std::sinh(r), 2) *
                             jacobi_phi(s.params.shifted(2, 0), lam, r);
        CHECK(std::abs(got - want) < 1e-10);
    }
}

TEST_CASE("spherical transform delegates to the Jacobi pair") {
    const RankOneSpace s = space_from_multiplicities(2, 0);
    const RadialGrid rg = make_grid(4.0, 80, 8);
    const RadialGrid lg = make_grid(12.0, 40, 8);
    const auto f = oracles::smooth_bump(rg, 1.0, 2.0);
    const SpectralSamples a = spherical_transform(s, f, lg);
    const SpectralSamples b = jacobi_forward(f, s.params, lg);
    REQUIRE(a.size() == b.size());
    for (std::size_t j = 0; j < a.size(); ++j) CHECK(a.values[j] == b.values[j]);

    const auto zero = SampledRadialFunction::tabulate(rg, [](double) { return 0.0; });
    for (double v : spherical_transform(s, zero, lg).values) CHECK(v == 0.0);

    // round trip through the inverse
    const RadialGrid lg2 = make_grid(60.0, 160, 8);
    const SpectralSamples F = spherical_transform(s, f, lg2);
    const auto back = jacobi_inverse(F, s.params, rg);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < rg.size(); ++i) {
        const double w = rg.weights[i] * jacobi_weight(s.params, rg.nodes[i]);
        num += w * (back.values[i] - f.values[i]) * (back.values[i] - f.values[i]);
        den += w * f.values[i] * f.values[i];
    }
    CHECK(std::sqrt(num / den) < 1e-4);
}

TEST_CASE("projection fields") {
    const RankOneSpace s = space_from_multiplicities(2, 0);
    const RadialGrid rg = make_grid(5.0, 120, 8);
    const RadialGrid lg = make_grid(12.0, 40, 8);
    const auto f = oracles::smooth_bump(rg, 1.0, 2.0);
    const SpectralSamples ft = spherical_transform(s, f, lg);

    SUBCASE("zero data produces the zero field") {
        SpectralSamples z = ft;
        for (double& v : z.values) v = 0.0;
        const ProjectionField field = project(s, z, 2.0, rg);
        CHECK(field.profile.max_abs() == 0.0);
    }
    SUBCASE("value at the origin is the transform value") {
        const ProjectionField field = project(s, ft, 2.0, rg);
        // Phi_lambda(0) = 1: interpolate the profile to r -> 0
        const double at0 = field.profile.values.front();
        CHECK(at0 == doctest::Approx(ft.interp(2.0)).epsilon(1e-6));
        CHECK(field.eigenvalue == doctest::Approx(-(4.0 + 1.0)));
    }
    SUBCASE("eigen-relation under the FD operator") {
        for (double lam : {1.0, 2.5, 4.0}) {
            const ProjectionField field = project(s, ft, lam, rg);
            const double res = eigen_residual(field.profile, DifferentialOp::jacobi(s.params),
                                              field.eigenvalue, 0.3, 4.5);
            CHECK(res < 1e-4);
        }
    }
    SUBCASE("out-of-window lambda") {
        CHECK_THROWS_AS(project(s, ft, 100.0, rg), std::domain_error);
    }
}

TEST_CASE("spherical mean profile") {
    const RankOneSpace s = space_from_multiplicities(2, 0);
    const RadialGrid rg = make_grid(4.0, 120, 8);
    const RadialGrid lg = make_grid(40.0, 130, 8);
    const auto f = oracles::smooth_bump(rg, 1.0, 2.0);
    const SpectralSamples ft = spherical_transform(s, f, lg);

    SUBCASE("mean at the origin reproduces the profile") {
        const auto mean = spherical_mean_profile(s, ft, 0.0, rg);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < rg.size(); ++i) {
            const double w = rg.weights[i] * jacobi_weight(s.params, rg.nodes[i]);
            num += w * (mean.values[i] - f.values[i]) * (mean.values[i] - f.values[i]);
            den += w * f.values[i] * f.values[i];
        }
        CHECK(std::sqrt(num / den) < 1e-3);
    }
    SUBCASE("zero data") {
        SpectralSamples z = ft;
        for (double& v : z.values) v = 0.0;
        CHECK(spherical_mean_profile(s, z, 0.7, rg).max_abs() == 0.0);
    }
    SUBCASE("transform of the mean factorizes") {
        const double x_r = 0.7;
        const auto mean = spherical_mean_profile(s, ft, x_r, rg);
        const SpectralSamples mt = spherical_transform(s, mean, lg);
        double sup = 0.0, scale = 0.0;
        for (std::size_t j = 0; j < mt.size(); ++j) {
            const double want =
                ft.values[j] * jacobi_phi(s.params, mt.lambdas[j], x_r);
            sup = std::max(sup, std::abs(mt.values[j] - want));
            scale = std::max(scale, std::abs(want));
        }
        CHECK(sup / scale < 1e-3);
    }
}

TEST_CASE("uncertainty audit") {
    const RankOneSpace s = space_from_multiplicities(2, 0);
    const RadialGrid rg = make_grid(4.0, 100, 8);
    const RadialGrid lg = make_grid(8.0, 24, 8);
    const auto f = oracles::smooth_bump(rg, 1.0, 2.0);

    SUBCASE("zero input gives zero diagnostics") {
        const auto zero = SampledRadialFunction::tabulate(rg, [](double) { return 0.0; });
        const auto rep = uncertainty_audit_thm11(s, zero, 1.0, ThetaSpec::inv_log(), lg);
        CHECK(rep.best_constant == 0.0);
        for (double d : rep.projection_abs) CHECK(d == 0.0);
    }
    SUBCASE("convergent modulus: no obstruction, finite witness constant") {
        const auto rep = uncertainty_audit_thm11(s, f, 1.0, ThetaSpec::inv_sqrt(), lg);
        CHECK(rep.theta_class.verdict == ThetaClass::Convergent);
        CHECK(!rep.obstruction_evidence);
        CHECK(std::isfinite(rep.best_constant));
        CHECK(rep.best_constant > 0.0);
    }
    SUBCASE("divergent modulus: Carleman sums keep growing") {
        const auto rep = uncertainty_audit_thm11(s, f, 1.0, ThetaSpec::inv_log(), lg);
        CHECK(rep.theta_class.verdict == ThetaClass::Divergent);
        CHECK(rep.carleman.verdict == CarlemanVerdictKind::Diverging);
        CHECK(rep.carleman.positive_trend);
        CHECK(rep.obstruction_evidence);
        // terms settle to a positive floor, so the sums grow without bound
        const auto& t = rep.carleman.terms;
        CHECK(t.back() > 0.0);
        CHECK(t[t.size() - 2] > 0.0);
    }
    SUBCASE("support precondition enforced") {
        const auto bad = oracles::smooth_bump(rg, 0.2, 2.0);
        CHECK_THROWS_AS(uncertainty_audit_thm11(s, bad, 1.0, ThetaSpec::inv_log(), lg),
                        std::domain_error);
    }
    SUBCASE("sharpness witness on imposed spectral data") {
        // Spectral data bounded by e^{-lambda theta} keeps projections under
        // the same envelope with a finite constant.
        const ThetaSpec theta = ThetaSpec::inv_sqrt();
        SpectralSamples data = SpectralSamples::on_grid(
            lg, TransformKind::jacobi_pair(s.params));
        for (std::size_t j = 0; j < data.size(); ++j)
            data.values[j] = std::exp(-data.lambdas[j] * theta(data.lambdas[j]));
        const auto rep = uncertainty_audit_spectral(s, data, theta, 0.5);
        CHECK(rep.best_constant <= 1.0 + 1e-9);   // |Phi_lambda(x)| <= 1
    }
}

} // TEST_SUITE
