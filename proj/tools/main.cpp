// Command-line driver: configures one of the computational pipelines,
// runs it on deterministic grids and emits CSV traces plus a key=value
// report under <outdir>/<pipeline>/.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "specproj/csv.hpp"
#include "specproj/dunkl.hpp"
#include "specproj/ingham.hpp"
#include "specproj/symmetric_space.hpp"

using namespace specproj;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitModule = 3;
constexpr int kExitIo = 4;

const std::vector<std::string> kPipelines = {
    "roundtrip",      "plancherel",  "eigencheck",      "project",
    "spherical-mean", "ingham-construct", "pw-transfer", "carleman",
    "audit-thm11",    "audit-thm13", "sharpness-witness"};

double bump(double r, double a, double b) {
    if (r <= a || r >= b) return 0.0;
    const double u = 2.0 * (r - a) / (b - a) - 1.0;
    return std::exp(-1.0 / (1.0 - u * u));
}

SampledRadialFunction bump_profile(const RadialGrid& g, double a, double b) {
    auto f = SampledRadialFunction::tabulate(g, [&](double r) { return bump(r, a, b); });
    f.support_hint = std::array<double, 2>{a, b};
    return f;
}

struct CommonOpts {
    std::string outdir = "out";
    double r_max = 6.0;
    int panels = 96;
    int order = 8;
    double lambda_max = 12.0;
    int lambda_panels = 48;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--outdir", o.outdir, "output directory (default: out)");
    cmd->add_option("--r-max", o.r_max, "radial window");
    cmd->add_option("--panels", o.panels, "radial quadrature panels");
    cmd->add_option("--order", o.order, "Gauss-Legendre panel order");
    cmd->add_option("--lambda-max", o.lambda_max, "spectral window");
    cmd->add_option("--lambda-panels", o.lambda_panels, "spectral quadrature panels");
}

std::string outdir_for(const CommonOpts& o, const std::string& pipeline) {
    const std::string d = o.outdir + "/" + pipeline;
    ensure_directory(d);
    return d;
}

ThetaSpec theta_from(const std::string& name, const std::string& table_path) {
    if (!table_path.empty()) return ThetaSpec::from_table(read_table(table_path), "table");
    return ThetaSpec::by_name(name);
}

void write_spectral_csv(const std::string& path, const SpectralSamples& F) {
    std::vector<std::vector<double>> rows;
    rows.reserve(F.size());
    for (std::size_t j = 0; j < F.size(); ++j)
        rows.push_back({F.lambdas[j], F.values[j]});
    write_csv(path, {"lambda", "value"}, rows);
}

void write_profile_csv(const std::string& path, const SampledRadialFunction& f) {
    std::vector<std::vector<double>> rows;
    rows.reserve(f.grid.size());
    for (std::size_t i = 0; i < f.grid.size(); ++i)
        rows.push_back({f.grid.nodes[i], f.grid.weights[i], f.values[i]});
    write_csv(path, {"node", "weight", "value"}, rows);
}

void write_audit_csvs(const std::string& dir, const UncertaintyAuditReport& rep) {
    std::vector<std::vector<double>> rows;
    for (std::size_t j = 0; j < rep.lambdas.size(); ++j)
        rows.push_back({rep.lambdas[j], rep.transform_abs[j], rep.kernel_abs[j],
                        rep.projection_abs[j], rep.envelope_constant[j]});
    write_csv(dir + "/per_lambda.csv",
              {"lambda", "transform_abs", "kernel_abs", "d", "C"}, rows);
    rows.clear();
    for (std::size_t i = 0; i < rep.carleman.terms.size(); ++i)
        rows.push_back({static_cast<double>(i + 1), rep.power_log_norms[i],
                        rep.carleman.terms[i], rep.carleman.partial_sums[i]});
    write_csv(dir + "/per_m.csv", {"m", "log_norm", "term", "partial_sum"}, rows);
}

std::vector<std::pair<std::string, std::string>> audit_report_entries(
    const UncertaintyAuditReport& rep) {
    return {
        {"x_r", format_double(rep.x_r)},
        {"theta_classification", to_string(rep.theta_class.verdict)},
        {"best_constant", format_double(rep.best_constant)},
        {"carleman_verdict", to_string(rep.carleman.verdict)},
        {"carleman_partial_sum", format_double(rep.carleman.partial_sums.back())},
        {"carleman_slope", format_double(rep.carleman.slope)},
        {"positive_trend", rep.carleman.positive_trend ? "true" : "false"},
        {"obstruction_evidence", rep.obstruction_evidence ? "true" : "false"},
    };
}

// ---- pipelines -----------------------------------------------------------

int run_roundtrip(const CommonOpts& o, const std::string& pair, double alpha,
                  double beta, bool plancherel_only) {
    const std::string name = plancherel_only ? "plancherel" : "roundtrip";
    const std::string dir = outdir_for(o, name);
    const RadialGrid rg = make_grid(o.r_max, o.panels, o.order);
    const RadialGrid lg = make_grid(o.lambda_max, o.lambda_panels, o.order);
    const SampledRadialFunction f = bump_profile(rg, 1.0, 2.0);

    TransformKind kind = (pair == "hankel") ? TransformKind::hankel(alpha)
                                            : TransformKind::jacobi_pair({alpha, beta});
    const TransformPairReport rep = plancherel_check(f, kind, lg);
    write_spectral_csv(dir + "/forward.csv", rep.forward);
    write_profile_csv(dir + "/input.csv", f);
    const double gap = std::abs(rep.plancherel_lhs - rep.plancherel_rhs) /
                       std::max(rep.plancherel_lhs, 1e-300);
    write_report(dir + "/report.txt",
                 {{"pair", pair},
                  {"alpha", format_double(alpha)},
                  {"beta", format_double(beta)},
                  {"roundtrip_rel_l2_error", format_double(rep.roundtrip_l2_rel_error)},
                  {"plancherel_lhs", format_double(rep.plancherel_lhs)},
                  {"plancherel_rhs", format_double(rep.plancherel_rhs)},
                  {"plancherel_rel_gap", format_double(gap)},
                  {"tail_ok", rep.forward.tail_ok ? "true" : "false"}});
    std::printf("%s %s: roundtrip=%.3e plancherel_gap=%.3e\n", name.c_str(), pair.c_str(),
                rep.roundtrip_l2_rel_error, gap);
    return kExitOk;
}

int run_eigencheck(const CommonOpts& o, const std::string& pair, double alpha,
                   double beta, double lambda, double shift_a) {
    const std::string dir = outdir_for(o, "eigencheck");
    const RadialGrid rg = make_grid(o.r_max, o.panels, o.order);
    DifferentialOp op = (pair == "hankel")
                            ? DifferentialOp::bessel(alpha, shift_a)
                            : DifferentialOp::jacobi(JacobiParams(alpha, beta));
    const double residual = operator_fd_selfcheck(rg, op, lambda);
    SampledRadialFunction f;
    double ev = 0.0;
    if (pair == "hankel") {
        f = SampledRadialFunction::tabulate(
            rg, [&](double r) { return bessel_psi(alpha, lambda * r); });
        ev = -(lambda * lambda + shift_a * shift_a);
    } else {
        const JacobiPhi phi(JacobiParams(alpha, beta), lambda);
        f = SampledRadialFunction::tabulate(rg, [&](double r) { return phi(r); });
        ev = -(lambda * lambda + JacobiParams(alpha, beta).rho() *
                                     JacobiParams(alpha, beta).rho());
    }
    const SampledRadialFunction lf = apply_operator_fd(f, op);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < rg.size(); ++i)
        rows.push_back({rg.nodes[i], f.values[i], lf.values[i], ev * f.values[i]});
    write_csv(dir + "/eigencheck.csv", {"node", "f", "Lf", "ev_f"}, rows);
    write_report(dir + "/report.txt", {{"pair", pair},
                                       {"lambda", format_double(lambda)},
                                       {"eigenvalue", format_double(ev)},
                                       {"fd_residual", format_double(residual)}});
    std::printf("eigencheck %s lambda=%g: residual=%.3e\n", pair.c_str(), lambda, residual);
    return residual <= 1e-4 ? kExitOk : kExitModule;
}

int run_project(const CommonOpts& o, int m_gamma, int m_2gamma, double lambda) {
    const std::string dir = outdir_for(o, "project");
    const RankOneSpace space = space_from_multiplicities(m_gamma, m_2gamma);
    const RadialGrid rg = make_grid(o.r_max, o.panels, o.order);
    const RadialGrid lg = make_grid(o.lambda_max, o.lambda_panels, o.order);
    const SampledRadialFunction f = bump_profile(rg, 1.0, 2.0);
    const SpectralSamples ft = spherical_transform(space, f, lg);
    const ProjectionField field = project(space, ft, lambda, rg);
    const double res =
        eigen_residual(field.profile, DifferentialOp::jacobi(space.params),
                       field.eigenvalue, 0.3, 0.9 * o.r_max);
    write_profile_csv(dir + "/projection.csv", field.profile);
    write_report(dir + "/report.txt",
                 {{"m_gamma", std::to_string(m_gamma)},
                  {"m_2gamma", std::to_string(m_2gamma)},
                  {"lambda", format_double(lambda)},
                  {"eigenvalue", format_double(field.eigenvalue)},
                  {"fd_residual", format_double(res)},
                  {"f_tilde_at_lambda", format_double(ft.interp(lambda))}});
    std::printf("project lambda=%g: eigen residual=%.3e\n", lambda, res);
    return res <= 1e-4 ? kExitOk : kExitModule;
}

int run_spherical_mean(const CommonOpts& o, int m_gamma, int m_2gamma, double x_r) {
    const std::string dir = outdir_for(o, "spherical-mean");
    const RankOneSpace space = space_from_multiplicities(m_gamma, m_2gamma);
    const RadialGrid rg = make_grid(o.r_max, o.panels, o.order);
    const RadialGrid lg = make_grid(o.lambda_max, o.lambda_panels, o.order);
    const SampledRadialFunction f = bump_profile(rg, 1.0, 2.0);
    const SpectralSamples ft = spherical_transform(space, f, lg);
    const SampledRadialFunction mean = spherical_mean_profile(space, ft, x_r, rg);
    const SpectralSamples mt = spherical_transform(space, mean, lg);
    double sup = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < mt.size(); ++j) {
        const double want =
            ft.values[j] * jacobi_phi(space.params, mt.lambdas[j], x_r);
        sup = std::max(sup, std::abs(mt.values[j] - want));
        scale = std::max(scale, std::abs(want));
    }
    write_profile_csv(dir + "/mean_profile.csv", mean);
    write_spectral_csv(dir + "/mean_transform.csv", mt);
    const double rel = (scale > 0.0) ? sup / scale : 0.0;
    write_report(dir + "/report.txt", {{"x_r", format_double(x_r)},
                                       {"consistency_sup_rel", format_double(rel)}});
    std::printf("spherical-mean x_r=%g: transform consistency=%.3e\n", x_r, rel);
    return rel <= 1e-3 ? kExitOk : kExitModule;
}

int run_ingham_construct(const CommonOpts& o, const std::string& theta_name,
                         const std::string& theta_table, int boxes, double budget) {
    const std::string dir = outdir_for(o, "ingham-construct");
    const ThetaSpec theta = theta_from(theta_name, theta_table);
    const BoxConstruction bc = construct_box_product(theta, boxes, budget);
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < bc.box.lengths.size(); ++k)
        rows.push_back({static_cast<double>(k + 1), bc.box.lengths[k]});
    write_csv(dir + "/lengths.csv", {"k", "a_k"}, rows);
    rows.clear();
    for (const auto& t : bc.envelope_trace) rows.push_back({t[0], t[1], t[2]});
    write_csv(dir + "/envelope.csv", {"xi", "fhat_abs", "envelope"}, rows);
    write_profile_csv(dir + "/profile.csv", bc.profile);
    write_report(dir + "/report.txt",
                 {{"theta", theta.name},
                  {"boxes", std::to_string(boxes)},
                  {"total_support", format_double(bc.box.total_support())},
                  {"envelope_constant", format_double(bc.envelope_constant)}});
    std::printf("ingham-construct %s N=%d: support=%.4f C=%.4f\n", theta.name.c_str(),
                boxes, bc.box.total_support(), bc.envelope_constant);
    return kExitOk;
}

int run_pw_transfer(const CommonOpts& o, const std::string& theta_name,
                    const std::string& theta_table, int boxes, double budget,
                    double alpha) {
    const std::string dir = outdir_for(o, "pw-transfer");
    const ThetaSpec theta = theta_from(theta_name, theta_table);
    const BoxConstruction bc = construct_box_product(theta, boxes, budget);
    const double S = bc.box.total_support();
    const RadialGrid lg = make_grid(std::max(o.lambda_max, 40.0), 80, o.order);
    SpectralSamples fhat = SpectralSamples::on_grid(lg, TransformKind::hankel(alpha));
    for (std::size_t j = 0; j < fhat.size(); ++j)
        fhat.values[j] = bc.box.hat(fhat.lambdas[j]);
    const RadialGrid rg = make_grid(3.0 * S, 120, o.order);
    const TransferResult tr = transfer_via_paley_wiener(fhat, alpha, rg);
    const SpectralSamples back = hankel_forward(tr.g, alpha, lg);
    double sup = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < back.size(); ++j) {
        sup = std::max(sup, std::abs(back.values[j] - fhat.values[j]));
        scale = std::max(scale, std::abs(fhat.values[j]));
    }
    write_profile_csv(dir + "/g.csv", tr.g);
    std::vector<std::vector<double>> rows;
    for (const auto& t : tr.support.tail_curve) rows.push_back({t[0], t[1]});
    write_csv(dir + "/tail.csv", {"r", "tail_mass_fraction"}, rows);
    write_report(dir + "/report.txt",
                 {{"alpha", format_double(alpha)},
                  {"support", format_double(S)},
                  {"r9999", format_double(tr.support.r9999)},
                  {"tail_mass_at_1_5_support", format_double(tr.support.tail_mass_at(1.5 * S))},
                  {"roundtrip_sup_rel", format_double(sup / std::max(scale, 1e-300))}});
    std::printf("pw-transfer alpha=%g: r9999=%.4f tail(1.5S)=%.3e\n", alpha,
                tr.support.r9999, tr.support.tail_mass_at(1.5 * S));
    return kExitOk;
}

int run_carleman(const CommonOpts& o, const std::string& demo, double ratio,
                 const std::string& norms_csv, int m_max) {
    const std::string dir = outdir_for(o, "carleman");
    std::vector<double> norms;
    if (!norms_csv.empty()) {
        for (const auto& [m, v] : read_table(norms_csv)) {
            (void)m;
            norms.push_back(v);
        }
    } else {
        for (int m = 1; m <= m_max; ++m) {
            if (demo == "geometric")
                norms.push_back(std::pow(ratio, 2.0 * m));
            else if (demo == "factorial")
                norms.push_back(std::exp(std::lgamma(2.0 * m + 1.0)));
            else if (demo == "factorial-sq")
                norms.push_back(std::exp(2.0 * std::lgamma(2.0 * m + 1.0)));
            else
                throw std::invalid_argument("carleman: unknown demo '" + demo + "'");
        }
    }
    const CarlemanReport rep = carleman_verdict(norms);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < rep.terms.size(); ++i)
        rows.push_back({static_cast<double>(i + 1), norms[i], rep.terms[i],
                        rep.partial_sums[i]});
    write_csv(dir + "/terms.csv", {"m", "norm", "term", "partial_sum"}, rows);
    write_report(dir + "/report.txt",
                 {{"verdict", to_string(rep.verdict)},
                  {"slope", format_double(rep.slope)},
                  {"partial_sum", format_double(rep.partial_sums.back())},
                  {"positive_trend", rep.positive_trend ? "true" : "false"},
                  {"shift_robust", rep.shift_robust ? "true" : "false"}});
    std::printf("carleman: verdict=%s slope=%.3f sum=%.4g\n", to_string(rep.verdict),
                rep.slope, rep.partial_sums.back());
    return kExitOk;
}

int run_audit_thm11(const CommonOpts& o, int m_gamma, int m_2gamma,
                    const std::string& theta_name, const std::string& theta_table,
                    double vanish_radius, double x_r, int m_max) {
    const std::string dir = outdir_for(o, "audit-thm11");
    const RankOneSpace space = space_from_multiplicities(m_gamma, m_2gamma);
    const ThetaSpec theta = theta_from(theta_name, theta_table);
    const RadialGrid rg = make_grid(std::max(o.r_max, vanish_radius + 2.0), o.panels, o.order);
    const RadialGrid lg = make_grid(o.lambda_max, o.lambda_panels, o.order);
    const SampledRadialFunction f = bump_profile(rg, vanish_radius, vanish_radius + 1.0);
    const UncertaintyAuditReport rep =
        uncertainty_audit_thm11(space, f, vanish_radius, theta, lg, x_r, m_max);
    write_audit_csvs(dir, rep);
    auto entries = audit_report_entries(rep);
    entries.insert(entries.begin(), {"pipeline", "audit-thm11"});
    entries.insert(entries.begin() + 1, {"theta", theta.name});
    write_report(dir + "/report.txt", entries);
    std::printf("audit-thm11 theta=%s: class=%s verdict=%s sum=%.4g evidence=%d\n",
                theta.name.c_str(), to_string(rep.theta_class.verdict),
                to_string(rep.carleman.verdict), rep.carleman.partial_sums.back(),
                static_cast<int>(rep.obstruction_evidence));
    return kExitOk;
}

int run_audit_thm13(const CommonOpts& o, int n, const std::vector<double>& kappa,
                    const std::string& theta_name, const std::string& theta_table,
                    double vanish_radius, double x_norm, double shift_a, int m_max) {
    const std::string dir = outdir_for(o, "audit-thm13");
    const DunklSetting setting = make_setting(n, RootConfig::Z2Coordinate, kappa);
    const ThetaSpec theta = theta_from(theta_name, theta_table);
    const RadialGrid rg = make_grid(std::max(o.r_max, vanish_radius + 2.0), o.panels, o.order);
    const RadialGrid lg = make_grid(o.lambda_max, o.lambda_panels, o.order);
    HarmonicComponent comp{0, "1", bump_profile(rg, vanish_radius, vanish_radius + 1.0)};
    std::vector<double> x(n, 0.0);
    x[0] = x_norm;
    const UncertaintyAuditReport rep = uncertainty_audit_thm13(
        setting, {comp}, vanish_radius, theta, x, lg, shift_a, m_max);
    write_audit_csvs(dir, rep);
    auto entries = audit_report_entries(rep);
    entries.insert(entries.begin(), {"pipeline", "audit-thm13"});
    entries.insert(entries.begin() + 1, {"theta", theta.name});
    entries.push_back({"lambda_kappa", format_double(setting.lambda_kappa())});
    write_report(dir + "/report.txt", entries);
    std::printf("audit-thm13 theta=%s: class=%s verdict=%s sum=%.4g evidence=%d\n",
                theta.name.c_str(), to_string(rep.theta_class.verdict),
                to_string(rep.carleman.verdict), rep.carleman.partial_sums.back(),
                static_cast<int>(rep.obstruction_evidence));
    return kExitOk;
}

int run_sharpness(const CommonOpts& o, const std::string& theta_name,
                  const std::string& theta_table, int boxes, double budget,
                  double order_lk) {
    const std::string dir = outdir_for(o, "sharpness-witness");
    const ThetaSpec theta = theta_from(theta_name, theta_table);
    const BoxConstruction bc = construct_box_product(theta, boxes, budget);
    const double S = bc.box.total_support();

    const RadialGrid lg = make_grid(40.0, 80, 8);
    SpectralSamples fhat = SpectralSamples::on_grid(lg, TransformKind::hankel(order_lk));
    for (std::size_t j = 0; j < fhat.size(); ++j)
        fhat.values[j] = bc.box.hat(fhat.lambdas[j]);
    const RadialGrid rg = make_grid(3.0 * S, 120, 8);
    const TransferResult tr = transfer_via_paley_wiener(fhat, order_lk, rg);

    // Projection envelope |P_lambda f(x)| = |b0(lambda) psi(lambda |x|)| <=
    // C' e^{-lambda theta(lambda)} at sample points inside the support.
    double cprime = 0.0;
    for (double xr : {0.0, 0.25 * S, 0.5 * S}) {
        for (std::size_t j = 0; j < fhat.size(); ++j) {
            const double lam = fhat.lambdas[j];
            if (lam < 1.0) continue;
            const double p = std::abs(fhat.values[j] * bessel_psi(order_lk, lam * xr));
            cprime = std::max(cprime, p * std::exp(lam * theta(lam)));
        }
    }
    std::vector<std::vector<double>> rows;
    for (const auto& t : bc.envelope_trace) rows.push_back({t[0], t[1], t[2]});
    write_csv(dir + "/envelope.csv", {"xi", "fhat_abs", "envelope"}, rows);
    rows.clear();
    for (const auto& t : tr.support.tail_curve) rows.push_back({t[0], t[1]});
    write_csv(dir + "/tail.csv", {"r", "tail_mass_fraction"}, rows);
    write_report(dir + "/report.txt",
                 {{"theta", theta.name},
                  {"order", format_double(order_lk)},
                  {"support", format_double(S)},
                  {"envelope_constant_C", format_double(bc.envelope_constant)},
                  {"projection_constant_Cprime", format_double(cprime)},
                  {"tail_mass_at_1_5_support", format_double(tr.support.tail_mass_at(1.5 * S))}});
    std::printf("sharpness-witness: C=%.4f C'=%.4f tail(1.5S)=%.3e\n",
                bc.envelope_constant, cprime, tr.support.tail_mass_at(1.5 * S));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral-projection toolkit: transform pairs, projection decay "
                 "audits and quasi-analyticity diagnostics"};
    app.set_config("--config", "", "key = value configuration file with [pipeline] sections");
    app.require_subcommand(0, 1);
    app.set_version_flag("--version", std::string("specproj ") + kVersion);
    app.footer("Thread count: SPECPROJ_THREADS environment variable.");

    auto* list = app.add_subcommand("list", "list the available pipelines");

    CommonOpts o;
    std::string pair = "jacobi";
    double alpha = 0.5, beta = -0.5, lambda = 2.0, shift_a = 1.0;
    int m_gamma = 2, m_2gamma = 0;
    double x_r = 0.5, x_norm = 0.5;
    std::string theta_name = "inv-sqrt", theta_table;
    int boxes = 64, m_max = 40;
    double budget = 1.0, vanish_radius = 1.0, order_lk = 0.5, ratio = 2.0;
    int nn = 2;
    std::vector<double> kappa = {0.3, 0.7};
    std::string demo = "geometric", norms_csv;

    auto* rt = app.add_subcommand("roundtrip", "forward/inverse round trip on a bump");
    add_common(rt, o);
    rt->add_option("--pair", pair, "hankel|jacobi")->check(CLI::IsMember({"hankel", "jacobi"}));
    rt->add_option("--alpha", alpha, "order / Jacobi alpha");
    rt->add_option("--beta", beta, "Jacobi beta");

    auto* pl = app.add_subcommand("plancherel", "both sides of the Plancherel identity");
    add_common(pl, o);
    pl->add_option("--pair", pair)->check(CLI::IsMember({"hankel", "jacobi"}));
    pl->add_option("--alpha", alpha);
    pl->add_option("--beta", beta);

    auto* ec = app.add_subcommand("eigencheck", "FD eigen-relation residual");
    add_common(ec, o);
    ec->add_option("--pair", pair)->check(CLI::IsMember({"hankel", "jacobi"}));
    ec->add_option("--alpha", alpha);
    ec->add_option("--beta", beta);
    ec->add_option("--lambda", lambda);
    ec->add_option("--shift-a", shift_a, "Bessel shift a");

    auto* pj = app.add_subcommand("project", "spectral projection fiber");
    add_common(pj, o);
    pj->add_option("--m-gamma", m_gamma);
    pj->add_option("--m-2gamma", m_2gamma);
    pj->add_option("--lambda", lambda);

    auto* sm = app.add_subcommand("spherical-mean", "spherical mean profile");
    add_common(sm, o);
    sm->add_option("--m-gamma", m_gamma);
    sm->add_option("--m-2gamma", m_2gamma);
    sm->add_option("--x-r", x_r);

    auto* ic = app.add_subcommand("ingham-construct", "box-product construction");
    add_common(ic, o);
    ic->add_option("--theta", theta_name, "inv-sqrt|inv-log|log-log|zero");
    ic->add_option("--theta-table", theta_table, "CSV table (t, theta)");
    ic->add_option("--boxes", boxes);
    ic->add_option("--support-budget", budget);

    auto* pw = app.add_subcommand("pw-transfer", "transfer spectral data to a radial profile");
    add_common(pw, o);
    pw->add_option("--theta", theta_name);
    pw->add_option("--theta-table", theta_table);
    pw->add_option("--boxes", boxes);
    pw->add_option("--support-budget", budget);
    pw->add_option("--alpha", order_lk, "Hankel order");

    auto* cl = app.add_subcommand("carleman", "Carleman sum verdict");
    add_common(cl, o);
    cl->add_option("--demo", demo, "geometric|factorial|factorial-sq");
    cl->add_option("--ratio", ratio, "geometric demo ratio");
    cl->add_option("--norms-csv", norms_csv, "CSV table (m, norm)");
    cl->add_option("--m-max", m_max);

    auto* a11 = app.add_subcommand("audit-thm11", "projection-decay audit, rank-one space");
    add_common(a11, o);
    a11->add_option("--m-gamma", m_gamma);
    a11->add_option("--m-2gamma", m_2gamma);
    a11->add_option("--theta", theta_name);
    a11->add_option("--theta-table", theta_table);
    a11->add_option("--vanish-radius", vanish_radius);
    a11->add_option("--x-r", x_r);
    a11->add_option("--m-max", m_max);

    auto* a13 = app.add_subcommand("audit-thm13", "projection-decay audit, Dunkl side");
    add_common(a13, o);
    a13->add_option("--n", nn);
    a13->add_option("--kappa", kappa, "multiplicities")->delimiter(',');
    a13->add_option("--theta", theta_name);
    a13->add_option("--theta-table", theta_table);
    a13->add_option("--vanish-radius", vanish_radius);
    a13->add_option("--x-norm", x_norm);
    a13->add_option("--shift-a", shift_a);
    a13->add_option("--m-max", m_max);

    auto* sw = app.add_subcommand("sharpness-witness", "construction-to-projection envelope chain");
    add_common(sw, o);
    sw->add_option("--theta", theta_name);
    sw->add_option("--theta-table", theta_table);
    sw->add_option("--boxes", boxes);
    sw->add_option("--support-budget", budget);
    sw->add_option("--order", order_lk, "Hankel order lambda_kappa");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);   // --help/--version
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (list->parsed()) {
            for (const auto& p : kPipelines) std::printf("%s\n", p.c_str());
            return kExitOk;
        }
        if (rt->parsed()) return run_roundtrip(o, pair, alpha, beta, false);
        if (pl->parsed()) return run_roundtrip(o, pair, alpha, beta, true);
        if (ec->parsed()) return run_eigencheck(o, pair, alpha, beta, lambda, shift_a);
        if (pj->parsed()) return run_project(o, m_gamma, m_2gamma, lambda);
        if (sm->parsed()) return run_spherical_mean(o, m_gamma, m_2gamma, x_r);
        if (ic->parsed())
            return run_ingham_construct(o, theta_name, theta_table, boxes, budget);
        if (pw->parsed())
            return run_pw_transfer(o, theta_name, theta_table, boxes, budget, order_lk);
        if (cl->parsed()) return run_carleman(o, demo, ratio, norms_csv, m_max);
        if (a11->parsed())
            return run_audit_thm11(o, m_gamma, m_2gamma, theta_name, theta_table,
                                   vanish_radius, x_r, m_max);
        if (a13->parsed())
            return run_audit_thm13(o, nn, kappa, theta_name, theta_table, vanish_radius,
                                   x_norm, shift_a, m_max);
        if (sw->parsed())
            return run_sharpness(o, theta_name, theta_table, boxes, budget, order_lk);
        std::fprintf(stderr, "no pipeline given; see --help or 'list'\n");
        return kExitConfig;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitModule;
    }
}
