#include "mesoent/scan_cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "mesoent/fock_oracle.hpp"

namespace mesoent {

namespace {

constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

std::string fmt_tol(const char* op, double v) { return std::string(op) + " " + format_double(v); }

VerifyRow at_most(std::string name, double measured, double tol) {
    return {std::move(name), measured, fmt_tol("<=", tol), measured <= tol};
}

VerifyRow at_least(std::string name, double measured, double tol) {
    return {std::move(name), measured, fmt_tol(">=", tol), measured >= tol};
}

std::vector<BathParams> random_baths(std::mt19937_64& rng, int count) {
    std::uniform_real_distribution<double> temp(0.05, 2.0), omega(0.5, 2.0), lambda(0.0, 1.0);
    std::vector<BathParams> out;
    for (int i = 0; i < count; ++i) {
        const double t = temp(rng);
        const double w = omega(rng);
        out.push_back(BathParams::from_temperature(t, w, lambda(rng)));
    }
    return out;
}

void micro_suite(const RunConfig& cfg, std::mt19937_64& rng, std::vector<VerifyRow>& rows) {
    double gen_dev = 0.0, span = 0.0, scalar = 0.0;
    for (const auto& bath : random_baths(rng, 12)) {
        const auto d = derive_meso_generator(bath);
        gen_dev = std::max(gen_dev, max_abs(RealMatrix(d.generator - generator(bath).matrix())));
        span = std::max(span, d.residual);
        scalar = std::max(scalar, d.scalar_parts.cwiseAbs().maxCoeff());
    }
    rows.push_back(at_most("meso generator matches closed form (12 random baths)", gen_dev, 1e-10));
    rows.push_back(at_most("span closure residual of L[X_mu]", span, kTol.span_closure));
    rows.push_back(at_most("thermal stationarity |<L[X_mu]>|", scalar, kTol.algebraic));

    const BathParams bath = cfg.bath();
    const auto kin = fluctuation_kinematics(bath);
    rows.push_back(at_most("Wick Sigma_beta vs (1+eta^2)/(4 eta)",
                           max_abs(RealMatrix(kin.sigma_beta - thermal_meso_covariance(bath))), 1e-12));
    rows.push_back(at_most("Wick sigma vs standard symplectic form",
                           max_abs(RealMatrix(kin.sigma - SymplecticForm::standard(3).matrix())), 1e-12));

    double kmin = 0.0;
    for (double lam : {-1.0, -0.5, 0.0, 0.5, 0.9, 1.0}) {
        const auto b = BathParams::from_temperature(bath.temperature(), bath.omega(), lam);
        kmin = std::min(kmin, min_eig_hermitian(kossakowski(b)));
    }
    rows.push_back(at_least("Kossakowski min eigenvalue, |lambda| <= 1", kmin, -1e-12));
    const double bad = min_eig_hermitian(
        kossakowski_matrix(BathParams::from_temperature(bath.temperature(), bath.omega(), 1.05)));
    rows.push_back({"Kossakowski min eigenvalue at lambda = 1.05", bad, "< -1e-06", bad < -1e-6});

    const auto unit = lindblad_action(QuadraticObservable::identity(), bath);
    rows.push_back(at_most("unitality |L[1]|",
                           std::max(unit.coefficients().cwiseAbs().maxCoeff(), std::abs(unit.offset())), 1e-12));

    const auto x1 = basis_observables(bath)[0];
    const double ratio = mean_field_variance(x1, bath, 1000) / mean_field_variance(x1, bath, 2000);
    rows.push_back(at_most("mean-field variance ratio N/2N minus 2", std::abs(ratio - 2.0), 1e-12));

    const FockGrid grid(cfg.n_max);
    const auto state = thermal_state(grid, bath);
    const auto cov = thermal_site_covariance(bath);
    double worst = 0.0;
    std::vector<CanonicalVar> idx(4);
    for (int order : {2, 4}) {
        const int count = order == 2 ? 16 : 256;
        idx.resize(static_cast<std::size_t>(order));
        for (int code = 0; code < count; ++code) {
            int c = code;
            for (int m = 0; m < order; ++m) {
                idx[static_cast<std::size_t>(m)] = static_cast<CanonicalVar>(c % 4);
                c /= 4;
            }
            const Complex wick = ordered_moment(cov, idx);
            const Complex fock = fock_moment(state, grid, idx);
            const double denom = std::abs(wick) > 1e-12 ? std::abs(wick) : 1.0;
            worst = std::max(worst, std::abs(wick - fock) / denom);
        }
    }
    rows.push_back(at_most("Wick vs truncated Fock moments, orders 2 and 4 (rel)", worst, 1e-6));
}

void meso_suite(const RunConfig& cfg, std::mt19937_64& rng, std::vector<VerifyRow>& rows) {
    const BathParams bath = cfg.bath();
    const auto gen = generator(bath);
    const RealMatrix sb = thermal_meso_covariance(bath);
    const auto form = SymplecticForm::standard(3);

    std::uniform_real_distribution<double> time(0.0, 5.0);
    double m_res = 0.0, k_res = 0.0, k_min = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double t = time(rng);
        const double s = time(rng);
        const auto bt = propagate(gen, sb, t);
        const auto bs = propagate(gen, sb, s);
        const auto bts = propagate(gen, sb, t + s);
        m_res = std::max(m_res, max_abs(RealMatrix(bts.m - bt.m * bs.m)));
        k_res = std::max(k_res, max_abs(RealMatrix(bts.k - (bt.k + bt.m * bs.k * bt.m.transpose()))));
        k_min = std::min(k_min, min_eig_hermitian(ComplexMatrix(bt.k.cast<Complex>())));
    }
    rows.push_back(at_most("semigroup |M_{t+s} - M_t M_s|", m_res, 1e-10));
    rows.push_back(at_most("noise composition |K_{t+s} - K_t - M_t K_s M_t^T|", k_res, 1e-10));
    rows.push_back(at_least("K_t min eigenvalue", k_min, -1e-10));

    double cp = 0.0;
    for (double lam : {0.0, 0.9, 1.0, bath.lambda()}) {
        const auto g = generator(BathParams::from_temperature(bath.temperature(), bath.omega(), lam));
        for (double t : {0.1, 0.5, 1.0, 5.0, 20.0}) cp = std::min(cp, cp_certificate(propagate(g, sb, t), sb, form));
    }
    rows.push_back(at_least("complete-positivity margin", cp, -1e-10));

    double stat = 0.0;
    const CovarianceMatrix thermal(sb, form);
    for (double t : {0.1, 1.0, 10.0}) {
        stat = std::max(stat, max_abs(RealMatrix(evolve_covariance(gen, sb, thermal, t).matrix() - sb)));
    }
    rows.push_back(at_most("stationarity of Sigma_beta", stat, 1e-9));

    rows.push_back(at_most("closed-form vs micro-derived generator",
                           max_abs(RealMatrix(gen.matrix() - generator_from_micro(bath).matrix())), 1e-10));

    std::uniform_real_distribution<double> temp(0.05, 1.0), lam(0.0, 1.0), kk(0.0, 2.0), tt(0.0, 10.0);
    double cf = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double t0 = temp(rng);
        const double l0 = lam(rng);
        const double k0 = kk(rng);
        const double time0 = tt(rng);
        const auto b = BathParams::from_temperature(t0, bath.omega(), l0);
        cf = std::max(cf, (closed_form_reduced(b, k0, time0).matrix() - evolved_reduced(b, k0, time0).matrix())
                              .cwiseAbs()
                              .maxCoeff());
    }
    rows.push_back(at_most("closed-form reduced covariance vs pipeline (20 points)", cf, 1e-9));

    const auto init = squeeze(MesoGaussianState(sb), SqueezeSpec{cfg.squeeze_k});
    double bona = std::numeric_limits<double>::infinity();
    for (double t : uniform_grid(10.0, 0.5)) {
        bona = std::min(bona, check_bona_fide(evolve_covariance(gen, sb, init.covariance(), t)).margin);
    }
    rows.push_back(at_least("bona fide margin of evolved squeezed state", bona, -kTol.bona_fide));
}

void fock_suite(const RunConfig& cfg, std::mt19937_64& rng, const std::vector<long>& n_list,
                std::vector<VerifyRow>& rows) {
    const BathParams bath = cfg.bath();
    const FockGrid grid(cfg.n_max);
    rows.push_back(at_most("interior canonical commutators", interior_ccr_residual(FockGrid(std::min(cfg.n_max, 12))),
                           1e-12));

    const RealVector e1 = RealVector::Unit(6, 0);
    const auto clt = clt_convergence(e1, n_list, grid, bath);
    for (std::size_t i = 0; i < clt.n_values.size(); ++i) {
        rows.push_back({"CLT |<W>_N - Gaussian| at N = " + std::to_string(clt.n_values[i]), clt.errors[i],
                        "report", true});
    }
    rows.push_back({"CLT log-log error slope", clt.slope, "in [-0.65, -0.35]",
                    clt.slope >= -0.65 && clt.slope <= -0.35});
    rows.push_back(at_most("CLT n_max+4 shift", clt.nmax_shift, kTol.algebraic));

    std::normal_distribution<double> normal(0.0, 0.5);
    double worst = 0.0;
    bool decreasing = true;
    for (int pair = 0; pair < 3; ++pair) {
        RealVector r1(6), r2(6);
        for (int i = 0; i < 6; ++i) r1(i) = normal(rng);
        for (int i = 0; i < 6; ++i) r2(i) = normal(rng);
        const double a = weyl_product_residual(r1, r2, 10000, grid, bath);
        const double b = weyl_product_residual(r1, r2, 100000, grid, bath);
        worst = std::max(worst, a);
        decreasing = decreasing && b < a;
    }
    rows.push_back(at_most("Weyl product residual at N = 1e4", worst, 0.02));
    rows.push_back({"Weyl product residual decreases to N = 1e5", decreasing ? 1.0 : 0.0, "== 1", decreasing});

    const FockGrid small(8);
    const RealVector e2 = RealVector::Unit(6, 1), e3 = RealVector::Unit(6, 2), zero = RealVector::Zero(6);
    const auto sandwich_bath = BathParams::from_temperature(bath.temperature(), bath.omega(), 0.9);
    double prev = std::numeric_limits<double>::infinity();
    bool monotone = true;
    double stat = 0.0;
    for (long n : {50L, 200L, 800L}) {
        const auto s = theorem2_sandwich(e1, e3, e2, 0.5, n, small, sandwich_bath);
        rows.push_back({"sandwich error at N = " + std::to_string(n), s.error, "report", true});
        monotone = monotone && s.error < prev;
        prev = s.error;
        const auto st = theorem2_sandwich(zero, e3, zero, 0.5, n, small, sandwich_bath);
        const double gauss = std::exp(-0.5 * e3.dot(thermal_meso_covariance(sandwich_bath) * e3));
        stat = std::max(stat, std::abs(st.rhs - gauss));
        stat = std::max(stat, std::abs(st.lhs - weyl_expectation_N(e3, n, small, sandwich_bath)));
    }
    rows.push_back({"sandwich error decreasing in N", monotone ? 1.0 : 0.0, "== 1", monotone});
    rows.push_back(at_most("sandwich stationarity (r1 = r2 = 0)", stat, 1e-8));
}

std::vector<double> k_grid(double k_min, double k_max, int steps) {
    std::vector<double> out;
    if (steps <= 0 || k_min > k_max) return out;
    if (steps == 1) return {k_min};
    for (int i = 0; i < steps; ++i) out.push_back(k_min + (k_max - k_min) * i / (steps - 1));
    return out;
}

class OutputSink {
public:
    OutputSink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ValidityError("--out: cannot open '" + path + "' for writing");
            stream_ = &file_;
        }
    }
    std::ostream& stream() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

void add_bath_options(CLI::App* cmd, RunConfig& cfg, double& beta_in) {
    auto* temp = cmd->add_option("--temperature", cfg.temperature, "bath temperature T > 0")
                     ->check(CLI::PositiveNumber)
                     ->capture_default_str();
    auto* beta = cmd->add_option("--beta", beta_in, "inverse temperature (excludes --temperature)")
                     ->check(CLI::PositiveNumber);
    temp->excludes(beta);
    cmd->add_option("--omega", cfg.omega, "oscillator frequency")->check(CLI::PositiveNumber)->capture_default_str();
}

void add_format_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--out", cfg.out, "output path (default: stdout)");
    cmd->add_option("--format", cfg.format, "csv or json")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, OutputFormat>{{"csv", OutputFormat::csv}, {"json", OutputFormat::json}}));
}

int cmd_evolve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const BathParams bath = cfg.bath();
    if (!bath.completely_positive()) {
        err << "error: --lambda " << format_double(cfg.lambda)
            << " violates complete positivity (requires lambda^2 <= 1)\n";
        return kExitUsage;
    }
    const auto grid = uniform_grid(cfg.t_max, cfg.dt_sample);
    const auto curve = entanglement_curve(bath, cfg.squeeze_k, grid);
    OutputSink sink(cfg.out, out);
    if (cfg.format == OutputFormat::csv) {
        write_curve_csv(sink.stream(), curve);
    } else {
        sink.stream() << curve_to_json(curve).dump(1) << '\n';
    }
    return 0;
}

int cmd_phase(const RunConfig& cfg, const std::vector<double>& ks, std::ostream& out, std::ostream& err) {
    if (ks.empty()) {
        err << "error: empty k range (check --k-min, --k-max, --k-steps or --k-list)\n";
        return kExitUsage;
    }
    if (!std::is_sorted(ks.begin(), ks.end())) {
        err << "error: k values must be in increasing order\n";
        return kExitUsage;
    }
    const auto rows = phase_boundary(ks, cfg.lambda, cfg.omega);
    OutputSink sink(cfg.out, out);
    if (cfg.format == OutputFormat::csv) {
        write_boundary_csv(sink.stream(), rows);
    } else {
        sink.stream() << boundary_to_json(rows).dump(1) << '\n';
    }
    bool ok = true;
    for (const auto& r : rows) {
        if (!r.ok) {
            err << "k = " << format_double(r.k) << ": " << r.message << '\n';
            ok = false;
        }
    }
    return ok ? 0 : kExitNumerical;
}

}  // namespace

BathParams RunConfig::bath() const {
    return beta ? BathParams::from_beta(*beta, omega, lambda) : BathParams::from_temperature(temperature, omega, lambda);
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void to_json(nlohmann::json& j, const EntanglementReport& r) {
    j = nlohmann::json{{"I1", r.i1}, {"I2", r.i2}, {"I3", r.i3},     {"I4", r.i4},
                       {"S", r.s},   {"Idet", r.idet}, {"E", r.e}, {"separable", r.separable}};
}

const std::vector<std::string> kCurveColumns = {"t",       "E",       "S",       "Idet",     "Sigma11",
                                                "Sigma22", "Sigma33", "Sigma44", "Sigmac11", "Sigmac22"};

namespace {

std::array<double, 10> curve_values(const CurveSample& s) {
    return {s.t,           s.report.e,    s.report.s,    s.report.idet, s.sigma(0, 0),
            s.sigma(1, 1), s.sigma(2, 2), s.sigma(3, 3), s.sigma(0, 2), s.sigma(1, 3)};
}

}  // namespace

void write_curve_csv(std::ostream& os, const EntanglementCurve& curve) {
    for (std::size_t i = 0; i < kCurveColumns.size(); ++i) os << (i ? "," : "") << kCurveColumns[i];
    os << '\n';
    for (const auto& s : curve.samples) {
        const auto v = curve_values(s);
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << format_double(v[i]);
        os << '\n';
    }
}

nlohmann::json curve_to_json(const EntanglementCurve& curve) {
    auto arr = nlohmann::json::array();
    for (const auto& s : curve.samples) {
        const auto v = curve_values(s);
        nlohmann::json row = nlohmann::json::object();
        for (std::size_t i = 0; i < v.size(); ++i) row[kCurveColumns[i]] = v[i];
        arr.push_back(std::move(row));
    }
    return arr;
}

void write_boundary_csv(std::ostream& os, const std::vector<BoundaryRow>& rows) {
    os << "k,T_c,bisection_margin,T_c_closed_form,status\n";
    for (const auto& r : rows) {
        os << format_double(r.k) << ',' << format_double(r.t_c) << ',' << format_double(r.margin) << ','
           << format_double(r.closed_form) << ',' << (r.ok ? "ok" : "bracket_failure") << '\n';
    }
}

nlohmann::json boundary_to_json(const std::vector<BoundaryRow>& rows) {
    auto arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back({{"k", r.k},
                       {"T_c", r.t_c},
                       {"bisection_margin", r.margin},
                       {"T_c_closed_form", r.closed_form},
                       {"status", r.ok ? "ok" : "bracket_failure"}});
    }
    return arr;
}

std::vector<VerifyRow> run_verify_suite(const std::string& suite, const RunConfig& config,
                                        const std::vector<long>& n_list) {
    const bool all = suite == "all";
    if (!all && suite != "micro" && suite != "meso" && suite != "fock") {
        throw ValidityError("unknown suite '" + suite + "' (expected micro, meso, fock or all)");
    }
    std::mt19937_64 rng(config.seed);
    std::vector<VerifyRow> rows;
    if (all || suite == "micro") micro_suite(config, rng, rows);
    if (all || suite == "meso") meso_suite(config, rng, rows);
    if (all || suite == "fock") fock_suite(config, rng, n_list, rows);
    return rows;
}

void write_verify_table(std::ostream& os, const std::vector<VerifyRow>& rows) {
    std::size_t width = 5;
    for (const auto& r : rows) width = std::max(width, r.check.size());
    os << std::left << std::setw(static_cast<int>(width)) << "check" << "  " << std::setw(24) << "measured"
       << "  " << std::setw(20) << "tolerance" << "  status\n";
    std::size_t passed = 0;
    for (const auto& r : rows) {
        os << std::setw(static_cast<int>(width)) << r.check << "  " << std::setw(24) << format_double(r.measured)
           << "  " << std::setw(20) << r.tolerance << "  " << (r.pass ? "PASS" : "FAIL") << '\n';
        passed += r.pass ? 1 : 0;
    }
    os << passed << "/" << rows.size() << " checks passed\n";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Mesoscopic entanglement of two dissipative oscillator chains", "mesoent"};
    app.require_subcommand(1);

    RunConfig cfg;
    double beta_in = 0.0;

    auto* evolve = app.add_subcommand("evolve", "entanglement curve E(t) of the squeezed thermal state");
    add_bath_options(evolve, cfg, beta_in);
    evolve->add_option("--lambda", cfg.lambda, "inter-chain bath coupling")->capture_default_str();
    evolve->add_option("--squeeze", cfg.squeeze_k, "squeezing parameter k")->capture_default_str();
    evolve->add_option("--t-max", cfg.t_max, "final time")->check(CLI::PositiveNumber)->capture_default_str();
    evolve->add_option("--dt", cfg.dt_sample, "sampling step")->check(CLI::PositiveNumber)->capture_default_str();
    add_format_options(evolve, cfg);

    double k_min = 0.25, k_max = 2.0;
    int k_steps = 8;
    std::vector<double> k_list;
    bool nonphysical = false;
    auto* phase = app.add_subcommand("phase", "critical temperature T_c(k) at lambda = 1");
    phase->add_option("--omega", cfg.omega, "oscillator frequency")->check(CLI::PositiveNumber)->capture_default_str();
    auto* lam_opt = phase->add_option("--lambda", cfg.lambda, "coupling (1 defines the boundary)");
    phase->add_flag("--allow-nonphysical-lambda", nonphysical, "accept --lambda != 1");
    auto* kmin_opt = phase->add_option("--k-min", k_min, "smallest k")->capture_default_str();
    auto* kmax_opt = phase->add_option("--k-max", k_max, "largest k")->capture_default_str();
    auto* ksteps_opt = phase->add_option("--k-steps", k_steps, "number of k values")->capture_default_str();
    auto* klist_opt = phase->add_option("--k-list", k_list, "explicit comma-separated k values")->delimiter(',');
    klist_opt->excludes(kmin_opt)->excludes(kmax_opt)->excludes(ksteps_opt);
    add_format_options(phase, cfg);

    std::string suite = "all";
    std::vector<long> n_list{100, 1000, 10000, 100000};
    auto* verify = app.add_subcommand("verify", "run invariant suites and print a check table");
    verify->add_option("--suite", suite, "micro, meso, fock or all")->capture_default_str();
    verify->add_option("--n-list", n_list, "N values for the Weyl expectation convergence check")->delimiter(',');
    verify->add_option("--seed", cfg.seed, "seed for randomized grids")->capture_default_str();
    verify->add_option("--nmax", cfg.n_max, "Fock cutoff per mode")->check(CLI::Range(4, 60))->capture_default_str();
    add_bath_options(verify, cfg, beta_in);
    verify->add_option("--lambda", cfg.lambda, "inter-chain bath coupling")->capture_default_str();
    verify->add_option("--squeeze", cfg.squeeze_k, "squeezing parameter k")->capture_default_str();
    verify->add_option("--out", cfg.out, "output path (default: stdout)");

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("mesoent");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    for (auto* cmd : {evolve, verify}) {
        if (cmd->parsed() && cmd->count("--beta") > 0) cfg.beta = beta_in;
    }

    try {
        if (evolve->parsed()) return cmd_evolve(cfg, out, err);
        if (phase->parsed()) {
            if (lam_opt->count() == 0) cfg.lambda = 1.0;
            if (cfg.lambda != 1.0 && !nonphysical) {
                err << "error: --lambda must be 1 for the phase boundary (pass --allow-nonphysical-lambda to override)\n";
                return kExitUsage;
            }
            if (cfg.lambda * cfg.lambda > 1.0) {
                err << "error: --lambda violates complete positivity (requires lambda^2 <= 1)\n";
                return kExitUsage;
            }
            const auto ks = klist_opt->count() > 0 ? k_list : k_grid(k_min, k_max, k_steps);
            return cmd_phase(cfg, ks, out, err);
        }
        if (suite != "micro" && suite != "meso" && suite != "fock" && suite != "all") {
            err << "error: --suite must be one of micro, meso, fock, all (got '" << suite << "')\n";
            return kExitUsage;
        }
        if (n_list.size() < 2 || std::any_of(n_list.begin(), n_list.end(), [](long n) { return n < 1; })) {
            err << "error: --n-list needs at least two positive values\n";
            return kExitUsage;
        }
        if (!cfg.bath().completely_positive()) {
            err << "error: --lambda violates complete positivity (requires lambda^2 <= 1)\n";
            return kExitUsage;
        }
        const auto rows = run_verify_suite(suite, cfg, n_list);
        OutputSink sink(cfg.out, out);
        write_verify_table(sink.stream(), rows);
        const bool ok = std::all_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.pass; });
        return ok ? 0 : kExitNumerical;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.numerical() ? kExitNumerical : kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace mesoent
