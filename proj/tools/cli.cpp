#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "sucs/parallel.hpp"

namespace sucs::cli {

namespace {

std::string table_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4e", v);
    return buf;
}


// Configuration problems are usage errors, not runtime failures.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json check(const std::string& name, bool pass, double value, double bound) {
    return json{{"name", name}, {"pass", pass}, {"value", value}, {"bound", bound}};
}

json finish(json report) {
    bool pass = true;
    for (const auto& c : report.at("checks")) pass = pass && c.at("pass").get<bool>();
    report["pass"] = pass;
    return report;
}

void print_checks(const json& report, std::ostream& err) {
    for (const auto& c : report.at("checks"))
        err << (c.at("pass").get<bool>() ? "PASS " : "FAIL ") << c.at("name").get<std::string>()
            << " value=" << format_double(c.at("value").get<double>())
            << " bound=" << format_double(c.at("bound").get<double>()) << "\n";
}

void emit(const std::string& content, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << content;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
    file << content;
    if (!file) throw std::runtime_error("failed writing '" + path + "'");
    out << path << "\n";
}

json read_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream file(path);
    if (!file) throw UsageError("cannot read config '" + path + "'");
    try {
        return json::parse(file);
    } catch (const json::parse_error& e) {
        throw UsageError("config '" + path + "': " + e.what());
    }
}

CVector complex_vector(const json& j, const std::string& re_key, const std::string& im_key, int size) {
    const auto& re = j.at(re_key);
    const json im = j.value(im_key, json::array());
    if (static_cast<int>(re.size()) != size || (!im.empty() && static_cast<int>(im.size()) != size))
        throw UsageError(re_key + "/" + im_key + " must have " + std::to_string(size) + " entries");
    CVector v(size);
    for (int i = 0; i < size; ++i)
        v[i] = cplx(re.at(static_cast<std::size_t>(i)).get<double>(), im.empty() ? 0.0 : im.at(static_cast<std::size_t>(i)).get<double>());
    return v;
}

// {"psi_re", "psi_im"} or {"xi_re", "xi_im"}
CoherentState initial_state(const json& j, const RepresentationSpec& rep) {
    if (j.contains("xi_re")) return state_from_psi(psi_from_xi({complex_vector(j, "xi_re", "xi_im", rep.params()), rep}), rep);
    if (j.contains("psi_re")) return state_from_psi(complex_vector(j, "psi_re", "psi_im", rep.params()), rep);
    throw UsageError("initial state needs psi_re or xi_re");
}

std::pair<double, double> time_span(const json& config, const CLI::Option* t0_opt, double t0, const CLI::Option* t1_opt,
                                    double t1) {
    std::pair<double, double> span{0.0, 0.0};
    if (config.contains("t_span")) {
        const auto& ts = config.at("t_span");
        if (ts.size() != 2) throw UsageError("t_span must be [t0, t1]");
        span = {ts.at(0).get<double>(), ts.at(1).get<double>()};
    }
    if (t0_opt->count()) span.first = t0;
    if (t1_opt->count()) span.second = t1;
    if (!(span.second >= span.first)) throw UsageError("t_span must satisfy t1 >= t0");
    return span;
}

std::vector<double> sample_times(std::pair<double, double> span, int samples) {
    if (samples <= 0) return {};
    if (samples == 1 || span.first == span.second) return {span.first};
    return linspace(span.first, span.second, static_cast<std::size_t>(samples));
}

// ---------------------------------------------------------------- generators

int cmd_generators(int n, bool run_check, const std::string& output, std::ostream& out, std::ostream& err) {
    if (n < 2 || n > 16) {
        err << "generators: n must lie in 2..16\n";
        return kExitUsage;
    }
    const auto gen = build_generators(RepresentationSpec::fundamental(n));
    emit(generators_to_json(gen).dump(2) + "\n", output, out);
    err << "generators: n=" << n << " count=" << gen.size() << "\n";
    if (!run_check) return kExitOk;
    const json report = verify_algebra(n);
    print_checks(report, err);
    return report.at("pass").get<bool>() ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------- evolve

struct EvolveFlags {
    std::string config, output, mode, format;
    double tolerance = 0.0, t0 = 0.0, t1 = 0.0;
    int samples = 0;
    std::vector<std::string> observables;
    CLI::Option *mode_opt = nullptr, *format_opt = nullptr, *tol_opt = nullptr, *t0_opt = nullptr, *t1_opt = nullptr,
                *samples_opt = nullptr, *obs_opt = nullptr, *out_opt = nullptr;
};

int cmd_evolve(const EvolveFlags& f, std::ostream& out, std::ostream& err) {
    const json config = read_config(f.config);
    const auto rep = rep_from_json(config);
    if (!config.contains("hamiltonian")) throw UsageError("evolve: config needs a hamiltonian");
    const auto h = hamiltonian_from_json(config.at("hamiltonian"), rep);
    const auto start = initial_state(config.value("initial", json::object()), rep);
    const auto span = time_span(config, f.t0_opt, f.t0, f.t1_opt, f.t1);

    IntegrateOptions opt;
    opt.tolerance = f.tol_opt->count() ? f.tolerance : config.value("tolerance", 1e-10);
    opt.mode = parse_eom_mode(f.mode_opt->count() ? f.mode : config.value("mode", std::string("metric")));
    opt.observables = f.obs_opt->count() ? f.observables : config.value("observables", std::vector<std::string>{});
    opt.output_times = sample_times(span, f.samples_opt->count() ? f.samples : config.value("samples", 0));
    const std::string format = f.format_opt->count() ? f.format : config.value("format", std::string("csv"));
    if (format != "csv" && format != "json") throw UsageError("evolve: format must be csv or json");
    const std::string output = f.out_opt->count() ? f.output : config.value("output", std::string());

    const Trajectory traj = integrate(start, h, span, opt);
    std::ostringstream body;
    if (format == "csv")
        write_trajectory_csv(body, traj);
    else
        body << trajectory_to_json(traj).dump(2) << "\n";
    emit(body.str(), output, out);

    err << "evolve: mode=" << to_string(traj.mode) << " rows=" << traj.size() << " accepted=" << traj.stats.accepted
        << " rejected=" << traj.stats.rejected << " chart_flips=" << traj.stats.chart_flips.size() << "\n";
    err << "evolve: energy_drift=" << format_double(traj.energy_drift())
        << " casimir_drift=" << format_double(traj.casimir_drift()) << "\n";
    const CVector& last = traj.psi_series.back();
    err << "evolve: final_psi=";
    for (Eigen::Index i = 0; i < last.size(); ++i)
        err << (i ? "," : "") << "(" << format_double(last[i].real()) << "," << format_double(last[i].imag()) << ")";
    err << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- chain

struct ChainFlags {
    std::string config, output;
    double tolerance = 0.0, t0 = 0.0, t1 = 0.0;
    int samples = 0;
    CLI::Option *tol_opt = nullptr, *t0_opt = nullptr, *t1_opt = nullptr, *samples_opt = nullptr, *out_opt = nullptr;
};

ChainState chain_initial(const json& j, const ChainModel& model) {
    if (j.contains("per_site")) {
        const auto& sites = j.at("per_site");
        if (static_cast<int>(sites.size()) != model.sites) throw UsageError("chain: per_site initial has wrong length");
        ChainState s;
        for (const auto& site : sites) s.psi.push_back(complex_vector(site, "psi_re", "psi_im", model.rep.params()));
        return s;
    }
    if (j.contains("psi_re"))
        return uniform_chain_state(model.sites, complex_vector(j, "psi_re", "psi_im", model.rep.params()));
    return uniform_chain_state(model.sites, CVector::Zero(model.rep.params()));
}

int cmd_chain(const ChainFlags& f, std::ostream& out, std::ostream& err) {
    const json config = read_config(f.config);
    const ChainModel model = chain_model_from_json(config.contains("model") ? config.at("model") : config);
    const ChainState start = chain_initial(config.value("initial", json::object()), model);
    const auto span = time_span(config, f.t0_opt, f.t0, f.t1_opt, f.t1);
    ChainEvolveOptions opt;
    opt.tolerance = f.tol_opt->count() ? f.tolerance : config.value("tolerance", 1e-10);
    opt.output_times = sample_times(span, f.samples_opt->count() ? f.samples : config.value("samples", 0));
    const std::string output = f.out_opt->count() ? f.output : config.value("output", std::string());

    const ChainTrajectory traj = chain_evolve(start, model, span, opt);
    std::ostringstream body;
    write_chain_csv(body, traj);
    emit(body.str(), output, out);

    double dipole_change = 0.0;
    for (const auto& row : traj.dipole_series)
        for (std::size_t a = 0; a < row.size(); ++a)
            for (int c = 0; c < 3; ++c) dipole_change = std::max(dipole_change, std::abs(row[a][c] - traj.dipole_series[0][a][c]));
    err << "chain: sites=" << model.sites << " n=" << model.rep.n << " variables_per_site=" << variables_per_site(model.rep)
        << " rows=" << traj.size() << " accepted=" << traj.stats.accepted << "\n";
    err << "chain: energy_drift=" << format_double(traj.energy_drift())
        << " total_Sz_drift=" << format_double(traj.total_sz_drift())
        << " max_dipole_change=" << format_double(dipole_change) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- propagator-check

int cmd_propagator_check(int n, double t, std::uint64_t seed, std::size_t workers, const std::string& output,
                         std::ostream& out, std::ostream& err) {
    if (n != 2 && n != 3) {
        err << "propagator-check: n must be 2 or 3\n";
        return kExitUsage;
    }
    const auto rep = RepresentationSpec::fundamental(n);
    const auto h = HamiltonianSpec::from_terms({{1.0, {"Sx"}}}, rep);
    const auto a = state_from_psi(CVector::Zero(n - 1), rep);
    CVector pb = CVector::Zero(n - 1);
    pb[0] = 0.5;
    const auto b = state_from_psi(pb, rep);

    json semigroup = json::array();
    bool pass = true;
    err << "samples      |error|        std_error      within_3sigma\n";
    for (std::uint64_t samples : {100000ULL, 200000ULL, 400000ULL, 800000ULL}) {
        const auto r = semigroup_mc_check(a, b, h, t, samples, seed, workers);
        semigroup.push_back(propagator_report_to_json(r));
        pass = pass && r.within_3sigma;
        err << std::left << std::setw(13) << samples << std::setw(15) << table_number(r.abs_error)
            << std::setw(15) << table_number(r.std_error) << (r.within_3sigma ? "yes" : "no") << "\n";
    }

    std::mt19937_64 rng(seed);
    const PathFunction path = random_smooth_path(n - 1, rng);
    const auto times = linspace(0.0, 2.0, 9);
    json kinetic = json::array();
    err << "epsilon      deviation      ratio\n";
    double previous = 0.0;
    for (double eps : {1e-3, 5e-4, 2.5e-4, 1.25e-4}) {
        const auto r = short_time_kinetic_check(path, rep, times, eps);
        kinetic.push_back(json{{"epsilon", eps}, {"deviation", r.deviation}, {"richardson_ratio", r.richardson_ratio},
                               {"first_order", r.first_order}});
        pass = pass && r.first_order;
        err << std::left << std::setw(13) << table_number(eps) << std::setw(15) << table_number(r.deviation)
            << (previous > 0 ? table_number(previous / r.deviation) : "-") << "\n";
        previous = r.deviation;
    }
    const json report{{"n", n}, {"t", t}, {"seed", seed}, {"semigroup", semigroup}, {"kinetic", kinetic}, {"pass", pass}};
    emit(report.dump(2) + "\n", output, out);
    err << "propagator-check: " << (pass ? "pass" : "FAIL") << "\n";
    return pass ? kExitOk : kExitFailure;
}

}  // namespace

// ---------------------------------------------------------------- verification suites

json verify_algebra(int n) {
    if (n < 2 || n > 16) throw std::invalid_argument("verify algebra: n must lie in 2..16");
    const auto rep = RepresentationSpec::fundamental(n);
    const auto gen = build_generators(rep);
    const auto all = gen.all();
    json checks = json::array();
    const double count = static_cast<double>(all.size());
    checks.push_back(check("generator_count", all.size() == static_cast<std::size_t>(n * n - 1), count, n * n - 1.0));
    double herm = 0.0, trace = 0.0, ortho = 0.0;
    for (std::size_t a = 0; a < all.size(); ++a) {
        herm = std::max(herm, hermiticity_residue(all[a]));
        trace = std::max(trace, std::abs(all[a].trace()));
        for (std::size_t b = 0; b < all.size(); ++b)
            ortho = std::max(ortho, std::abs((all[a] * all[b]).trace() - (a == b ? 2.0 : 0.0)));
    }
    checks.push_back(check("hermitian", herm < 1e-12, herm, 1e-12));
    checks.push_back(check("traceless", trace < 1e-12, trace, 1e-12));
    checks.push_back(check("orthonormal_trace_2", ortho < 1e-12, ortho, 1e-12));

    const auto& s = gen.spin;
    const double hbar = rep.hbar;
    const double comm = std::max({max_abs(commutator(s.s_x(), s.s_y()) - I_UNIT * hbar * s.s_z),
                                  max_abs(commutator(s.s_z, s.s_plus) - hbar * s.s_plus),
                                  max_abs(commutator(s.s_plus, s.s_minus) - 2.0 * hbar * s.s_z)});
    checks.push_back(check("spin_commutators", comm < 1e-12, comm, 1e-12));
    const auto cas = casimir(gen);
    checks.push_back(check("casimir_scalar", cas.is_scalar, cas.is_scalar ? 1.0 : 0.0, 1.0));
    checks.push_back(check("casimir_eigenvalue", std::abs(cas.eigenvalue - cas.expected) < 1e-10,
                           std::abs(cas.eigenvalue - cas.expected), 1e-10));

    const auto f_trace = structure_constants(gen);
    const auto f_expand = structure_constants_by_expansion(gen);
    const double routes = f_trace.max_abs_difference(f_expand);
    checks.push_back(check("structure_constants_routes_agree", routes < 1e-10, routes, 1e-10));
    const double anti = f_trace.antisymmetry_residue();
    checks.push_back(check("structure_constants_antisymmetric", anti < 1e-12, anti, 1e-12));
    std::mt19937_64 rng(kDefaultSeed);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    double jacobi = 0.0;
    for (int k = 0; k < 200; ++k) {
        const auto& x = all[pick(rng)];
        const auto& y = all[pick(rng)];
        const auto& z = all[pick(rng)];
        jacobi = std::max(jacobi, max_abs(commutator(x, commutator(y, z)) + commutator(y, commutator(z, x)) +
                                          commutator(z, commutator(x, y))));
    }
    checks.push_back(check("jacobi_identity", jacobi < 1e-10, jacobi, 1e-10));
    return finish(json{{"suite", "algebra"},
                       {"n", n},
                       {"casimir", {{"eigenvalue", cas.eigenvalue}, {"expected", cas.expected}}},
                       {"checks", checks}});
}

json verify_completeness(int n, std::uint64_t samples, std::uint64_t seed, std::size_t workers) {
    if (n != 2 && n != 3) throw std::invalid_argument("verify completeness: n must be 2 or 3");
    const auto report = verify_resolution_of_identity(RepresentationSpec::fundamental(n), samples, seed, workers);
    const double bound = n == 2 ? 0.02 : 0.05;
    json checks = json::array();
    checks.push_back(check("residual_max", report.residual_max < bound, report.residual_max, bound));
    checks.push_back(check("consistent_with_zero_3sigma", report.consistent_3sigma, report.max_z, 3.0));
    checks.push_back(check("trace", std::abs(report.trace - n) < 1e-10, std::abs(report.trace - n), 1e-10));
    return finish(json{{"suite", "completeness"},
                       {"n", n},
                       {"seed", seed},
                       {"samples", samples},
                       {"report", resolution_report_to_json(report)},
                       {"checks", checks}});
}

json verify_propagator(int n, std::uint64_t samples, std::uint64_t seed, std::size_t workers) {
    if (n != 2 && n != 3) throw std::invalid_argument("verify propagator: n must be 2 or 3");
    const auto rep = RepresentationSpec::fundamental(n);
    const auto a = state_from_psi(CVector::Zero(n - 1), rep);
    CVector pb = CVector::Zero(n - 1);
    pb[0] = 0.5;
    const auto b = state_from_psi(pb, rep);
    json checks = json::array(), reports = json::array();

    const auto zero = semigroup_mc_check(a, b, HamiltonianSpec::from_matrix(CMatrix::Zero(n, n), rep), 1.0, samples,
                                         seed, workers);
    const auto sx = semigroup_mc_check(a, b, HamiltonianSpec::from_terms({{1.0, {"Sx"}}}, rep), 1.0, samples,
                                       substream_seed(seed, 1), workers);
    reports.push_back(propagator_report_to_json(zero));
    reports.push_back(propagator_report_to_json(sx));
    checks.push_back(check("completeness_insertion_3sigma", zero.within_3sigma, zero.abs_error, 3 * zero.std_error));
    checks.push_back(check("semigroup_Sx_3sigma", sx.within_3sigma, sx.abs_error, 3 * sx.std_error));
    if (n == 2 && samples >= 1'000'000) checks.push_back(check("std_error", sx.std_error < 0.02, sx.std_error, 0.02));

    std::mt19937_64 rng(seed);
    double worst_low = 2.0, worst_high = 2.0;
    bool first_order = true;
    for (int p = 0; p < 10; ++p) {
        const auto path = random_smooth_path(n - 1, rng);
        const auto r = short_time_kinetic_check(path, rep, linspace(0.0, 2.0, 9), 1e-3);
        worst_low = std::min(worst_low, r.richardson_ratio);
        worst_high = std::max(worst_high, r.richardson_ratio);
        first_order = first_order && r.first_order;
    }
    checks.push_back(check("kinetic_richardson_min", first_order && worst_low >= 1.7, worst_low, 1.7));
    checks.push_back(check("kinetic_richardson_max", first_order && worst_high <= 2.3, worst_high, 2.3));

    const auto h2 = HamiltonianSpec::from_terms({{1.0, {"Sz"}}, {0.6, {"Sx"}}}, RepresentationSpec::fundamental(2));
    const auto st = action_stationarity(state_from_psi(CVector::Constant(1, cplx(0.8, 0.1)), h2.rep()), h2,
                                        2 * std::numbers::pi, 20, 1e-3, seed);
    checks.push_back(check("action_second_order", st.ratio_delta2 <= 10.0 && st.ratio_delta2_half <= 10.0,
                           std::max(st.ratio_delta2, st.ratio_delta2_half), 10.0));
    checks.push_back(check("action_halving_ratio", std::abs(st.halving_ratio - 0.5) < 0.05, st.halving_ratio, 0.5));
    return finish(json{{"suite", "propagator"},
                       {"n", n},
                       {"seed", seed},
                       {"samples", samples},
                       {"semigroup", reports},
                       {"checks", checks}});
}

json verify_classical_limit(int n, std::uint64_t seed, std::size_t workers) {
    if (n < 2 || n > 6) throw std::invalid_argument("verify classical-limit: n must lie in 2..6");
    const auto rep = RepresentationSpec::fundamental(n);
    constexpr std::size_t cases = 5;
    std::vector<json> rows(cases);
    std::vector<double> errors(cases);
    parallel_chunks(cases, workers, [&](std::size_t k) {
        std::mt19937_64 rng(substream_seed(seed, k));
        const auto h = random_linear_hamiltonian(rep, rng);
        std::normal_distribution<double> normal(0.0, 0.7);
        CVector psi(n - 1);
        for (int i = 0; i < n - 1; ++i) psi[i] = cplx(normal(rng), normal(rng));
        const auto start = state_from_psi(psi, rep);
        const auto metric = classical_vs_quantum(start, h, {0.0, 10.0}, EomMode::MetricConsistent);
        const auto paper = classical_vs_quantum(start, h, {0.0, 10.0}, EomMode::PaperLiteral);
        errors[k] = metric.max_fidelity_error;
        rows[k] = json{{"case", k},
                       {"metric_fidelity_error", metric.max_fidelity_error},
                       {"paper_fidelity_error", paper.max_fidelity_error},
                       {"energy_drift", metric.energy_drift}};
    });
    json checks = json::array();
    for (std::size_t k = 0; k < cases; ++k)
        checks.push_back(check("case_" + std::to_string(k) + "_fidelity", errors[k] < 1e-8, errors[k], 1e-8));
    return finish(json{{"suite", "classical-limit"}, {"n", n}, {"seed", seed}, {"cases", rows}, {"checks", checks}});
}

// ---------------------------------------------------------------- entry point

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"SU(n) coherent states: generators, classical dynamics and verification suites", "sucs"};
    app.require_subcommand(1);
    std::size_t workers = 0;
    app.add_option("--workers", workers, "Worker threads for Monte Carlo (0 = SUCS_WORKERS or hardware)");

    int gen_n = 0;
    bool gen_check = false;
    std::string gen_output;
    auto* gen = app.add_subcommand("generators", "Dump the generalized Gell-Mann generators of su(n)");
    gen->add_option("n", gen_n, "Dimension of the fundamental representation (2..16)")->required();
    gen->add_flag("--check", gen_check, "Run the algebra invariant suite");
    gen->add_option("-o,--output", gen_output, "Output file (default stdout)");

    EvolveFlags ev;
    auto* evolve = app.add_subcommand("evolve", "Integrate the classical equations of motion of one coherent state");
    evolve->add_option("-c,--config", ev.config, "JSON config file")->required();
    ev.mode_opt = evolve->add_option("--mode", ev.mode, "metric | paper")->check(CLI::IsMember({"metric", "paper"}));
    ev.format_opt = evolve->add_option("--format", ev.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    ev.tol_opt = evolve->add_option("--tolerance", ev.tolerance, "Integrator tolerance in [1e-12, 1e-4]");
    ev.t0_opt = evolve->add_option("--t0", ev.t0, "Start time");
    ev.t1_opt = evolve->add_option("--t1", ev.t1, "End time");
    ev.samples_opt = evolve->add_option("--samples", ev.samples, "Equally spaced output rows (0 = every step)");
    ev.obs_opt = evolve->add_option("--observable", ev.observables, "Observable label, e.g. Sz or Sz*Sz");
    ev.out_opt = evolve->add_option("-o,--output", ev.output, "Output file (default stdout)");

    ChainFlags ch;
    auto* chain = app.add_subcommand("chain", "Integrate a chain of coupled coherent states");
    chain->add_option("-c,--config", ch.config, "JSON config file")->required();
    ch.tol_opt = chain->add_option("--tolerance", ch.tolerance, "Integrator tolerance in [1e-12, 1e-4]");
    ch.t0_opt = chain->add_option("--t0", ch.t0, "Start time");
    ch.t1_opt = chain->add_option("--t1", ch.t1, "End time");
    ch.samples_opt = chain->add_option("--samples", ch.samples, "Equally spaced output rows (0 = every step)");
    ch.out_opt = chain->add_option("-o,--output", ch.output, "Output file (default stdout)");

    std::string suite, verify_output;
    int verify_n = 2;
    std::uint64_t verify_samples = 1'000'000, verify_seed = kDefaultSeed;
    auto* verify = app.add_subcommand("verify", "Run a verification suite and print a JSON report");
    verify->add_option("suite", suite, "algebra | completeness | propagator | classical-limit")
        ->required()
        ->check(CLI::IsMember({"algebra", "completeness", "propagator", "classical-limit"}));
    verify->add_option("--n", verify_n, "Dimension n");
    verify->add_option("--samples", verify_samples, "Monte Carlo samples");
    verify->add_option("--seed", verify_seed, "Random seed");
    verify->add_option("-o,--output", verify_output, "Output file (default stdout)");

    int prop_n = 2;
    double prop_t = 1.0;
    std::uint64_t prop_seed = kDefaultSeed;
    std::string prop_output;
    auto* prop = app.add_subcommand("propagator-check", "Convergence table for the path-integral ingredients");
    prop->add_option("--n", prop_n, "Dimension n (2 or 3)");
    prop->add_option("--t", prop_t, "Propagation time");
    prop->add_option("--seed", prop_seed, "Random seed");
    prop->add_option("-o,--output", prop_output, "Output file (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_generators(gen_n, gen_check, gen_output, out, err);
        if (evolve->parsed()) return cmd_evolve(ev, out, err);
        if (chain->parsed()) return cmd_chain(ch, out, err);
        if (prop->parsed()) return cmd_propagator_check(prop_n, prop_t, prop_seed, workers, prop_output, out, err);
        if (verify->parsed()) {
            json report;
            try {
                if (suite == "algebra")
                    report = verify_algebra(verify_n);
                else if (suite == "completeness")
                    report = verify_completeness(verify_n, verify_samples, verify_seed, workers);
                else if (suite == "propagator")
                    report = verify_propagator(verify_n, verify_samples, verify_seed, workers);
                else
                    report = verify_classical_limit(verify_n, verify_seed, workers);
            } catch (const std::invalid_argument& e) {
                err << "verify: " << e.what() << "\n";
                return kExitUsage;
            }
            emit(report.dump(2) + "\n", verify_output, out);
            print_checks(report, err);
            err << "verify " << suite << ": " << (report.at("pass").get<bool>() ? "pass" : "FAIL") << "\n";
            return report.at("pass").get<bool>() ? kExitOk : kExitFailure;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const json::exception& e) {
        err << "error: malformed config: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IntegrationError& e) {
        err << "error: integration failed: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace sucs::cli
