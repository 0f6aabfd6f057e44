// One line per acceptance criterion; exit status is nonzero if any fails.

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "oracles.hpp"
#include "reference_sets.hpp"
#include "sucs/lattice.hpp"
#include "sucs/propagator.hpp"

using namespace sucs;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double max_seconds, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (max_seconds > 0 && seconds >= max_seconds) {
        o.pass = false;
        o.detail += " runtime limit " + format_double(max_seconds) + " s exceeded";
    }
    if (!o.pass) ++failures;
    std::printf("criterion %2d: %s  %s  [%s] (%.2f s)\n", id, o.pass ? "PASS" : "FAIL", title.c_str(), o.detail.c_str(),
                seconds);
    std::fflush(stdout);
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

CVector random_xi(int m, double max_norm, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    CVector xi(m);
    for (int i = 0; i < m; ++i) xi[i] = cplx(normal(rng), normal(rng));
    return xi.normalized() * (max_norm * uniform(rng));
}

CVector random_psi(int m, double scale, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, scale);
    CVector psi(m);
    for (int i = 0; i < m; ++i) psi[i] = cplx(normal(rng), normal(rng));
    return psi;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome casimir_values() {
    const double expected[] = {0.75, 2.0, 3.75, 6.0, 8.75};
    double worst = 0.0;
    bool scalar = true;
    for (int n = 2; n <= 6; ++n) {
        const auto report = casimir(build_generators(RepresentationSpec::fundamental(n)));
        scalar = scalar && report.is_scalar;
        worst = std::max(worst, std::abs(report.eigenvalue - expected[n - 2]));
        worst = std::max(worst, (report.matrix - expected[n - 2] * CMatrix::Identity(n, n)).cwiseAbs().maxCoeff());
    }
    return {scalar && worst < 1e-10, "max |C - S(S+1)| = " + sci(worst) + " < 1e-10"};
}

Outcome generator_basis() {
    double worst = 0.0;
    bool counts = true;
    for (int n = 2; n <= 6; ++n) {
        const auto all = build_generators(RepresentationSpec::fundamental(n)).all();
        counts = counts && all.size() == static_cast<std::size_t>(n * n - 1);
        for (std::size_t a = 0; a < all.size(); ++a) {
            worst = std::max(worst, hermiticity_residue(all[a]));
            worst = std::max(worst, std::abs(all[a].trace()));
            for (std::size_t b = 0; b < all.size(); ++b)
                worst = std::max(worst, std::abs((all[a] * all[b]).trace() - (a == b ? 2.0 : 0.0)));
        }
    }
    const auto g2 = build_generators(RepresentationSpec::fundamental(2)).all();
    const double pauli = std::max({max_abs(g2[0] - oracle::pauli(1)), max_abs(g2[1] - oracle::pauli(2)),
                                   max_abs(g2[2] - oracle::pauli(3))});
    const auto g3 = build_generators(RepresentationSpec::fundamental(3)).all();
    const auto g4 = build_generators(RepresentationSpec::fundamental(4)).all();
    const double span = std::max({reference::span_residual(g3, reference::listed_su3()),
                                  reference::span_residual(reference::listed_su3(), g3),
                                  reference::span_residual(g4, reference::listed_su4()),
                                  reference::span_residual(reference::listed_su4(), g4)});
    return {counts && worst < 1e-12 && pauli == 0.0 && span < 1e-10,
            "orthonormality " + sci(worst) + " < 1e-12, Pauli diff " + sci(pauli) + " == 0, span residual " + sci(span) +
                " < 1e-10"};
}

Outcome round_trip() {
    std::mt19937_64 rng(cli::kDefaultSeed);
    double worst = 0.0;
    for (int n : {2, 3, 4}) {
        const auto rep = RepresentationSpec::fundamental(n);
        for (int k = 0; k < 1000; ++k) {
            const CoherentParams p{random_xi(n - 1, std::numbers::pi / 2 - 0.1, rng), rep};
            worst = std::max(worst, 1.0 - fidelity(state_from_exponential(p), state_from_psi(psi_from_xi(p), rep)));
        }
    }
    return {worst < 1e-10, "max 1 - F = " + sci(worst) + " < 1e-10 over 3000 samples"};
}

Outcome completeness() {
    bool pass = true;
    std::string detail;
    for (int n : {2, 3}) {
        const double bound = n == 2 ? 0.02 : 0.05;
        const auto r = verify_resolution_of_identity(RepresentationSpec::fundamental(n), 1'000'000, cli::kDefaultSeed);
        pass = pass && r.residual_max < bound && r.consistent_3sigma;
        detail += "n=" + std::to_string(n) + " residual " + sci(r.residual_max) + " < " + std::string(n == 2 ? "0.02" : "0.05") +
                  ", max z " + sci(r.max_z) + " <= 3; ";
    }
    return {pass, detail};
}

Outcome classical_limit() {
    double worst = 0.0;
    for (int n : {2, 3, 4}) {
        const json report = cli::verify_classical_limit(n, cli::kDefaultSeed, 0);
        for (const auto& c : report.at("checks")) worst = std::max(worst, c.at("value").get<double>());
    }
    return {worst < 1e-8, "max fidelity error " + sci(worst) + " < 1e-8 over 15 Hamiltonians"};
}

Outcome precession() {
    const double omega = 1.3;
    const auto rep = RepresentationSpec::fundamental(2);
    const auto h = HamiltonianSpec::from_terms({{omega, {"Sz"}}}, rep);
    const cplx psi0(0.8, -0.6);
    IntegrateOptions opt;
    opt.tolerance = 1e-12;
    const double period = 2 * std::numbers::pi / omega;
    opt.output_times = linspace(0.0, period, 100);
    const auto traj = integrate(state_from_psi(CVector::Constant(1, psi0), rep), h, {0.0, period}, opt);
    double pointwise = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k)
        pointwise = std::max(pointwise, std::abs(traj.psi_series[k][0] - std::exp(cplx(0, -omega * traj.times[k])) * psi0));
    const double ret = std::abs(traj.psi_series.back()[0] - psi0);
    return {traj.size() == 100 && ret < 1e-8 && pointwise < 1e-8,
            "return " + sci(ret) + " < 1e-8, pointwise " + sci(pointwise) + " < 1e-8 at " + std::to_string(traj.size()) +
                " times"};
}

Outcome gradient() {
    std::mt19937_64 rng(cli::kDefaultSeed);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const int n = 2 + k % 4;
        const auto rep = RepresentationSpec::fundamental(n);
        const CMatrix h = random_hermitian(n, rng);
        const CVector psi = random_psi(n - 1, 0.8, rng);
        const CVector fd = oracle::wirtinger_fd(
            [&](const CVector& p) {
                const CVector v = oracle::fundamental_vector(p);
                return v.dot(h * v).real();
            },
            psi);
        worst = std::max(worst, (grad_expectation(psi, rep, h) - fd).norm() / std::max(fd.norm(), 1e-3));
    }
    return {worst < 1e-6, "max relative error " + sci(worst) + " < 1e-6 over 100 cases"};
}

Outcome kinetic() {
    std::mt19937_64 rng(cli::kDefaultSeed);
    double lo = 10.0, hi = 0.0;
    for (int k = 0; k < 10; ++k) {
        const int n = 2 + k % 3;
        const auto path = random_smooth_path(n - 1, rng);
        const auto r = short_time_kinetic_check(path, RepresentationSpec::fundamental(n), linspace(0.0, 2.0, 9), 1e-3);
        lo = std::min(lo, r.richardson_ratio);
        hi = std::max(hi, r.richardson_ratio);
    }
    return {lo >= 1.7 && hi <= 2.3, "Richardson ratios in [" + sci(lo) + ", " + sci(hi) + "] within [1.7, 2.3]"};
}

Outcome stationary_action() {
    const auto rep = RepresentationSpec::fundamental(2);
    const auto h = HamiltonianSpec::from_terms({{1.0, {"Sz"}}, {0.6, {"Sx"}}}, rep);
    const auto start = state_from_psi(CVector::Constant(1, cplx(0.8, 0.1)), rep);
    const auto r = action_stationarity(start, h, 2 * std::numbers::pi, 20, 1e-3, cli::kDefaultSeed);
    const bool bounded = r.ratio_delta2 <= 10.0 && r.ratio_delta2_half <= 10.0;
    const bool vanishing = std::abs(r.halving_ratio - 0.5) <= 0.1;
    return {bounded && vanishing, "|dS|/d^2 = " + sci(r.ratio_delta2) + ", " + sci(r.ratio_delta2_half) +
                                      " <= 10; |dS|/d ratio on halving " + sci(r.halving_ratio) + " ~ 0.5"};
}

Outcome chain_conservation() {
    std::mt19937_64 rng(cli::kDefaultSeed);
    double energy = 0.0, sz = 0.0;
    bool counts = true;
    for (int two_s : {1, 2}) {
        for (int sites : {2, 4}) {
            ChainModel model;
            model.sites = sites;
            model.rep = RepresentationSpec::fundamental(two_s + 1);
            model.boundary = sites > 2 ? Boundary::Periodic : Boundary::Open;
            model.add_nearest_neighbour(CouplingType::Bilinear, 1.0);
            model.add_nearest_neighbour(CouplingType::Biquadratic, 0.4);
            counts = counts && variables_per_site(model.rep) == 2 * two_s;
            ChainState s;
            for (int a = 0; a < sites; ++a) s.psi.push_back(random_psi(two_s, 0.7, rng));
            ChainEvolveOptions opt;
            opt.tolerance = 1e-10;
            const auto traj = chain_evolve(s, model, {0.0, 100.0}, opt);
            energy = std::max(energy, traj.energy_drift());
            sz = std::max(sz, traj.total_sz_drift());
        }
    }
    return {counts && energy < 1e-8 && sz < 1e-8, "energy drift " + sci(energy) + " < 1e-8, total Sz drift " + sci(sz) +
                                                      " < 1e-8, variables per site = 4S"};
}

Outcome determinism() {
    const auto dir = std::filesystem::temp_directory_path() / ("sucs_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    bool identical = true;
    std::string detail;
    const std::vector<std::vector<std::string>> runs = {
        {"verify", "completeness", "--n", "2", "--samples", "1000000", "--seed", "7"},
        {"verify", "completeness", "--n", "3", "--samples", "1000000", "--seed", "7"},
        {"verify", "classical-limit", "--n", "2", "--seed", "7"},
        {"verify", "classical-limit", "--n", "3", "--seed", "7"},
        {"verify", "classical-limit", "--n", "4", "--seed", "7"},
    };
    for (std::size_t r = 0; r < runs.size(); ++r) {
        std::string reference;
        for (const char* workers : {"1", "2", "8"}) {
            const auto file = dir / ("run" + std::to_string(r) + "_w" + workers + ".json");
            auto args = runs[r];
            args.insert(args.begin(), {"--workers", workers});
            args.insert(args.end(), {"-o", file.string()});
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            const std::string bytes = slurp(file);
            if (code != 0 || bytes.empty()) identical = false;
            if (reference.empty())
                reference = bytes;
            else if (bytes != reference)
                identical = false;
        }
        detail += runs[r][1] + " n=" + runs[r][3] + (identical ? " identical; " : " DIFFER; ");
    }
    std::filesystem::remove_all(dir);
    return {identical, detail + "workers 1, 2, 8"};
}

}  // namespace

int main() {
    criterion(1, "Casimir values for n = 2..6", 1.0, casimir_values);
    criterion(2, "generator basis", 1.0, generator_basis);
    criterion(3, "parameterization round trip", 10.0, round_trip);
    criterion(4, "completeness relation", 60.0, completeness);
    criterion(5, "classical limit exactness", 30.0, classical_limit);
    criterion(6, "precession regression", 0.0, precession);
    criterion(7, "gradient correctness", 0.0, gradient);
    criterion(8, "short-time kinetic term", 0.0, kinetic);
    criterion(9, "stationary action", 0.0, stationary_action);
    criterion(10, "chain conservation", 60.0, chain_conservation);
    criterion(11, "determinism across worker counts", 0.0, determinism);
    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
