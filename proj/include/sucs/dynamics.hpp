#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sucs/coherent.hpp"
#include "sucs/ode.hpp"

namespace sucs {

/// How the classical equations of motion turn the energy gradient into a velocity.
///
/// MetricConsistent inverts the full kinetic form of the coherent-state
/// Lagrangian, psi_dot = -(i/hbar)(1+|psi|^2)(1 + psi psi^dagger) dE/dconj(psi).
/// PaperLiteral keeps only the diagonal factor (1+|psi|^2)^2. The two agree in
/// SU(2) and at psi = 0; in spin-J mode both reduce to the (1+|xi|^2)^2/(2J hbar) form.
enum class EomMode { MetricConsistent, PaperLiteral };

std::string to_string(EomMode mode);
EomMode parse_eom_mode(const std::string& text);  // "metric" | "paper"

// Kinetic part of the Lagrangian, i hbar k/(1+|psi|^2) sum(conj(psi) psi_dot - psi conj(psi_dot))
// with k = 1/2 in the fundamental and k = J in spin-J mode.
double kinetic_term(const CoherentState& state, const CVector& psi_dot);
double lagrangian(const CoherentState& state, const CVector& psi_dot, const HamiltonianSpec& h);

// Wirtinger derivative dE/dconj(psi_i) of E = <psi|H|psi> with the normalisation included.
CVector grad_expectation(const CVector& psi, const RepresentationSpec& rep, const CMatrix& h);
CVector grad_expectation(const CoherentState& state, const HamiltonianSpec& h);

// Right-hand side of the equations of motion in chart coordinates.
CVector eom_rhs(const CVector& psi, const RepresentationSpec& rep, const CMatrix& h, EomMode mode);
CVector eom_rhs(const CoherentState& state, const HamiltonianSpec& h, EomMode mode);

/// Coordinate charts on the coherent-state manifold. Chart k uses basis
/// state k as the reference amplitude (fundamental); in spin-J mode chart 1
/// is the reversed basis, i.e. the reference |J,+J>. Chart 0 is the
/// standard chart used everywhere else in the library.
namespace chart {

// Basis permutation of chart k: chart-basis component i is original component perm[i].
std::vector<int> permutation(const RepresentationSpec& rep, int chart);
CVector to_chart_basis(const CVector& v, const std::vector<int>& perm);
CVector from_chart_basis(const CVector& w, const std::vector<int>& perm);
CMatrix operator_in_chart(const CMatrix& h, const std::vector<int>& perm);
// Chart whose reference amplitude is largest.
int best_chart(const CVector& v, const RepresentationSpec& rep);

// Coordinates above this magnitude trigger a change of chart.
inline constexpr double kFlipThreshold = 1e6;

}  // namespace chart

struct ChartFlip {
    double time = 0.0;
    int from = 0;
    int to = 0;
};

struct IntegratorStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evaluations = 0;
    double tolerance = 0.0;
    std::vector<ChartFlip> chart_flips;
};

struct Trajectory {
    RepresentationSpec rep;
    EomMode mode = EomMode::MetricConsistent;
    std::vector<double> times;
    std::vector<CVector> psi_series;  // standard-chart coordinates
    std::vector<CVector> vectors;     // unit Hilbert vectors
    std::vector<double> energy_series;
    std::vector<double> casimir_series;
    std::map<std::string, std::vector<double>> observables;
    IntegratorStats stats;

    std::size_t size() const { return times.size(); }
    // max_t |E(t) - E(0)| / max(|E(0)|, 1)
    double energy_drift() const;
    double casimir_drift() const;
};

struct IntegrateOptions {
    double tolerance = 1e-10;
    EomMode mode = EomMode::MetricConsistent;
    // Operator labels understood by named_operator, optionally joined by '*'.
    std::vector<std::string> observables;
    // When non-empty, samples are recorded only at these times (plus t0 and t1)
    // instead of at every accepted step.
    std::vector<double> output_times;
};

// Expectation-ready operator for an observable label such as "Sz" or "Sz*Sz".
CMatrix observable_operator(const RepresentationSpec& rep, const std::string& label);

/// Integrates the classical equations of motion with an adaptive
/// Dormand-Prince 5(4) stepper on the 2(n-1) real coordinates, changing chart
/// whenever the coordinates approach the point at infinity.
Trajectory integrate(const CoherentState& initial, const HamiltonianSpec& h, std::pair<double, double> t_span,
                     const IntegrateOptions& options = {});

// exp(-i H t / hbar)|initial>, dimension capped at 64.
CVector quantum_oracle_evolve(const CoherentState& initial, const HamiltonianSpec& h, double t);

struct ClassicalQuantumReport {
    double max_fidelity_error = 0.0;
    std::size_t samples = 0;
    EomMode mode = EomMode::MetricConsistent;
    double energy_drift = 0.0;
};

// Max over `samples` equally spaced times of 1 - |<classical(t)|quantum(t)>|^2.
// Only Hamiltonians that generate group motions are accepted.
ClassicalQuantumReport classical_vs_quantum(const CoherentState& initial, const HamiltonianSpec& h_linear,
                                            std::pair<double, double> t_span, EomMode mode,
                                            double tolerance = 1e-12, std::size_t samples = 101);

std::vector<double> linspace(double a, double b, std::size_t count);

}  // namespace sucs
