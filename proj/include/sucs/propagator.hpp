#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "sucs/dynamics.hpp"

namespace sucs {

enum class PropagatorMethod { SemigroupMC, ShortTimeProduct };

std::string to_string(PropagatorMethod method);

struct PropagatorReport {
    cplx exact;
    cplx approx;
    double abs_error = 0.0;
    PropagatorMethod method = PropagatorMethod::SemigroupMC;
    std::uint64_t samples = 0;
    double std_error = 0.0;
    bool within_3sigma = false;
};

// <a| exp(-i H t / hbar) |b>
cplx exact_amplitude(const CoherentState& a, const CoherentState& b, const HamiltonianSpec& h, double t);

/// Monte Carlo estimate of the amplitude with one completeness insertion at
/// t/2: the integral over dmu(psi) of <a|U(t/2)|psi><psi|U(t/2)|b>, sampled
/// exactly from the invariant measure. Fundamental n in {2, 3}.
PropagatorReport semigroup_mc_check(const CoherentState& a, const CoherentState& b, const HamiltonianSpec& h,
                                    double t, std::uint64_t samples, std::uint64_t seed, std::size_t workers = 0);

using PathFunction = std::function<CVector(double)>;

struct KineticCheckReport {
    double epsilon = 0.0;
    double deviation = 0.0;       // max |discrete(eps) - continuum| over the sample times
    double deviation_half = 0.0;  // same at eps/2
    double richardson_ratio = 0.0;
    bool first_order = false;     // ratio in [1.7, 2.3], or both deviations negligible
};

// Discrete kinetic term (i hbar / eps) log <psi(t)|psi(t+eps)> at time t.
cplx discrete_kinetic(const PathFunction& path, const RepresentationSpec& rep, double t, double epsilon);

// Continuum kinetic Lagrangian at t, with the velocity from a fourth-order
// central difference of the path.
double continuum_kinetic(const PathFunction& path, const RepresentationSpec& rep, double t);

/// Compares the log-overlap kinetic term with the continuum Lagrangian over
/// `times`, at eps and eps/2. Throws std::invalid_argument for eps > 1e-3.
KineticCheckReport short_time_kinetic_check(const PathFunction& path, const RepresentationSpec& rep,
                                            const std::vector<double>& times, double epsilon);

/// Trapezoidal action of a uniformly sampled path; velocities from
/// second-order finite differences (one-sided at the ends).
double action_along_path(const std::vector<CVector>& path, double dt, const HamiltonianSpec& h);

// Smooth path a + b t + c sin(w t) in m complex coordinates with random a, b, c, w.
PathFunction random_smooth_path(int m, std::mt19937_64& rng);

struct StationarityReport {
    double delta = 0.0;
    int paths = 0;
    double action = 0.0;           // along the classical path
    double ratio_delta2 = 0.0;     // max |dS|/delta^2
    double ratio_delta2_half = 0.0;
    double first_order = 0.0;      // max |dS|/delta
    double first_order_half = 0.0;
    double halving_ratio = 0.0;    // first_order_half / first_order, about 1/2 at a stationary point
};

/// Integrates the classical path from `start` over [0, t_end] and perturbs it
/// by delta sin(pi t/t_end) d for `paths` random unit directions d (and again
/// with delta/2). The perturbations vanish at both ends.
StationarityReport action_stationarity(const CoherentState& start, const HamiltonianSpec& h, double t_end, int paths,
                                       double delta, std::uint64_t seed);

}  // namespace sucs
