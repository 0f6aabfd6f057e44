#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>

#include "sucs/hamiltonian.hpp"

namespace sucs {

/// Group-displacement parameters xi_i (for SU(2) spin-J: the single alpha).
struct CoherentParams {
    CVector xi;
    RepresentationSpec rep;
};

/// Normalized coherent state together with its stereographic chart coordinates.
struct CoherentState {
    CVector psi;     // n-1 complex coordinates
    CVector vector;  // Hilbert-space representative, unit norm
    RepresentationSpec rep;

    int dim() const { return static_cast<int>(vector.size()); }
};

// psi_i = (xi_i / |xi|) tan|xi|; throws std::domain_error on the tan singularity.
CVector psi_from_xi(const CoherentParams& params);

CoherentState state_from_psi(const CVector& psi, const RepresentationSpec& rep);

// exp(sum_i xi_i T_i^+ - conj(xi_i) T_i^-) |0> by dense matrix exponential.
// T_i^+ = |i><0| in the fundamental; S^+ (hbar-free) in spin-J mode.
CoherentState state_from_exponential(const CoherentParams& params);

// Chart coordinates of an arbitrary Hilbert vector lying on the coherent-state
// manifold (always true in the fundamental). Throws std::domain_error when the
// reference amplitude vanishes.
CVector psi_from_vector(const CVector& vector, const RepresentationSpec& rep);

cplx overlap(const CoherentState& a, const CoherentState& b);
double fidelity(const CVector& a, const CVector& b);
double fidelity(const CoherentState& a, const CoherentState& b);

// <psi|H|psi>; rejects non-hermitian or wrongly sized operators.
double expectation(const CoherentState& state, const CMatrix& h);
double expectation(const CoherentState& state, const HamiltonianSpec& h);

// <T_a> for every Lie generator plus Sx, Sy, Sz and Qzz = <SzSz>,
// "Q+-" = <S+S->, "Q-+" = <S-S+>.
std::map<std::string, double> multipole_expectations(const CoherentState& state);

/// Invariant measure on the coherent-state manifold normalised so that the
/// states resolve the identity.
class Measure {
public:
    explicit Measure(const RepresentationSpec& rep);

    const RepresentationSpec& rep() const { return rep_; }
    // Density with respect to Lebesgue measure d^{2(n-1)} psi.
    double density(const CVector& psi) const;
    // n in the fundamental, 2J+1 in spin-J mode.
    double total_mass() const;
    // Exact draw from density / total_mass: inverse CDF in w = |psi|^2/(1+|psi|^2),
    // isotropic direction from normalized Gaussians.
    CVector sample(std::mt19937_64& rng) const;

private:
    RepresentationSpec rep_;
    double exponent_;  // density ~ (1 + |psi|^2)^(-exponent_)
};

struct ResolutionReport {
    std::uint64_t samples = 0;
    CMatrix estimate;
    CMatrix std_error;  // per-entry standard error (real part) + i * (imaginary part)
    double residual_max = 0.0;
    double trace = 0.0;
    double max_z = 0.0;  // largest |residual| / sigma over real and imaginary parts
    bool consistent_3sigma = false;
};

// Monte Carlo estimate of the integral of |psi><psi| dmu. Deterministic for a
// given (samples, seed), independent of the worker count.
ResolutionReport verify_resolution_of_identity(const RepresentationSpec& rep, std::uint64_t samples,
                                               std::uint64_t seed, std::size_t workers = 0);

inline constexpr std::uint64_t kMonteCarloChunk = 1u << 14;

}  // namespace sucs
