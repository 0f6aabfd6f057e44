#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "sucs/dynamics.hpp"

namespace sucs {

enum class CouplingType { Bilinear, Biquadratic };
enum class Boundary { Open, Periodic };

std::string to_string(CouplingType type);
std::string to_string(Boundary boundary);

struct Bond {
    int i = 0;
    int j = 1;
    CouplingType type = CouplingType::Bilinear;
    double strength = 0.0;
};

/// Chain of identical SU(2S+1) sites. Bilinear bonds couple the spin
/// vectors, J S_i.S_j; biquadratic bonds add K (S_i.S_j)^2. Both are
/// evaluated exactly in the product of single-site coherent states.
struct ChainModel {
    int sites = 1;
    RepresentationSpec rep;
    std::vector<Bond> bonds;
    std::vector<CMatrix> field;  // per-site hermitian term; empty = none
    Boundary boundary = Boundary::Open;

    void validate() const;
    // Appends nearest-neighbour bonds of one type, closing the ring when periodic.
    void add_nearest_neighbour(CouplingType type, double strength);
};

struct ChainState {
    std::vector<CVector> psi;  // per-site chart coordinates, n-1 each
};

ChainState uniform_chain_state(int sites, const CVector& psi);

// Real dynamical variables per site, 2(n-1) = 4S.
int variables_per_site(const RepresentationSpec& rep);

// Product-state expectation of the chain Hamiltonian.
double chain_energy(const ChainState& state, const ChainModel& model);

// Effective single-site operator dE/d(rho_a) for site a with every other
// site frozen; its coherent-state gradient drives that site.
CMatrix effective_field(const ChainState& state, const ChainModel& model, int site);

/// Irreducible multipole basis of the (2S+1)-dimensional space: rank-k
/// tensor components for k = 1..2S, hermitian, tr(M_a M_b) = 2 delta_ab.
/// The first three are proportional to Sx, Sy, Sz.
struct MultipoleBasis {
    std::vector<CMatrix> operators;
    std::vector<std::string> labels;  // "T1_x", "T1_y", "T1_z", "T2_0", "T2_1c", "T2_1s", ...
    std::vector<int> ranks;
};

MultipoleBasis multipole_basis(const RepresentationSpec& rep);

struct ChainTrajectory {
    ChainModel model;
    std::vector<double> times;
    std::vector<std::vector<CVector>> psi_series;      // [time][site], standard chart
    std::vector<std::vector<CVector>> vector_series;   // [time][site], unit vectors
    std::vector<double> energy_series;
    std::vector<double> total_sz_series;
    std::vector<std::vector<std::array<double, 3>>> dipole_series;  // [time][site] (<Sx>, <Sy>, <Sz>)
    IntegratorStats stats;

    std::size_t size() const { return times.size(); }
    double energy_drift() const;  // relative, as Trajectory::energy_drift
    double total_sz_drift() const;
};

struct ChainEvolveOptions {
    double tolerance = 1e-10;
    std::vector<double> output_times;
};

ChainTrajectory chain_evolve(const ChainState& initial, const ChainModel& model, std::pair<double, double> t_span,
                             const ChainEvolveOptions& options = {});

struct SiteMultipoles {
    std::vector<std::array<double, 3>> dipole;  // per time, normalized (T1_x, T1_y, T1_z)
    std::vector<std::vector<double>> higher;    // per time, n^2 - 4 components
};

// Per-site series of multipole components in the normalized basis.
std::vector<SiteMultipoles> multipole_series(const ChainTrajectory& trajectory);

using SparseCMatrix = Eigen::SparseMatrix<cplx>;

// Exact many-body Hamiltonian on the Kronecker-product space (dimension <= 4096),
// site 0 the most significant factor.
SparseCMatrix chain_hamiltonian_matrix(const ChainModel& model);
CVector product_vector(const ChainState& state, const ChainModel& model);

// Max over recorded times of 1 - |<product(t)|exact(t)>|^2; reported only, mean-field is not exact.
double chain_quantum_deviation(const ChainTrajectory& trajectory);

}  // namespace sucs
