#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "sucs/algebra.hpp"
#include "sucs/coherent.hpp"
#include "sucs/dynamics.hpp"
#include "sucs/lattice.hpp"
#include "sucs/propagator.hpp"

namespace sucs {

using json = nlohmann::json;

// Complex matrices are {"re": [[...]], "im": [[...]]}.
json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

// {"n": int, "psi_re": [...], "psi_im": [...], "spin_J": optional number, "hbar": optional}
json state_to_json(const CoherentState& s);
CoherentState state_from_json(const json& j);
RepresentationSpec rep_from_json(const json& j);

// {"matrix": {...}} or {"terms": [{"coeff": r, "ops": ["Sz", "Sz"]}, ...]}
HamiltonianSpec hamiltonian_from_json(const json& j, const RepresentationSpec& rep);
json hamiltonian_to_json(const HamiltonianSpec& h);

json generators_to_json(const GeneratorSet& gen);

// Columns: t, psi<i>_re, psi<i>_im, energy, casimir, observables (17 significant digits).
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
json trajectory_to_json(const Trajectory& traj);

// {"sites", "n", "hbar", "boundary", "bonds": [{"i","j","type","J"}],
//  "nearest_neighbour": [{"type","J"}], "field": hamiltonian | {"per_site": [hamiltonian, ...]}}
ChainModel chain_model_from_json(const json& j);
json chain_model_to_json(const ChainModel& model);

// Wide CSV: t, energy, total_Sz, then per site psi, dipole and higher multipoles.
void write_chain_csv(std::ostream& out, const ChainTrajectory& traj);

json propagator_report_to_json(const PropagatorReport& r);
json resolution_report_to_json(const ResolutionReport& r);

// Round-trip formatting used by every CSV writer.
std::string format_double(double v);

}  // namespace sucs
