#include "sucs/serialize.hpp"

#include <cmath>
#include <cstdio>

namespace sucs {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json matrix_to_json(const CMatrix& m) {
    json re = json::array(), im = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json rr = json::array(), ii = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            rr.push_back(m(r, c).real());
            ii.push_back(m(r, c).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ii));
    }
    return json{{"re", re}, {"im", im}};
}

CMatrix matrix_from_json(const json& j) {
    // Accept {"re": [[..]], "im": [[..]]} or a plain real nested array.
    const json& re = j.is_object() ? j.at("re") : j;
    if (!re.is_array() || re.empty()) throw std::invalid_argument("matrix: expected a non-empty nested array");
    const auto rows = static_cast<Eigen::Index>(re.size());
    const auto cols = static_cast<Eigen::Index>(re.at(0).size());
    CMatrix m = CMatrix::Zero(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (static_cast<Eigen::Index>(re.at(r).size()) != cols) throw std::invalid_argument("matrix: ragged rows");
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = re.at(r).at(c).get<double>();
    }
    if (j.is_object() && j.contains("im")) {
        const json& im = j.at("im");
        if (static_cast<Eigen::Index>(im.size()) != rows) throw std::invalid_argument("matrix: im shape mismatch");
        for (Eigen::Index r = 0; r < rows; ++r) {
            if (static_cast<Eigen::Index>(im.at(r).size()) != cols) throw std::invalid_argument("matrix: im shape mismatch");
            for (Eigen::Index c = 0; c < cols; ++c) m(r, c) += I_UNIT * im.at(r).at(c).get<double>();
        }
    }
    return m;
}

RepresentationSpec rep_from_json(const json& j) {
    const double hbar = j.value("hbar", 1.0);
    if (j.contains("spin_J") && !j.at("spin_J").is_null()) {
        const double spin = j.at("spin_J").get<double>();
        const double twice = 2.0 * spin;
        if (std::abs(twice - std::round(twice)) > 1e-12 || twice < 1)
            throw std::invalid_argument("spin_J must be a positive half-integer");
        if (j.contains("n") && j.at("n").get<int>() != 2) throw std::invalid_argument("spin_J requires n = 2");
        return RepresentationSpec::spin_j(static_cast<int>(std::lround(twice)), hbar);
    }
    return RepresentationSpec::fundamental(j.at("n").get<int>(), hbar);
}

json state_to_json(const CoherentState& s) {
    json j;
    j["n"] = s.rep.n;
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < s.psi.size(); ++i) {
        re.push_back(s.psi[i].real());
        im.push_back(s.psi[i].imag());
    }
    j["psi_re"] = re;
    j["psi_im"] = im;
    if (s.rep.spin_mode()) j["spin_J"] = s.rep.spin();
    if (s.rep.hbar != 1.0) j["hbar"] = s.rep.hbar;
    return j;
}

CoherentState state_from_json(const json& j) {
    const auto rep = rep_from_json(j);
    const auto& re = j.at("psi_re");
    const json im = j.value("psi_im", json::array());
    if (static_cast<int>(re.size()) != rep.params()) throw std::invalid_argument("state: psi_re has wrong length");
    if (!im.empty() && im.size() != re.size()) throw std::invalid_argument("state: psi_im has wrong length");
    CVector psi(rep.params());
    for (int i = 0; i < rep.params(); ++i)
        psi[i] = cplx(re.at(static_cast<std::size_t>(i)).get<double>(), im.empty() ? 0.0 : im.at(static_cast<std::size_t>(i)).get<double>());
    return state_from_psi(psi, rep);
}

HamiltonianSpec hamiltonian_from_json(const json& j, const RepresentationSpec& rep) {
    if (j.contains("matrix")) return HamiltonianSpec::from_matrix(matrix_from_json(j.at("matrix")), rep);
    if (j.contains("terms")) {
        std::vector<HamiltonianTerm> terms;
        for (const auto& t : j.at("terms")) {
            HamiltonianTerm term;
            term.coeff = t.at("coeff").get<double>();
            term.ops = t.value("ops", std::vector<std::string>{});
            terms.push_back(std::move(term));
        }
        return HamiltonianSpec::from_terms(std::move(terms), rep);
    }
    throw std::invalid_argument("hamiltonian: expected \"matrix\" or \"terms\"");
}

json hamiltonian_to_json(const HamiltonianSpec& h) {
    if (!h.is_polynomial()) return json{{"matrix", matrix_to_json(h.matrix())}};
    json terms = json::array();
    for (const auto& t : h.terms()) terms.push_back(json{{"coeff", t.coeff}, {"ops", t.ops}});
    return json{{"terms", terms}};
}

json generators_to_json(const GeneratorSet& gen) {
    json out = json::array();
    const auto all = gen.all();
    const auto labels = gen.labels();
    for (std::size_t k = 0; k < all.size(); ++k) {
        json m = matrix_to_json(all[k]);
        m["label"] = labels[k];
        out.push_back(std::move(m));
    }
    return out;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "t";
    for (int i = 1; i <= traj.rep.params(); ++i) out << ",psi" << i << "_re,psi" << i << "_im";
    out << ",energy,casimir";
    for (const auto& [label, series] : traj.observables) out << "," << label;
    out << "\n";
    for (std::size_t k = 0; k < traj.size(); ++k) {
        out << format_double(traj.times[k]);
        for (Eigen::Index i = 0; i < traj.psi_series[k].size(); ++i)
            out << "," << format_double(traj.psi_series[k][i].real()) << "," << format_double(traj.psi_series[k][i].imag());
        out << "," << format_double(traj.energy_series[k]) << "," << format_double(traj.casimir_series[k]);
        for (const auto& [label, series] : traj.observables) out << "," << format_double(series[k]);
        out << "\n";
    }
}

json trajectory_to_json(const Trajectory& traj) {
    json j;
    j["n"] = traj.rep.n;
    if (traj.rep.spin_mode()) j["spin_J"] = traj.rep.spin();
    j["hbar"] = traj.rep.hbar;
    j["mode"] = to_string(traj.mode);
    j["times"] = traj.times;
    json re = json::array(), im = json::array();
    for (const auto& psi : traj.psi_series) {
        json r = json::array(), i = json::array();
        for (Eigen::Index k = 0; k < psi.size(); ++k) {
            r.push_back(psi[k].real());
            i.push_back(psi[k].imag());
        }
        re.push_back(std::move(r));
        im.push_back(std::move(i));
    }
    j["psi_re"] = re;
    j["psi_im"] = im;
    j["energy"] = traj.energy_series;
    j["casimir"] = traj.casimir_series;
    j["observables"] = traj.observables;
    json flips = json::array();
    for (const auto& f : traj.stats.chart_flips) flips.push_back(json{{"t", f.time}, {"from", f.from}, {"to", f.to}});
    j["integrator_stats"] = json{{"accepted_steps", traj.stats.accepted},
                                 {"rejected_steps", traj.stats.rejected},
                                 {"rhs_evaluations", traj.stats.rhs_evaluations},
                                 {"tolerance", traj.stats.tolerance},
                                 {"chart_flips", flips},
                                 {"energy_drift", traj.energy_drift()},
                                 {"casimir_drift", traj.casimir_drift()}};
    return j;
}

namespace {

CouplingType coupling_from(const std::string& s) {
    if (s == "bilinear") return CouplingType::Bilinear;
    if (s == "biquadratic") return CouplingType::Biquadratic;
    throw std::invalid_argument("chain: unknown coupling type '" + s + "'");
}

}  // namespace

ChainModel chain_model_from_json(const json& j) {
    ChainModel model;
    model.sites = j.at("sites").get<int>();
    model.rep = RepresentationSpec::fundamental(j.at("n").get<int>(), j.value("hbar", 1.0));
    const std::string boundary = j.value("boundary", std::string("open"));
    if (boundary == "open")
        model.boundary = Boundary::Open;
    else if (boundary == "periodic")
        model.boundary = Boundary::Periodic;
    else
        throw std::invalid_argument("chain: boundary must be open or periodic");
    if (j.contains("bonds"))
        for (const auto& b : j.at("bonds"))
            model.bonds.push_back({b.at("i").get<int>(), b.at("j").get<int>(),
                                   coupling_from(b.value("type", std::string("bilinear"))), b.at("J").get<double>()});
    if (j.contains("nearest_neighbour"))
        for (const auto& nn : j.at("nearest_neighbour"))
            model.add_nearest_neighbour(coupling_from(nn.value("type", std::string("bilinear"))), nn.at("J").get<double>());
    if (j.contains("field") && !j.at("field").is_null()) {
        const json& f = j.at("field");
        if (f.contains("per_site")) {
            for (const auto& site : f.at("per_site")) model.field.push_back(hamiltonian_from_json(site, model.rep).matrix());
        } else {
            const CMatrix uniform = hamiltonian_from_json(f, model.rep).matrix();
            model.field.assign(static_cast<std::size_t>(model.sites), uniform);
        }
    }
    model.validate();
    return model;
}

json chain_model_to_json(const ChainModel& model) {
    json bonds = json::array();
    for (const auto& b : model.bonds) bonds.push_back(json{{"i", b.i}, {"j", b.j}, {"type", to_string(b.type)}, {"J", b.strength}});
    json j{{"sites", model.sites}, {"n", model.rep.n}, {"hbar", model.rep.hbar}, {"boundary", to_string(model.boundary)}, {"bonds", bonds}};
    if (!model.field.empty()) {
        json per_site = json::array();
        for (const auto& f : model.field) per_site.push_back(json{{"matrix", matrix_to_json(f)}});
        j["field"] = json{{"per_site", per_site}};
    }
    return j;
}

void write_chain_csv(std::ostream& out, const ChainTrajectory& traj) {
    const auto& model = traj.model;
    const auto basis = multipole_basis(model.rep);
    const auto multipoles = multipole_series(traj);
    out << "t,energy,total_Sz";
    for (int a = 0; a < model.sites; ++a) {
        const std::string p = "site" + std::to_string(a) + "_";
        for (int i = 1; i <= model.rep.params(); ++i) out << "," << p << "psi" << i << "_re," << p << "psi" << i << "_im";
        out << "," << p << "Sx," << p << "Sy," << p << "Sz";
        for (std::size_t k = 3; k < basis.labels.size(); ++k) out << "," << p << basis.labels[k];
    }
    out << "\n";
    for (std::size_t k = 0; k < traj.size(); ++k) {
        out << format_double(traj.times[k]) << "," << format_double(traj.energy_series[k]) << ","
            << format_double(traj.total_sz_series[k]);
        for (int a = 0; a < model.sites; ++a) {
            const auto sa = static_cast<std::size_t>(a);
            for (Eigen::Index i = 0; i < traj.psi_series[k][sa].size(); ++i)
                out << "," << format_double(traj.psi_series[k][sa][i].real()) << ","
                    << format_double(traj.psi_series[k][sa][i].imag());
            for (double d : traj.dipole_series[k][sa]) out << "," << format_double(d);
            for (double h : multipoles[sa].higher[k]) out << "," << format_double(h);
        }
        out << "\n";
    }
}

json propagator_report_to_json(const PropagatorReport& r) {
    return json{{"method", to_string(r.method)},
                {"exact", {r.exact.real(), r.exact.imag()}},
                {"approx", {r.approx.real(), r.approx.imag()}},
                {"abs_error", r.abs_error},
                {"samples", r.samples},
                {"std_error", r.std_error},
                {"within_3sigma", r.within_3sigma}};
}

json resolution_report_to_json(const ResolutionReport& r) {
    return json{{"samples", r.samples},
                {"estimate", matrix_to_json(r.estimate)},
                {"residual_max", r.residual_max},
                {"trace", r.trace},
                {"max_z", r.max_z},
                {"consistent_3sigma", r.consistent_3sigma}};
}

}  // namespace sucs
