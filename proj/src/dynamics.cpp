#include "sucs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sucs {

std::string to_string(EomMode mode) {
    return mode == EomMode::MetricConsistent ? "metric" : "paper";
}

EomMode parse_eom_mode(const std::string& text) {
    if (text == "metric") return EomMode::MetricConsistent;
    if (text == "paper") return EomMode::PaperLiteral;
    throw std::invalid_argument("unknown equation-of-motion mode '" + text + "' (expected metric|paper)");
}

double kinetic_term(const CoherentState& state, const CVector& psi_dot) {
    if (psi_dot.size() != state.psi.size()) throw std::invalid_argument("kinetic_term: dimension mismatch");
    const double weight = state.rep.spin_mode() ? state.rep.spin() : 0.5;
    const cplx form = state.psi.dot(psi_dot) - psi_dot.dot(state.psi);  // sum conj(psi) psi_dot - psi conj(psi_dot)
    const cplx value = I_UNIT * state.rep.hbar * weight / (1.0 + state.psi.squaredNorm()) * form;
    if (std::abs(value.imag()) > 1e-12 * std::max(1.0, std::abs(value.real())))
        throw std::logic_error("kinetic_term: non-real kinetic form");
    return value.real();
}

double lagrangian(const CoherentState& state, const CVector& psi_dot, const HamiltonianSpec& h) {
    return kinetic_term(state, psi_dot) - expectation(state, h);
}

CVector grad_expectation(const CVector& psi, const RepresentationSpec& rep, const CMatrix& h) {
    const int d = rep.dim();
    if (psi.size() != rep.params()) throw std::invalid_argument("grad_expectation: coordinate count mismatch");
    if (h.rows() != d || h.cols() != d) throw std::invalid_argument("grad_expectation: operator dimension mismatch");
    if (rep.spin_mode()) {
        // v_k = xi^k sqrt(C(2J,k)); dE/dconj(xi) = (dv)^dagger H v/|v|^2 - E 2J xi/(1+|xi|^2)
        const CVector v = state_from_psi(psi, rep).vector;  // normalized
        const cplx xi = psi[0];
        const double u = std::norm(xi);
        // dv/dxi of the normalized-amplitude polynomial, rescaled by the same norm
        CVector dv = CVector::Zero(d);
        for (int k = 1; k < d; ++k) dv[k] = static_cast<double>(k) * v[k] / xi;
        if (xi == cplx(0.0)) {
            dv.setZero();
            dv[1] = v[0] * std::sqrt(static_cast<double>(rep.two_j));
        }
        const CVector hv = h * v;
        const double energy = v.dot(hv).real();
        return CVector::Constant(1, dv.dot(hv) - energy * static_cast<double>(rep.two_j) * xi / (1.0 + u));
    }
    CVector v(d);
    v[0] = 1.0;
    v.tail(rep.params()) = psi;
    const double norm = 1.0 + psi.squaredNorm();
    const CVector hv = h * v;
    const double energy = v.dot(hv).real() / norm;
    return (hv.tail(rep.params()) - energy * psi) / norm;
}

CVector grad_expectation(const CoherentState& state, const HamiltonianSpec& h) {
    if (!(state.rep == h.rep())) throw std::invalid_argument("grad_expectation: representation mismatch");
    return grad_expectation(state.psi, state.rep, h.matrix());
}

CVector eom_rhs(const CVector& psi, const RepresentationSpec& rep, const CMatrix& h, EomMode mode) {
    const CVector g = grad_expectation(psi, rep, h);
    const double norm = 1.0 + psi.squaredNorm();
    const cplx pre = -I_UNIT / rep.hbar;
    if (rep.spin_mode()) return pre * (norm * norm / rep.two_j) * g;
    if (mode == EomMode::PaperLiteral) return pre * (norm * norm) * g;
    return pre * norm * (g + psi * psi.dot(g));
}

CVector eom_rhs(const CoherentState& state, const HamiltonianSpec& h, EomMode mode) {
    if (!(state.rep == h.rep())) throw std::invalid_argument("eom_rhs: representation mismatch");
    return eom_rhs(state.psi, state.rep, h.matrix(), mode);
}

namespace chart {

std::vector<int> permutation(const RepresentationSpec& rep, int chart) {
    const int d = rep.dim();
    std::vector<int> perm(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) perm[static_cast<std::size_t>(i)] = i;
    if (rep.spin_mode()) {
        if (chart != 0 && chart != 1) throw std::out_of_range("chart: spin-J mode has charts 0 and 1");
        if (chart == 1) std::reverse(perm.begin(), perm.end());
        return perm;
    }
    if (chart < 0 || chart >= d) throw std::out_of_range("chart: index out of range");
    std::swap(perm[0], perm[static_cast<std::size_t>(chart)]);
    return perm;
}

CVector to_chart_basis(const CVector& v, const std::vector<int>& perm) {
    CVector w(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) w[i] = v[perm[static_cast<std::size_t>(i)]];
    return w;
}

CVector from_chart_basis(const CVector& w, const std::vector<int>& perm) {
    CVector v(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) v[perm[static_cast<std::size_t>(i)]] = w[i];
    return v;
}

CMatrix operator_in_chart(const CMatrix& h, const std::vector<int>& perm) {
    CMatrix out(h.rows(), h.cols());
    for (Eigen::Index r = 0; r < h.rows(); ++r)
        for (Eigen::Index c = 0; c < h.cols(); ++c)
            out(r, c) = h(perm[static_cast<std::size_t>(r)], perm[static_cast<std::size_t>(c)]);
    return out;
}

int best_chart(const CVector& v, const RepresentationSpec& rep) {
    if (rep.spin_mode()) return std::abs(v[0]) >= std::abs(v[v.size() - 1]) ? 0 : 1;
    Eigen::Index k = 0;
    v.cwiseAbs().maxCoeff(&k);
    return static_cast<int>(k);
}

}  // namespace chart

double Trajectory::energy_drift() const {
    if (energy_series.empty()) return 0.0;
    const double e0 = energy_series.front();
    double worst = 0.0;
    for (double e : energy_series) worst = std::max(worst, std::abs(e - e0));
    return worst / std::max(std::abs(e0), 1.0);
}

double Trajectory::casimir_drift() const {
    if (casimir_series.empty()) return 0.0;
    const double c0 = casimir_series.front();
    double worst = 0.0;
    for (double c : casimir_series) worst = std::max(worst, std::abs(c - c0));
    return worst;
}

CMatrix observable_operator(const RepresentationSpec& rep, const std::string& label) {
    CMatrix op = CMatrix::Identity(rep.dim(), rep.dim());
    std::stringstream ss(label);
    std::string factor;
    bool any = false;
    while (std::getline(ss, factor, '*')) {
        op = op * named_operator(rep, factor);
        any = true;
    }
    if (!any) throw std::invalid_argument("observable: empty label");
    if (hermiticity_residue(op) > 1e-10) throw std::invalid_argument("observable '" + label + "' is not hermitian");
    return op;
}

namespace {

CVector unpack(const RVector& y, Eigen::Index offset, Eigen::Index count) {
    CVector psi(count);
    for (Eigen::Index i = 0; i < count; ++i) psi[i] = cplx(y[offset + 2 * i], y[offset + 2 * i + 1]);
    return psi;
}

void pack(const CVector& psi, RVector& y, Eigen::Index offset) {
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
        y[offset + 2 * i] = psi[i].real();
        y[offset + 2 * i + 1] = psi[i].imag();
    }
}

CVector standard_psi(const CVector& vector, const RepresentationSpec& rep) {
    try {
        return psi_from_vector(vector, rep);
    } catch (const std::domain_error&) {
        return CVector::Constant(rep.params(), cplx(std::numeric_limits<double>::infinity(), 0.0));
    }
}

void check_output_times(const std::vector<double>& times, double t0, double t1) {
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (!(times[k] >= t0 && times[k] <= t1)) throw std::invalid_argument("integrate: output time outside t_span");
        if (k > 0 && !(times[k] > times[k - 1])) throw std::invalid_argument("integrate: output times must increase");
    }
}

}  // namespace

Trajectory integrate(const CoherentState& initial, const HamiltonianSpec& h, std::pair<double, double> t_span,
                     const IntegrateOptions& options) {
    const auto& rep = initial.rep;
    if (!(rep == h.rep())) throw std::invalid_argument("integrate: representation mismatch");
    if (!(options.tolerance >= 1e-12 && options.tolerance <= 1e-4))
        throw std::invalid_argument("integrate: tolerance must lie in [1e-12, 1e-4]");
    const auto [t0, t1] = t_span;
    if (!std::isfinite(t0) || !std::isfinite(t1) || t1 < t0) throw std::invalid_argument("integrate: bad t_span");
    check_output_times(options.output_times, t0, t1);
    if (!initial.vector.allFinite()) throw IntegrationError("integrate: non-finite initial state", t0);

    Trajectory traj;
    traj.rep = rep;
    traj.mode = options.mode;
    traj.stats.tolerance = options.tolerance;
    const CMatrix casimir_op = casimir(spin_operators(rep.two_s(), rep.hbar), rep.spin(), rep.hbar).matrix;
    std::vector<std::pair<std::string, CMatrix>> observables;
    for (const auto& label : options.observables) {
        observables.emplace_back(label, observable_operator(rep, label));
        traj.observables[label] = {};
    }

    auto record = [&](double t, const CVector& vector) {
        CoherentState s{standard_psi(vector, rep), vector, rep};
        traj.times.push_back(t);
        traj.psi_series.push_back(s.psi);
        traj.vectors.push_back(vector);
        traj.energy_series.push_back(expectation(s, h.matrix()));
        traj.casimir_series.push_back(expectation(s, casimir_op));
        for (const auto& [label, op] : observables) traj.observables[label].push_back(expectation(s, op));
    };

    int current = chart::best_chart(initial.vector, rep);
    if (initial.psi.cwiseAbs().maxCoeff() <= chart::kFlipThreshold) current = 0;
    auto perm = chart::permutation(rep, current);
    CMatrix h_chart = chart::operator_in_chart(h.matrix(), perm);

    const Eigen::Index m = rep.params();
    RVector y(2 * m);
    pack(psi_from_vector(chart::to_chart_basis(initial.vector, perm), rep), y, 0);
    record(t0, initial.vector);

    const OdeRhs rhs = [&](double, const RVector& state, RVector& dydt) {
        dydt.resize(state.size());
        pack(eom_rhs(unpack(state, 0, m), rep, h_chart, options.mode), dydt, 0);
    };
    const bool every_step = options.output_times.empty();
    const OdeObserver observer = [&](double t, RVector& state, bool at_stop) {
        const CVector psi = unpack(state, 0, m);
        if (!psi.allFinite()) throw IntegrationError("integrate: non-finite state", t);
        CVector vector = chart::from_chart_basis(state_from_psi(psi, rep).vector, perm);
        bool changed = false;
        if (psi.cwiseAbs().maxCoeff() > chart::kFlipThreshold) {
            const int next = chart::best_chart(vector, rep);
            if (next != current) {
                traj.stats.chart_flips.push_back({t, current, next});
                current = next;
                perm = chart::permutation(rep, current);
                h_chart = chart::operator_in_chart(h.matrix(), perm);
                pack(psi_from_vector(chart::to_chart_basis(vector, perm), rep), state, 0);
                changed = true;
            }
        }
        if ((every_step || at_stop) && t > traj.times.back()) record(t, vector);
        return changed;
    };

    OdeOptions ode;
    ode.rtol = options.tolerance;
    ode.atol = options.tolerance;
    const OdeStats stats = integrate_dopri5(rhs, t0, t1, y, ode, options.output_times, observer);
    traj.stats.accepted = stats.accepted;
    traj.stats.rejected = stats.rejected;
    traj.stats.rhs_evaluations = stats.rhs_evaluations;
    return traj;
}

CVector quantum_oracle_evolve(const CoherentState& initial, const HamiltonianSpec& h, double t) {
    if (initial.dim() > 64) throw std::invalid_argument("quantum_oracle_evolve: dimension exceeds 64");
    if (!(initial.rep == h.rep())) throw std::invalid_argument("quantum_oracle_evolve: representation mismatch");
    return unitary_from_hermitian(h.matrix() / h.rep().hbar, t) * initial.vector;
}

std::vector<double> linspace(double a, double b, std::size_t count) {
    std::vector<double> out(count);
    if (count == 1) out[0] = a;
    for (std::size_t k = 0; k < count && count > 1; ++k)
        out[k] = k + 1 == count ? b : a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1);
    return out;
}

ClassicalQuantumReport classical_vs_quantum(const CoherentState& initial, const HamiltonianSpec& h_linear,
                                            std::pair<double, double> t_span, EomMode mode, double tolerance,
                                            std::size_t samples) {
    if (!h_linear.is_linear())
        throw std::invalid_argument("classical_vs_quantum: Hamiltonian is not linear in the generators");
    if (samples < 2) throw std::invalid_argument("classical_vs_quantum: need at least two sample times");
    IntegrateOptions options;
    options.tolerance = tolerance;
    options.mode = mode;
    options.output_times = linspace(t_span.first, t_span.second, samples);
    const Trajectory traj = integrate(initial, h_linear, t_span, options);
    ClassicalQuantumReport report;
    report.mode = mode;
    report.samples = traj.size();
    report.energy_drift = traj.energy_drift();
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const CVector exact = quantum_oracle_evolve(initial, h_linear, traj.times[k] - t_span.first);
        report.max_fidelity_error = std::max(report.max_fidelity_error, 1.0 - fidelity(traj.vectors[k], exact));
    }
    return report;
}

}  // namespace sucs
