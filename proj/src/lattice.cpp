#include "sucs/lattice.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

namespace sucs {

std::string to_string(CouplingType type) { return type == CouplingType::Bilinear ? "bilinear" : "biquadratic"; }
std::string to_string(Boundary boundary) { return boundary == Boundary::Open ? "open" : "periodic"; }

void ChainModel::validate() const {
    rep.validate();
    if (rep.spin_mode()) throw std::invalid_argument("chain: sites use the fundamental representation");
    if (sites < 1) throw std::invalid_argument("chain: need at least one site");
    for (const auto& b : bonds) {
        if (b.i < 0 || b.i >= sites || b.j < 0 || b.j >= sites) throw std::invalid_argument("chain: bond site out of range");
        if (b.i == b.j) throw std::invalid_argument("chain: bond joins a site to itself");
        if (!std::isfinite(b.strength)) throw std::invalid_argument("chain: non-finite coupling");
    }
    if (!field.empty()) {
        if (static_cast<int>(field.size()) != sites) throw std::invalid_argument("chain: field needs one term per site");
        for (const auto& f : field) {
            if (f.rows() != rep.dim() || f.cols() != rep.dim()) throw std::invalid_argument("chain: field dimension mismatch");
            if (hermiticity_residue(f) > 1e-10) throw std::invalid_argument("chain: field term is not hermitian");
        }
    }
}

void ChainModel::add_nearest_neighbour(CouplingType type, double strength) {
    for (int a = 0; a + 1 < sites; ++a) bonds.push_back({a, a + 1, type, strength});
    if (boundary == Boundary::Periodic && sites > 2) bonds.push_back({sites - 1, 0, type, strength});
}

ChainState uniform_chain_state(int sites, const CVector& psi) {
    return ChainState{std::vector<CVector>(static_cast<std::size_t>(sites), psi)};
}

int variables_per_site(const RepresentationSpec& rep) { return 2 * rep.params(); }

namespace {

// Single-site moments that enter the bond energies.
struct SiteMoments {
    std::array<double, 3> dipole{};
    Eigen::Matrix3cd quad;  // <S^mu S^nu>
};

struct SpinBasis {
    std::array<CMatrix, 3> s;
    std::array<std::array<CMatrix, 3>, 3> ss;

    explicit SpinBasis(const RepresentationSpec& rep) {
        const auto ops = spin_operators(rep.two_s(), rep.hbar);
        s = {ops.s_x(), ops.s_y(), ops.s_z};
        for (int mu = 0; mu < 3; ++mu)
            for (int nu = 0; nu < 3; ++nu) ss[mu][nu] = s[mu] * s[nu];
    }
};

SiteMoments moments(const CVector& v, const SpinBasis& basis) {
    SiteMoments m;
    for (int mu = 0; mu < 3; ++mu) {
        m.dipole[mu] = v.dot(basis.s[mu] * v).real();
        for (int nu = 0; nu < 3; ++nu) m.quad(mu, nu) = v.dot(basis.ss[mu][nu] * v);
    }
    return m;
}

std::vector<CVector> site_vectors(const ChainState& state, const ChainModel& model) {
    if (static_cast<int>(state.psi.size()) != model.sites) throw std::invalid_argument("chain: state has wrong site count");
    std::vector<CVector> out;
    out.reserve(state.psi.size());
    for (const auto& psi : state.psi) out.push_back(state_from_psi(psi, model.rep).vector);
    return out;
}

double energy_from(const std::vector<CVector>& vectors, const std::vector<SiteMoments>& mom, const ChainModel& model) {
    double e = 0.0;
    for (const auto& b : model.bonds) {
        const auto& p = mom[static_cast<std::size_t>(b.i)];
        const auto& q = mom[static_cast<std::size_t>(b.j)];
        if (b.type == CouplingType::Bilinear) {
            for (int mu = 0; mu < 3; ++mu) e += b.strength * p.dipole[mu] * q.dipole[mu];
        } else {
            e += b.strength * p.quad.cwiseProduct(q.quad).sum().real();
        }
    }
    for (std::size_t a = 0; a < model.field.size(); ++a) e += vectors[a].dot(model.field[a] * vectors[a]).real();
    return e;
}

CMatrix effective_from(const std::vector<SiteMoments>& mom, const ChainModel& model, const SpinBasis& basis, int site) {
    const int d = model.rep.dim();
    CMatrix h = model.field.empty() ? CMatrix::Zero(d, d) : model.field[static_cast<std::size_t>(site)];
    for (const auto& b : model.bonds) {
        if (b.i != site && b.j != site) continue;
        const auto& other = mom[static_cast<std::size_t>(b.i == site ? b.j : b.i)];
        if (b.type == CouplingType::Bilinear) {
            for (int mu = 0; mu < 3; ++mu) h += b.strength * other.dipole[mu] * basis.s[mu];
        } else {
            for (int mu = 0; mu < 3; ++mu)
                for (int nu = 0; nu < 3; ++nu) h += b.strength * other.quad(mu, nu) * basis.ss[mu][nu];
        }
    }
    return h;
}

}  // namespace

double chain_energy(const ChainState& state, const ChainModel& model) {
    model.validate();
    const SpinBasis basis(model.rep);
    const auto vectors = site_vectors(state, model);
    std::vector<SiteMoments> mom;
    for (const auto& v : vectors) mom.push_back(moments(v, basis));
    return energy_from(vectors, mom, model);
}

CMatrix effective_field(const ChainState& state, const ChainModel& model, int site) {
    model.validate();
    if (site < 0 || site >= model.sites) throw std::out_of_range("effective_field: site out of range");
    const SpinBasis basis(model.rep);
    std::vector<SiteMoments> mom;
    for (const auto& v : site_vectors(state, model)) mom.push_back(moments(v, basis));
    return effective_from(mom, model, basis, site);
}

MultipoleBasis multipole_basis(const RepresentationSpec& rep) {
    rep.validate();
    const int d = rep.dim();
    const auto spin = spin_operators(rep.two_s(), 1.0);
    MultipoleBasis out;
    auto add = [&](CMatrix m, std::string label, int rank) {
        m = 0.5 * (m + m.adjoint());
        const double norm2 = m.cwiseAbs2().sum();  // tr(M^2) for hermitian M
        m *= std::sqrt(2.0 / norm2);
        out.operators.push_back(std::move(m));
        out.labels.push_back(std::move(label));
        out.ranks.push_back(rank);
    };
    add(spin.s_x(), "T1_x", 1);
    add(spin.s_y(), "T1_y", 1);
    add(spin.s_z, "T1_z", 1);
    for (int k = 2; k <= rep.two_s(); ++k) {
        // highest component (S+)^k, lowered by repeated commutators with S-
        std::vector<CMatrix> comp(static_cast<std::size_t>(k + 1));
        CMatrix t = CMatrix::Identity(d, d);
        for (int p = 0; p < k; ++p) t = t * spin.s_plus;
        comp[static_cast<std::size_t>(k)] = t;
        for (int q = k; q > 0; --q) comp[static_cast<std::size_t>(q - 1)] = commutator(spin.s_minus, comp[static_cast<std::size_t>(q)]);
        const std::string prefix = "T" + std::to_string(k) + "_";
        CMatrix t0 = comp[0];
        if (t0(d - 1, d - 1).real() < 0) t0 = -t0;
        add(t0, prefix + "0", k);
        for (int q = 1; q <= k; ++q) {
            const CMatrix& tq = comp[static_cast<std::size_t>(q)];
            add(tq + tq.adjoint(), prefix + std::to_string(q) + "c", k);
            add(-I_UNIT * (tq - tq.adjoint()), prefix + std::to_string(q) + "s", k);
        }
    }
    return out;
}

double ChainTrajectory::energy_drift() const {
    if (energy_series.empty()) return 0.0;
    const double e0 = energy_series.front();
    double worst = 0.0;
    for (double e : energy_series) worst = std::max(worst, std::abs(e - e0));
    return worst / std::max(std::abs(e0), 1.0);
}

double ChainTrajectory::total_sz_drift() const {
    if (total_sz_series.empty()) return 0.0;
    double worst = 0.0;
    for (double s : total_sz_series) worst = std::max(worst, std::abs(s - total_sz_series.front()));
    return worst;
}

ChainTrajectory chain_evolve(const ChainState& initial, const ChainModel& model, std::pair<double, double> t_span,
                             const ChainEvolveOptions& options) {
    model.validate();
    if (!(options.tolerance >= 1e-12 && options.tolerance <= 1e-4))
        throw std::invalid_argument("chain_evolve: tolerance must lie in [1e-12, 1e-4]");
    const auto [t0, t1] = t_span;
    if (!std::isfinite(t0) || !std::isfinite(t1) || t1 < t0) throw std::invalid_argument("chain_evolve: bad t_span");
    for (std::size_t k = 0; k < options.output_times.size(); ++k) {
        const double t = options.output_times[k];
        if (!(t >= t0 && t <= t1) || (k > 0 && !(t > options.output_times[k - 1])))
            throw std::invalid_argument("chain_evolve: output times must increase inside t_span");
    }

    const auto& rep = model.rep;
    const SpinBasis basis(rep);
    const int sites = model.sites;
    const Eigen::Index m = rep.params();
    const Eigen::Index stride = 2 * m;

    ChainTrajectory traj;
    traj.model = model;
    traj.stats.tolerance = options.tolerance;

    std::vector<int> charts(static_cast<std::size_t>(sites), 0);
    std::vector<std::vector<int>> perms(static_cast<std::size_t>(sites), chart::permutation(rep, 0));

    auto vectors_from = [&](const RVector& y) {
        std::vector<CVector> out(static_cast<std::size_t>(sites));
        for (int a = 0; a < sites; ++a) {
            CVector psi(m);
            for (Eigen::Index i = 0; i < m; ++i) psi[i] = cplx(y[a * stride + 2 * i], y[a * stride + 2 * i + 1]);
            out[static_cast<std::size_t>(a)] = chart::from_chart_basis(state_from_psi(psi, rep).vector, perms[static_cast<std::size_t>(a)]);
        }
        return out;
    };
    auto set_site = [&](RVector& y, int a, const CVector& vector) {
        const CVector psi = psi_from_vector(chart::to_chart_basis(vector, perms[static_cast<std::size_t>(a)]), rep);
        for (Eigen::Index i = 0; i < m; ++i) {
            y[a * stride + 2 * i] = psi[i].real();
            y[a * stride + 2 * i + 1] = psi[i].imag();
        }
    };
    auto record = [&](double t, const std::vector<CVector>& vectors) {
        std::vector<SiteMoments> mom;
        std::vector<CVector> psis;
        std::vector<std::array<double, 3>> dip;
        double sz = 0.0;
        for (const auto& v : vectors) {
            mom.push_back(moments(v, basis));
            dip.push_back(mom.back().dipole);
            sz += mom.back().dipole[2];
            try {
                psis.push_back(psi_from_vector(v, rep));
            } catch (const std::domain_error&) {
                psis.push_back(CVector::Constant(m, cplx(std::numeric_limits<double>::infinity(), 0.0)));
            }
        }
        traj.times.push_back(t);
        traj.psi_series.push_back(std::move(psis));
        traj.vector_series.push_back(vectors);
        traj.energy_series.push_back(energy_from(vectors, mom, model));
        traj.total_sz_series.push_back(sz);
        traj.dipole_series.push_back(std::move(dip));
    };

    RVector y(sites * stride);
    std::vector<CVector> start = site_vectors(initial, model);
    for (int a = 0; a < sites; ++a) {
        if (initial.psi[static_cast<std::size_t>(a)].cwiseAbs().maxCoeff() > chart::kFlipThreshold) {
            charts[static_cast<std::size_t>(a)] = chart::best_chart(start[static_cast<std::size_t>(a)], rep);
            perms[static_cast<std::size_t>(a)] = chart::permutation(rep, charts[static_cast<std::size_t>(a)]);
        }
        set_site(y, a, start[static_cast<std::size_t>(a)]);
    }
    record(t0, start);

    const OdeRhs rhs = [&](double, const RVector& state, RVector& dydt) {
        dydt.resize(state.size());
        const auto vectors = vectors_from(state);
        std::vector<SiteMoments> mom;
        mom.reserve(vectors.size());
        for (const auto& v : vectors) mom.push_back(moments(v, basis));
        for (int a = 0; a < sites; ++a) {
            const auto& perm = perms[static_cast<std::size_t>(a)];
            const CMatrix h = chart::operator_in_chart(effective_from(mom, model, basis, a), perm);
            CVector psi(m);
            for (Eigen::Index i = 0; i < m; ++i) psi[i] = cplx(state[a * stride + 2 * i], state[a * stride + 2 * i + 1]);
            const CVector vel = eom_rhs(psi, rep, h, EomMode::MetricConsistent);
            for (Eigen::Index i = 0; i < m; ++i) {
                dydt[a * stride + 2 * i] = vel[i].real();
                dydt[a * stride + 2 * i + 1] = vel[i].imag();
            }
        }
    };
    const bool every_step = options.output_times.empty();
    const OdeObserver observer = [&](double t, RVector& state, bool at_stop) {
        if (!state.allFinite()) throw IntegrationError("chain_evolve: non-finite state", t);
        const auto vectors = vectors_from(state);
        bool changed = false;
        for (int a = 0; a < sites; ++a) {
            if (state.segment(a * stride, stride).cwiseAbs().maxCoeff() <= chart::kFlipThreshold) continue;
            const int next = chart::best_chart(vectors[static_cast<std::size_t>(a)], rep);
            auto& current = charts[static_cast<std::size_t>(a)];
            if (next == current) continue;
            traj.stats.chart_flips.push_back({t, current, next});
            current = next;
            perms[static_cast<std::size_t>(a)] = chart::permutation(rep, next);
            set_site(state, a, vectors[static_cast<std::size_t>(a)]);
            changed = true;
        }
        if ((every_step || at_stop) && t > traj.times.back()) record(t, vectors);
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

std::vector<SiteMultipoles> multipole_series(const ChainTrajectory& trajectory) {
    const auto basis = multipole_basis(trajectory.model.rep);
    std::vector<SiteMultipoles> out(static_cast<std::size_t>(trajectory.model.sites));
    for (const auto& snapshot : trajectory.vector_series) {
        for (std::size_t a = 0; a < snapshot.size(); ++a) {
            const CVector& v = snapshot[a];
            std::array<double, 3> dip{};
            std::vector<double> higher;
            for (std::size_t k = 0; k < basis.operators.size(); ++k) {
                const double value = v.dot(basis.operators[k] * v).real();
                if (k < 3)
                    dip[k] = value;
                else
                    higher.push_back(value);
            }
            out[a].dipole.push_back(dip);
            out[a].higher.push_back(std::move(higher));
        }
    }
    return out;
}

namespace {

SparseCMatrix to_sparse(const CMatrix& m) { return m.sparseView(); }

CVector kron_vectors(const std::vector<CVector>& vectors) {
    CVector out = vectors.front();
    for (std::size_t a = 1; a < vectors.size(); ++a) {
        const auto d = vectors[a].size();
        CVector next(out.size() * d);
        for (Eigen::Index i = 0; i < out.size(); ++i) next.segment(i * d, d) = out[i] * vectors[a];
        out = std::move(next);
    }
    return out;
}

SparseCMatrix site_operator(const CMatrix& op, int site, int sites) {
    const auto d = op.rows();
    SparseCMatrix out = site == 0 ? to_sparse(op) : to_sparse(CMatrix::Identity(d, d));
    for (int a = 1; a < sites; ++a) {
        const SparseCMatrix factor = a == site ? to_sparse(op) : to_sparse(CMatrix::Identity(d, d));
        out = Eigen::kroneckerProduct(out, factor).eval();
    }
    return out;
}

}  // namespace

SparseCMatrix chain_hamiltonian_matrix(const ChainModel& model) {
    model.validate();
    const double dim = std::pow(static_cast<double>(model.rep.dim()), model.sites);
    if (dim > 4096) throw std::invalid_argument("chain_hamiltonian_matrix: Hilbert space exceeds 4096");
    const SpinBasis basis(model.rep);
    const auto total = static_cast<Eigen::Index>(dim);
    SparseCMatrix h(total, total);
    for (const auto& b : model.bonds) {
        SparseCMatrix dot(total, total);
        for (int mu = 0; mu < 3; ++mu)
            dot += site_operator(basis.s[mu], b.i, model.sites) * site_operator(basis.s[mu], b.j, model.sites);
        if (b.type == CouplingType::Bilinear)
            h += b.strength * dot;
        else
            h += b.strength * (dot * dot).eval();
    }
    for (std::size_t a = 0; a < model.field.size(); ++a)
        h += site_operator(model.field[a], static_cast<int>(a), model.sites);
    h.prune(cplx(0.0));
    return h;
}

CVector product_vector(const ChainState& state, const ChainModel& model) {
    return kron_vectors(site_vectors(state, model));
}

double chain_quantum_deviation(const ChainTrajectory& trajectory) {
    const auto& model = trajectory.model;
    if (trajectory.size() == 0) return 0.0;
    const SparseCMatrix h = chain_hamiltonian_matrix(model);
    // Bound on the spectral radius for the Taylor step size.
    double bound = 0.0;
    for (Eigen::Index c = 0; c < h.outerSize(); ++c) {
        double col = 0.0;
        for (SparseCMatrix::InnerIterator it(h, c); it; ++it) col += std::abs(it.value());
        bound = std::max(bound, col);
    }
    bound /= model.rep.hbar;
    CVector psi = kron_vectors(trajectory.vector_series.front());
    double worst = 0.0;
    for (std::size_t k = 1; k < trajectory.size(); ++k) {
        const double span = trajectory.times[k] - trajectory.times[k - 1];
        const int steps = std::max(1, static_cast<int>(std::ceil(span * bound / 0.5)));
        const double dt = span / steps;
        for (int s = 0; s < steps; ++s) {
            CVector term = psi, sum = psi;
            for (int order = 1; order < 40; ++order) {
                term = (-I_UNIT * dt / (model.rep.hbar * order)) * (h * term);
                sum += term;
                if (term.norm() < 1e-17) break;
            }
            psi = sum;
        }
        worst = std::max(worst, 1.0 - fidelity(kron_vectors(trajectory.vector_series[k]), psi));
    }
    return worst;
}

}  // namespace sucs
