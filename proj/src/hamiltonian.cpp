#include "sucs/hamiltonian.hpp"

#include <algorithm>

namespace sucs {

namespace {

constexpr double kHermitianTolerance = 1e-10;

}  // namespace

std::vector<CMatrix> lie_generators(const RepresentationSpec& rep) {
    if (rep.spin_mode()) {
        const auto s = spin_operators(rep.two_s(), rep.hbar);
        return {s.s_x(), s.s_y(), s.s_z};
    }
    return build_generators(rep).all();
}

std::vector<std::string> lie_generator_labels(const RepresentationSpec& rep) {
    if (rep.spin_mode()) return {"Sx", "Sy", "Sz"};
    return build_generators(rep).labels();
}

CMatrix named_operator(const RepresentationSpec& rep, const std::string& label) {
    rep.validate();
    const int d = rep.dim();
    if (label == "I") return CMatrix::Identity(d, d);
    const auto spin = spin_operators(rep.two_s(), rep.hbar);
    if (label == "Sx") return spin.s_x();
    if (label == "Sy") return spin.s_y();
    if (label == "Sz") return spin.s_z;
    if (label == "S+" || label == "Sp") return spin.s_plus;
    if (label == "S-" || label == "Sm") return spin.s_minus;
    if (!rep.spin_mode()) {
        const auto gen = build_generators(rep);
        const auto all = gen.all();
        const auto labels = gen.labels();
        for (std::size_t k = 0; k < labels.size(); ++k)
            if (labels[k] == label) return all[k];
        if (label.size() > 1 && label[0] == 'L') {
            try {
                std::size_t used = 0;
                const int idx = std::stoi(label.substr(1), &used);
                if (used == label.size() - 1 && idx >= 1 && static_cast<std::size_t>(idx) <= all.size())
                    return all[static_cast<std::size_t>(idx - 1)];
            } catch (const std::exception&) {
            }
        }
    }
    throw std::invalid_argument("unknown operator label '" + label + "'");
}

HamiltonianSpec HamiltonianSpec::from_matrix(CMatrix matrix, const RepresentationSpec& rep) {
    rep.validate();
    if (matrix.rows() != rep.dim() || matrix.cols() != rep.dim())
        throw std::invalid_argument("hamiltonian: matrix dimension does not match representation");
    if (!matrix.allFinite()) throw std::invalid_argument("hamiltonian: non-finite matrix entry");
    if (hermiticity_residue(matrix) > kHermitianTolerance)
        throw std::invalid_argument("hamiltonian: matrix is not hermitian");
    HamiltonianSpec h;
    h.matrix_ = std::move(matrix);
    h.rep_ = rep;
    return h;
}

HamiltonianSpec HamiltonianSpec::from_terms(std::vector<HamiltonianTerm> terms, const RepresentationSpec& rep) {
    rep.validate();
    const int d = rep.dim();
    CMatrix m = CMatrix::Zero(d, d);
    for (const auto& term : terms) {
        if (term.ops.size() > 2) throw std::invalid_argument("hamiltonian: monomial degree exceeds 2");
        if (!std::isfinite(term.coeff)) throw std::invalid_argument("hamiltonian: non-finite coefficient");
        CMatrix mono = CMatrix::Identity(d, d);
        for (const auto& label : term.ops) mono = mono * named_operator(rep, label);
        m += term.coeff * mono;
    }
    if (hermiticity_residue(m) > kHermitianTolerance)
        throw std::invalid_argument("hamiltonian: polynomial does not assemble to a hermitian operator");
    HamiltonianSpec h;
    h.matrix_ = std::move(m);
    h.rep_ = rep;
    h.polynomial_ = true;
    h.terms_ = std::move(terms);
    return h;
}

int HamiltonianSpec::degree() const {
    int deg = 0;
    for (const auto& t : terms_) {
        int k = 0;
        for (const auto& op : t.ops) k += op == "I" ? 0 : 1;
        deg = std::max(deg, k);
    }
    return deg;
}

bool HamiltonianSpec::is_linear() const {
    if (polynomial_) return degree() <= 1;
    auto basis = lie_generators(rep_);
    basis.push_back(CMatrix::Identity(rep_.dim(), rep_.dim()));
    double residual = 0.0;
    real_span_coefficients(basis, matrix_, &residual);
    return residual < kHermitianTolerance;
}

HamiltonianSpec random_linear_hamiltonian(const RepresentationSpec& rep, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<HamiltonianTerm> terms;
    for (const auto& label : lie_generator_labels(rep)) terms.push_back({normal(rng), {label}});
    return HamiltonianSpec::from_terms(std::move(terms), rep);
}

CMatrix random_hermitian(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix a(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) a(r, c) = cplx(normal(rng), normal(rng));
    return 0.5 * (a + a.adjoint());
}

}  // namespace sucs
