#include "sucs/algebra.hpp"

#include <cmath>

namespace sucs {

RepresentationSpec RepresentationSpec::fundamental(int n, double hbar) {
    RepresentationSpec r{n, hbar, 0};
    r.validate();
    return r;
}

RepresentationSpec RepresentationSpec::spin_j(int two_j, double hbar) {
    RepresentationSpec r{2, hbar, two_j};
    r.validate();
    return r;
}

void RepresentationSpec::validate() const {
    if (n < 2) throw std::invalid_argument("representation: n must be >= 2");
    if (!(hbar > 0.0) || !std::isfinite(hbar))
        throw std::invalid_argument("representation: hbar must be positive");
    if (two_j < 0) throw std::invalid_argument("representation: negative spin");
    if (two_j > 0 && n != 2)
        throw std::invalid_argument("representation: spin-J mode requires n == 2");
}

CMatrix SpinOperators::s_x() const { return 0.5 * (s_plus + s_minus); }
CMatrix SpinOperators::s_y() const { return (s_plus - s_minus) / (2.0 * I_UNIT); }

SpinOperators spin_operators(int two_s, double hbar) {
    if (two_s < 1) throw std::invalid_argument("spin_operators: spin must be positive");
    const int d = two_s + 1;
    const double s = 0.5 * two_s;
    SpinOperators ops;
    ops.s_z = CMatrix::Zero(d, d);
    ops.s_plus = CMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        const double m = -s + k;
        ops.s_z(k, k) = hbar * m;
        if (k + 1 < d) ops.s_plus(k + 1, k) = hbar * std::sqrt(s * (s + 1.0) - m * (m + 1.0));
    }
    ops.s_minus = ops.s_plus.adjoint();
    return ops;
}

CMatrix basis_unit(int n, int h, int j) {
    if (h < 1 || h > n || j < 1 || j > n)
        throw std::out_of_range("basis_unit: index out of range");
    CMatrix e = CMatrix::Zero(n, n);
    e(h - 1, j - 1) = 1.0;
    return e;
}

std::vector<CMatrix> GeneratorSet::all() const {
    std::vector<CMatrix> out;
    out.reserve(size());
    out.insert(out.end(), off_diag_sym.begin(), off_diag_sym.end());
    out.insert(out.end(), off_diag_antisym.begin(), off_diag_antisym.end());
    out.insert(out.end(), diagonal.begin(), diagonal.end());
    return out;
}

std::vector<std::string> GeneratorSet::labels() const {
    std::vector<std::string> out;
    out.reserve(size());
    for (auto [h, j] : pairs) out.push_back("Theta_" + std::to_string(h) + "_" + std::to_string(j));
    for (auto [h, j] : pairs) out.push_back("Beta_" + std::to_string(h) + "_" + std::to_string(j));
    for (std::size_t m = 1; m <= diagonal.size(); ++m) out.push_back("Eta_" + std::to_string(m));
    return out;
}

GeneratorSet build_generators(const RepresentationSpec& rep) {
    rep.validate();
    if (rep.spin_mode())
        throw std::invalid_argument("build_generators: su(n) basis needs the fundamental representation");
    const int n = rep.n;
    GeneratorSet gen;
    gen.rep = rep;
    for (int h = 1; h <= n; ++h) {
        for (int j = h + 1; j <= n; ++j) {
            const CMatrix ehj = basis_unit(n, h, j);
            const CMatrix ejh = basis_unit(n, j, h);
            gen.pairs.emplace_back(h, j);
            gen.off_diag_sym.push_back(ehj + ejh);
            gen.off_diag_antisym.push_back(-I_UNIT * (ehj - ejh));
        }
    }
    for (int m = 1; m <= n - 1; ++m) {
        CMatrix eta = CMatrix::Zero(n, n);
        for (int j = 1; j <= m; ++j) eta(j - 1, j - 1) = 1.0;
        eta(m, m) = -static_cast<double>(m);
        gen.diagonal.push_back(std::sqrt(2.0 / (m * (m + 1.0))) * eta);
    }
    gen.spin = spin_operators(rep.two_s(), rep.hbar);
    return gen;
}

CasimirReport casimir(const SpinOperators& spin, double spin_value, double hbar) {
    CasimirReport r;
    r.matrix = spin.s_z * spin.s_z + 0.5 * (spin.s_plus * spin.s_minus + spin.s_minus * spin.s_plus);
    const auto d = r.matrix.rows();
    r.eigenvalue = r.matrix.trace().real() / static_cast<double>(d);
    r.is_scalar = max_abs(r.matrix - r.eigenvalue * CMatrix::Identity(d, d)) < 1e-10;
    r.expected = spin_value * (spin_value + 1.0) * hbar * hbar;
    return r;
}

CasimirReport casimir(const GeneratorSet& gen) {
    return casimir(gen.spin, gen.rep.spin(), gen.rep.hbar);
}

double StructureConstants::max_abs_difference(const StructureConstants& other) const {
    if (other.dim_ != dim_) throw std::invalid_argument("structure constants: dimension mismatch");
    double worst = 0.0;
    for (std::size_t k = 0; k < data_.size(); ++k)
        worst = std::max(worst, std::abs(data_[k] - other.data_[k]));
    return worst;
}

double StructureConstants::antisymmetry_residue() const {
    double worst = 0.0;
    const auto& f = *this;
    for (std::size_t a = 0; a < dim_; ++a)
        for (std::size_t b = 0; b < dim_; ++b)
            for (std::size_t c = 0; c < dim_; ++c) {
                worst = std::max(worst, std::abs(f(a, b, c) + f(b, a, c)));
                worst = std::max(worst, std::abs(f(a, b, c) + f(a, c, b)));
                worst = std::max(worst, std::abs(f(a, b, c) + f(c, b, a)));
            }
    return worst;
}

StructureConstants structure_constants(const GeneratorSet& gen) {
    const auto t = gen.all();
    const std::size_t dim = t.size();
    // nonzero entries (row, col, value) of each generator; tr(C T) = sum C(col, row) T(row, col)
    struct Entry {
        Eigen::Index r, c;
        cplx v;
    };
    std::vector<std::vector<Entry>> nonzero(dim);
    for (std::size_t c = 0; c < dim; ++c)
        for (Eigen::Index j = 0; j < t[c].cols(); ++j)
            for (Eigen::Index i = 0; i < t[c].rows(); ++i)
                if (t[c](i, j) != cplx(0.0)) nonzero[c].push_back({i, j, t[c](i, j)});
    StructureConstants f(dim);
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b) {
            const CMatrix comm = commutator(t[a], t[b]);
            for (std::size_t c = 0; c < dim; ++c) {
                cplx tr = 0.0;
                for (const auto& e : nonzero[c]) tr += comm(e.c, e.r) * e.v;
                f(a, b, c) = (tr / (4.0 * I_UNIT)).real();
            }
        }
    return f;
}

StructureConstants structure_constants_by_expansion(const GeneratorSet& gen) {
    const auto t = gen.all();
    const std::size_t dim = t.size();
    StructureConstants f(dim);
    const RealSpanSolver solver(t);
    for (std::size_t a = 0; a < dim; ++a) {
        std::vector<CMatrix> targets;
        targets.reserve(dim);
        for (std::size_t b = 0; b < dim; ++b) targets.push_back(commutator(t[a], t[b]) / (2.0 * I_UNIT));
        const Eigen::MatrixXd coeff = solver.solve(targets);
        for (std::size_t b = 0; b < dim; ++b)
            for (std::size_t c = 0; c < dim; ++c)
                f(a, b, c) = coeff(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(b));
    }
    return f;
}

}  // namespace sucs
