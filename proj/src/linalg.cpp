#include "sucs/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace sucs {

double max_abs(const CMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_square(const CMatrix& m, const char* what) {
    if (m.rows() != m.cols())
        throw std::invalid_argument(std::string(what) + ": matrix is not square");
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
    require_square(a, "commutator");
    require_square(b, "commutator");
    if (a.rows() != b.rows())
        throw std::invalid_argument("commutator: dimension mismatch");
    return a * b - b * a;
}

CMatrix anticommutator(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("anticommutator: dimension mismatch");
    return a * b + b * a;
}

double hermiticity_residue(const CMatrix& m) {
    require_square(m, "hermiticity_residue");
    return max_abs(m - m.adjoint());
}

CMatrix unitary_from_hermitian(const CMatrix& h, double t) {
    require_square(h, "unitary_from_hermitian");
    // Symmetrize so rounding noise in h cannot leak into the eigenbasis.
    const CMatrix hs = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hs);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("unitary_from_hermitian: eigensolver failed");
    CVector phases(hs.rows());
    for (Eigen::Index k = 0; k < hs.rows(); ++k)
        phases[k] = std::exp(-I_UNIT * es.eigenvalues()[k] * t);
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix expm(const CMatrix& a) {
    require_square(a, "expm");
    return a.exp();
}

namespace {

// Rows 0..d^2-1 hold real parts, the rest imaginary parts, column-major entries.
void flatten_into(const CMatrix& m, Eigen::Ref<Eigen::VectorXd> out) {
    const Eigen::Index d = m.rows();
    const Eigen::Index entries = d * d;
    for (Eigen::Index e = 0; e < entries; ++e) {
        out[e] = m(e % d, e / d).real();
        out[entries + e] = m(e % d, e / d).imag();
    }
}

}  // namespace

RealSpanSolver::RealSpanSolver(const std::vector<CMatrix>& basis) {
    if (basis.empty()) throw std::invalid_argument("RealSpanSolver: empty basis");
    dim_ = basis.front().rows();
    matrix_.resize(2 * dim_ * dim_, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (basis[k].rows() != dim_ || basis[k].cols() != dim_)
            throw std::invalid_argument("RealSpanSolver: dimension mismatch");
        flatten_into(basis[k], matrix_.col(static_cast<Eigen::Index>(k)));
    }
    decomposition_.compute(matrix_);
}

Eigen::MatrixXd RealSpanSolver::solve(const std::vector<CMatrix>& targets, double* residual) const {
    Eigen::MatrixXd b(matrix_.rows(), static_cast<Eigen::Index>(targets.size()));
    for (std::size_t k = 0; k < targets.size(); ++k) {
        if (targets[k].rows() != dim_ || targets[k].cols() != dim_)
            throw std::invalid_argument("RealSpanSolver: dimension mismatch");
        flatten_into(targets[k], b.col(static_cast<Eigen::Index>(k)));
    }
    Eigen::MatrixXd x = decomposition_.solve(b);
    if (residual) *residual = targets.empty() ? 0.0 : (matrix_ * x - b).cwiseAbs().maxCoeff();
    return x;
}

RVector real_span_coefficients(const std::vector<CMatrix>& basis, const CMatrix& target, double* residual) {
    return RealSpanSolver(basis).solve({target}, residual).col(0);
}

}  // namespace sucs
