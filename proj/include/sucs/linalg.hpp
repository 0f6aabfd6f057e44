#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace sucs {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr cplx I_UNIT{0.0, 1.0};

// Largest absolute entry, the norm every tolerance in this library refers to.
double max_abs(const CMatrix& m);

CMatrix commutator(const CMatrix& a, const CMatrix& b);
CMatrix anticommutator(const CMatrix& a, const CMatrix& b);

// max |M - M^dagger|
double hermiticity_residue(const CMatrix& m);

// exp(-i * h * t) for hermitian h, by eigendecomposition; exactly unitary up to rounding.
CMatrix unitary_from_hermitian(const CMatrix& h, double t);

// General dense matrix exponential (Pade, scaling and squaring).
CMatrix expm(const CMatrix& a);

// Real-linear projection of a hermitian target onto span{basis}: returns the
// coefficients and writes the max-norm residual.
RVector real_span_coefficients(const std::vector<CMatrix>& basis, const CMatrix& target,
                               double* residual = nullptr);

// Least-squares solver for repeated projections onto one fixed basis.
class RealSpanSolver {
public:
    explicit RealSpanSolver(const std::vector<CMatrix>& basis);
    // Column k holds the coefficients of targets[k].
    Eigen::MatrixXd solve(const std::vector<CMatrix>& targets, double* residual = nullptr) const;

private:
    Eigen::Index dim_;
    Eigen::MatrixXd matrix_;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> decomposition_;
};

void require_square(const CMatrix& m, const char* what);

}  // namespace sucs
