#pragma once

// Conventional Gell-Mann style listings for SU(3) and SU(4), used as fixed references.

#include <cmath>
#include <vector>

#include "sucs/linalg.hpp"

namespace reference {

using namespace sucs;

// Gell-Mann matrices for SU(3) with the traceless diagonal pair.
inline std::vector<CMatrix> listed_su3() {
    const cplx i{0, 1};
    std::vector<CMatrix> out(8, CMatrix::Zero(3, 3));
    out[0](1, 2) = -i; out[0](2, 1) = i;
    out[1](0, 2) = i;  out[1](2, 0) = -i;
    out[2](0, 1) = -i; out[2](1, 0) = i;
    out[3](1, 2) = 1;  out[3](2, 1) = 1;
    out[4](0, 2) = 1;  out[4](2, 0) = 1;
    out[5](0, 1) = 1;  out[5](1, 0) = 1;
    out[6].diagonal() << 1, 1, -2;
    out[6] /= std::sqrt(3.0);
    out[7].diagonal() << 1, -1, 0;
    return out;
}

// SU(4) listing, antisymmetric block first; diagonal entries in traceless form.
inline std::vector<CMatrix> listed_su4() {
    const cplx i{0, 1};
    std::vector<CMatrix> out;
    const int anti[6][2] = {{2, 3}, {1, 3}, {0, 3}, {1, 2}, {0, 2}, {0, 1}};
    for (auto [r, c] : anti) {
        CMatrix m = CMatrix::Zero(4, 4);
        m(r, c) = -i;
        m(c, r) = i;
        out.push_back(m);
    }
    for (auto [r, c] : anti) {
        CMatrix m = CMatrix::Zero(4, 4);
        m(r, c) = 1;
        m(c, r) = 1;
        out.push_back(m);
    }
    CMatrix d = CMatrix::Zero(4, 4);
    d.diagonal() << 1, -1, 0, 0;
    out.push_back(d);
    d.diagonal() << 1, 1, -2, 0;
    out.push_back(d / std::sqrt(3.0));
    d.diagonal() << 1, 1, 1, -3;
    out.push_back(d / std::sqrt(6.0));
    return out;
}

inline double span_residual(const std::vector<CMatrix>& basis, const std::vector<CMatrix>& targets) {
    double worst = 0.0;
    for (const auto& t : targets) {
        double r = 0.0;
        real_span_coefficients(basis, t, &r);
        worst = std::max(worst, r);
    }
    return worst;
}

}  // namespace reference
