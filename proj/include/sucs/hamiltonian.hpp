#pragma once

#include <random>
#include <string>
#include <vector>

#include "sucs/algebra.hpp"

namespace sucs {

struct HamiltonianTerm {
    double coeff = 0.0;
    std::vector<std::string> ops;  // ordered product, at most two factors; empty = identity
};

/// Hermitian operator on the Hilbert space of a representation, given either
/// as an explicit matrix or as a real-coefficient polynomial in named
/// operators ("Sx", "Sy", "Sz", "S+", "S-", "I", and in the fundamental
/// representation every su(n) generator label plus the "L1".."L{n^2-1}" aliases).
class HamiltonianSpec {
public:
    static HamiltonianSpec from_matrix(CMatrix matrix, const RepresentationSpec& rep);
    static HamiltonianSpec from_terms(std::vector<HamiltonianTerm> terms, const RepresentationSpec& rep);

    const CMatrix& matrix() const { return matrix_; }
    const RepresentationSpec& rep() const { return rep_; }
    bool is_polynomial() const { return polynomial_; }
    const std::vector<HamiltonianTerm>& terms() const { return terms_; }

    // Highest monomial degree; 0 for matrix form.
    int degree() const;

    // True when the operator generates a group motion (identity plus a
    // linear combination of Lie-algebra generators), which maps coherent
    // states onto coherent states. Polynomials must have degree <= 1.
    bool is_linear() const;

private:
    CMatrix matrix_;
    RepresentationSpec rep_;
    bool polynomial_ = false;
    std::vector<HamiltonianTerm> terms_;
};

// Throws std::invalid_argument on unknown labels.
CMatrix named_operator(const RepresentationSpec& rep, const std::string& label);

// Lie-algebra generators acting on the Hilbert space of rep: the su(n) basis
// in the fundamental, (Sx, Sy, Sz) in spin-J mode.
std::vector<CMatrix> lie_generators(const RepresentationSpec& rep);
std::vector<std::string> lie_generator_labels(const RepresentationSpec& rep);

// Sum of N(0,1)-weighted Lie generators, as a degree-1 polynomial.
HamiltonianSpec random_linear_hamiltonian(const RepresentationSpec& rep, std::mt19937_64& rng);

// Random dense hermitian matrix with N(0,1) entries.
CMatrix random_hermitian(int dim, std::mt19937_64& rng);

}  // namespace sucs
