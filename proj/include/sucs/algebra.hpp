#pragma once

#include <string>
#include <vector>

#include "sucs/linalg.hpp"

namespace sucs {

/// Which representation a state or operator lives in.
///
/// The default is the n-dimensional fundamental representation of SU(n),
/// read as spin S = (n-1)/2 with basis index 0 the lowest-weight state
/// |S,-S> and indices ascending in S^z. For SU(2) there is also a spin-J
/// mode where the Hilbert space has dimension 2J+1 while the coherent-state
/// chart still has a single complex coordinate.
struct RepresentationSpec {
    int n = 2;
    double hbar = 1.0;
    int two_j = 0;  // 0 = fundamental; otherwise spin-J mode with J = two_j / 2 (n == 2)

    static RepresentationSpec fundamental(int n, double hbar = 1.0);
    static RepresentationSpec spin_j(int two_j, double hbar = 1.0);

    bool spin_mode() const { return two_j > 0; }
    int two_s() const { return spin_mode() ? two_j : n - 1; }
    double spin() const { return 0.5 * two_s(); }
    int dim() const { return two_s() + 1; }
    int params() const { return n - 1; }

    // Throws std::invalid_argument when an invariant is broken.
    void validate() const;

    bool operator==(const RepresentationSpec&) const = default;
};

struct SpinOperators {
    CMatrix s_z, s_plus, s_minus;

    CMatrix s_x() const;
    CMatrix s_y() const;
};

// Spin-S ladder triple in the lowest-weight-first basis, carrying hbar.
SpinOperators spin_operators(int two_s, double hbar);

// Elementary matrix with a single 1 in row h, column j (1-based, as e_j^h).
CMatrix basis_unit(int n, int h, int j);

/// Generalized Gell-Mann basis of su(n) plus the spin-S ladder operators.
struct GeneratorSet {
    RepresentationSpec rep;
    std::vector<CMatrix> off_diag_sym;      // Theta_j^h = e_j^h + e_h^j
    std::vector<CMatrix> off_diag_antisym;  // beta_j^h = -i (e_j^h - e_h^j)
    std::vector<CMatrix> diagonal;          // eta_m
    std::vector<std::pair<int, int>> pairs; // (h, j), 1-based, h < j; shared by both off-diagonal families
    SpinOperators spin;

    std::size_t size() const {
        return off_diag_sym.size() + off_diag_antisym.size() + diagonal.size();
    }
    // Symmetric block, antisymmetric block, diagonal block.
    std::vector<CMatrix> all() const;
    std::vector<std::string> labels() const;
};

GeneratorSet build_generators(const RepresentationSpec& rep);

struct CasimirReport {
    CMatrix matrix;
    double eigenvalue = 0.0;
    bool is_scalar = false;
    double expected = 0.0;
};

CasimirReport casimir(const SpinOperators& spin, double spin_value, double hbar);
CasimirReport casimir(const GeneratorSet& gen);

/// Dense rank-3 tensor f_abc with [T_a, T_b] = 2i sum_c f_abc T_c.
class StructureConstants {
public:
    explicit StructureConstants(std::size_t dim) : dim_(dim), data_(dim * dim * dim, 0.0) {}

    std::size_t dim() const { return dim_; }
    double& operator()(std::size_t a, std::size_t b, std::size_t c) {
        return data_[(a * dim_ + b) * dim_ + c];
    }
    double operator()(std::size_t a, std::size_t b, std::size_t c) const {
        return data_[(a * dim_ + b) * dim_ + c];
    }
    double max_abs_difference(const StructureConstants& other) const;
    // Largest violation of antisymmetry under any index transposition.
    double antisymmetry_residue() const;

private:
    std::size_t dim_;
    std::vector<double> data_;
};

// f_abc = tr([T_a, T_b] T_c) / (4i)
StructureConstants structure_constants(const GeneratorSet& gen);

// Same tensor obtained by expanding each commutator in the generator basis
// with a least-squares solve; independent of the trace orthogonality.
StructureConstants structure_constants_by_expansion(const GeneratorSet& gen);

}  // namespace sucs
