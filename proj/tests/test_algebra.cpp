#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "reference_sets.hpp"
#include "sucs/algebra.hpp"

using namespace sucs;

using namespace reference;

TEST_CASE("representation invariants") {
    CHECK_THROWS_AS(RepresentationSpec::fundamental(1), std::invalid_argument);
    CHECK_THROWS_AS(RepresentationSpec::fundamental(3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((RepresentationSpec{3, 1.0, 2}.validate()), std::invalid_argument);
    const auto r = RepresentationSpec::fundamental(4);
    CHECK(r.spin() == 1.5);
    CHECK(r.dim() == 4);
    const auto j = RepresentationSpec::spin_j(3);
    CHECK(j.spin() == 1.5);
    CHECK(j.dim() == 4);
    CHECK(j.params() == 1);
}

TEST_CASE("n = 2 reproduces the Pauli matrices exactly") {
    const auto gen = build_generators(RepresentationSpec::fundamental(2));
    REQUIRE(gen.off_diag_sym.size() == 1);
    REQUIRE(gen.off_diag_antisym.size() == 1);
    REQUIRE(gen.diagonal.size() == 1);
    CHECK(max_abs(gen.off_diag_sym[0] - oracle::pauli(1)) == 0.0);
    CHECK(max_abs(gen.off_diag_antisym[0] - oracle::pauli(2)) == 0.0);
    CHECK(max_abs(gen.diagonal[0] - oracle::pauli(3)) == 0.0);
}

TEST_CASE("basis unit puts the one in row h, column j") {
    const CMatrix e = basis_unit(3, 1, 3);
    CHECK(e(0, 2) == cplx(1.0));
    CHECK(e.cwiseAbs().sum() == 1.0);
    CHECK_THROWS_AS(basis_unit(3, 0, 1), std::out_of_range);
}

TEST_CASE("SU(3) and SU(4) sets span the listed matrices") {
    const auto g3 = build_generators(RepresentationSpec::fundamental(3)).all();
    const auto p3 = listed_su3();
    CHECK(span_residual(g3, p3) < 1e-10);
    CHECK(span_residual(p3, g3) < 1e-10);

    const auto g4 = build_generators(RepresentationSpec::fundamental(4)).all();
    const auto p4 = listed_su4();
    CHECK(span_residual(g4, p4) < 1e-10);
    CHECK(span_residual(p4, g4) < 1e-10);
}

TEST_CASE("diag(1, 1, 2) is not traceless and cannot be a generator") {
    CMatrix candidate = CMatrix::Zero(3, 3);
    candidate.diagonal() << 1, 1, 2;
    CHECK(std::abs(candidate.trace()) > 1.0);
}

TEST_CASE("generator count, hermiticity, tracelessness, orthonormality for n = 2..6") {
    for (int n = 2; n <= 6; ++n) {
        CAPTURE(n);
        const auto gen = build_generators(RepresentationSpec::fundamental(n));
        const auto t = gen.all();
        CHECK(t.size() == static_cast<std::size_t>(n * n - 1));
        CHECK(gen.labels().size() == t.size());
        for (std::size_t a = 0; a < t.size(); ++a) {
            CHECK(hermiticity_residue(t[a]) < 1e-12);
            CHECK(std::abs(t[a].trace()) < 1e-12);
            for (std::size_t b = 0; b < t.size(); ++b)
                CHECK(std::abs((t[a] * t[b]).trace() - cplx(a == b ? 2.0 : 0.0)) < 1e-12);
        }
    }
}

TEST_CASE("spin commutation relations carry hbar") {
    for (double hbar : {1.0, 0.7}) {
        for (int n = 2; n <= 6; ++n) {
            const auto s = build_generators(RepresentationSpec::fundamental(n, hbar)).spin;
            CHECK(max_abs(commutator(s.s_z, s.s_plus) - hbar * s.s_plus) < 1e-12);
            CHECK(max_abs(commutator(s.s_z, s.s_minus) + hbar * s.s_minus) < 1e-12);
            CHECK(max_abs(commutator(s.s_plus, s.s_minus) - 2.0 * hbar * s.s_z) < 1e-12);
            CHECK(s.s_z(0, 0).real() == doctest::Approx(-hbar * 0.5 * (n - 1)));
        }
    }
}

TEST_CASE("commutator examples") {
    CHECK(max_abs(commutator(oracle::pauli(1), oracle::pauli(2)) - 2.0 * I_UNIT * oracle::pauli(3)) < 1e-15);
    const CMatrix a = oracle::pauli(1) + 0.3 * oracle::pauli(3);
    CHECK(max_abs(commutator(a, a)) == 0.0);
    const auto s = build_generators(RepresentationSpec::fundamental(3)).spin;
    // direct 3x3 multiplication: S+ has sqrt(2) on both sub-diagonal entries
    CMatrix sp = CMatrix::Zero(3, 3);
    sp(1, 0) = std::sqrt(2.0);
    sp(2, 1) = std::sqrt(2.0);
    CMatrix sz = CMatrix::Zero(3, 3);
    sz.diagonal() << -1, 0, 1;
    CHECK(max_abs(s.s_plus - sp) < 1e-15);
    CHECK(max_abs(commutator(s.s_plus, s.s_minus) - 2.0 * sz) < 1e-12);
    CHECK_THROWS_AS(commutator(CMatrix::Zero(2, 2), CMatrix::Zero(3, 3)), std::invalid_argument);
}

TEST_CASE("Casimir is scalar with S(S+1) hbar^2") {
    const double expected[] = {0.75, 2.0, 3.75, 6.0, 8.75};
    for (int n = 2; n <= 6; ++n) {
        const auto c = casimir(build_generators(RepresentationSpec::fundamental(n)));
        CHECK(c.is_scalar);
        CHECK(std::abs(c.eigenvalue - expected[n - 2]) < 1e-10);
        CHECK(std::abs(c.expected - expected[n - 2]) < 1e-15);
    }
    const auto c = casimir(build_generators(RepresentationSpec::fundamental(3, 2.0)));
    CHECK(std::abs(c.eigenvalue - 8.0) < 1e-10);
    // spin-J ladder operators
    const auto s = spin_operators(5, 1.0);
    CHECK(std::abs(casimir(s, 2.5, 1.0).eigenvalue - 8.75) < 1e-10);
}

TEST_CASE("su(2) structure constants are the Levi-Civita symbol") {
    const auto f = structure_constants(build_generators(RepresentationSpec::fundamental(2)));
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) CHECK(std::abs(f(a, b, c) - oracle::levi_civita(a, b, c)) < 1e-14);
    for (int a = 0; a < 3; ++a)
        for (int c = 0; c < 3; ++c) CHECK(f(a, a, c) == 0.0);
}

TEST_CASE("trace-formula and expansion routes agree and are totally antisymmetric") {
    for (int n = 2; n <= 5; ++n) {
        CAPTURE(n);
        const auto gen = build_generators(RepresentationSpec::fundamental(n));
        const auto f = structure_constants(gen);
        const auto g = structure_constants_by_expansion(gen);
        CHECK(f.max_abs_difference(g) < 1e-10);
        CHECK(f.antisymmetry_residue() < 1e-10);
    }
    // su(3): standard Gell-Mann ordering gives f_123 = 1; here lambda_1,2,3 are
    // Theta_12, Beta_12 and Eta_1 = indices 0, 3, 6.
    const auto f3 = structure_constants(build_generators(RepresentationSpec::fundamental(3)));
    CHECK(std::abs(f3(0, 3, 6) - 1.0) < 1e-12);
}

TEST_CASE("Jacobi identity on random generator triples") {
    std::mt19937_64 rng(7);
    for (int n = 2; n <= 6; ++n) {
        const auto t = build_generators(RepresentationSpec::fundamental(n)).all();
        std::uniform_int_distribution<std::size_t> pick(0, t.size() - 1);
        for (int trial = 0; trial < 100; ++trial) {
            const auto& a = t[pick(rng)];
            const auto& b = t[pick(rng)];
            const auto& c = t[pick(rng)];
            const CMatrix j = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                              commutator(c, commutator(a, b));
            CHECK(max_abs(j) < 1e-10);
        }
    }
}
