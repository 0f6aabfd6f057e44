#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sucs/lattice.hpp"

using namespace sucs;

namespace {

CVector random_psi(int m, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 0.7);
    CVector psi(m);
    for (int i = 0; i < m; ++i) psi[i] = cplx(normal(rng), normal(rng));
    return psi;
}

ChainState random_state(int sites, int m, std::mt19937_64& rng) {
    ChainState s;
    for (int a = 0; a < sites; ++a) s.psi.push_back(random_psi(m, rng));
    return s;
}

ChainModel chain(int sites, int two_s, double j, double k, Boundary boundary = Boundary::Open) {
    ChainModel model;
    model.sites = sites;
    model.rep = RepresentationSpec::fundamental(two_s + 1);
    model.boundary = boundary;
    if (j != 0.0) model.add_nearest_neighbour(CouplingType::Bilinear, j);
    if (k != 0.0) model.add_nearest_neighbour(CouplingType::Biquadratic, k);
    return model;
}

// <S_a . S_b> and <(S_a . S_b)^2> on the Kronecker space built independently
double kron_bond_energy(const CVector& va, const CVector& vb, int two_s, double j, double k) {
    const auto ops = spin_operators(two_s, 1.0);
    const CMatrix s[3] = {ops.s_x(), ops.s_y(), ops.s_z};
    const int d = two_s + 1;
    CMatrix dot = CMatrix::Zero(d * d, d * d);
    for (const auto& m : s) {
        for (int r = 0; r < d * d; ++r)
            for (int c = 0; c < d * d; ++c) dot(r, c) += m(r / d, c / d) * m(r % d, c % d);
    }
    CVector v(d * d);
    for (int r = 0; r < d * d; ++r) v[r] = va[r / d] * vb[r % d];
    return (v.dot((j * dot + k * dot * dot) * v)).real();
}

}  // namespace

TEST_CASE("chain energy examples") {
    const auto m = chain(2, 1, 1.0, 0.0);
    CHECK(chain_energy(uniform_chain_state(2, CVector::Zero(1)), m) == doctest::Approx(0.25));

    ChainModel single;
    single.sites = 1;
    single.rep = RepresentationSpec::fundamental(2);
    single.field = {0.8 * spin_operators(1, 1.0).s_z};
    CHECK(chain_energy(uniform_chain_state(1, CVector::Zero(1)), single) == doctest::Approx(-0.4));

    std::mt19937_64 rng(1);
    const auto ring = chain(3, 2, 0.7, -0.3, Boundary::Periodic);
    CHECK(ring.bonds.size() == 6);
    auto s = random_state(3, 2, rng);
    const double e = chain_energy(s, ring);
    std::rotate(s.psi.begin(), s.psi.begin() + 1, s.psi.end());
    CHECK(chain_energy(s, ring) == doctest::Approx(e).epsilon(1e-13));
    CHECK(chain(2, 1, 1.0, 0.0, Boundary::Periodic).bonds.size() == 1);
}

TEST_CASE("chain energy equals the product-state expectation") {
    std::mt19937_64 rng(2);
    for (int two_s = 1; two_s <= 3; ++two_s) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto model = chain(2, two_s, 0.9, 0.4);
            const auto s = random_state(2, two_s, rng);
            const CVector a = state_from_psi(s.psi[0], model.rep).vector;
            const CVector b = state_from_psi(s.psi[1], model.rep).vector;
            CHECK(chain_energy(s, model) == doctest::Approx(kron_bond_energy(a, b, two_s, 0.9, 0.4)).epsilon(1e-12));
        }
    }
    for (int sites : {3, 4}) {
        auto model = chain(sites, 2, 1.1, 0.5, Boundary::Periodic);
        for (int a = 0; a < sites; ++a) model.field.push_back(random_hermitian(3, rng));
        const auto s = random_state(sites, 2, rng);
        const CVector v = product_vector(s, model);
        const auto big = chain_hamiltonian_matrix(model);
        CHECK(chain_energy(s, model) == doctest::Approx(v.dot(big * v).real()).epsilon(1e-12));
    }
}

TEST_CASE("effective field drives the same gradient as the chain energy") {
    std::mt19937_64 rng(4);
    auto model = chain(3, 2, 0.8, 0.6);
    model.field.assign(3, 0.3 * spin_operators(2, 1.0).s_z);
    const auto s = random_state(3, 2, rng);
    for (int a = 0; a < 3; ++a) {
        const CVector closed = grad_expectation(s.psi[a], model.rep, effective_field(s, model, a));
        const CVector fd = oracle::wirtinger_fd(
            [&](const CVector& p) {
                ChainState t = s;
                t.psi[a] = p;
                return chain_energy(t, model);
            },
            s.psi[a]);
        CHECK((closed - fd).norm() < 1e-6 * std::max(1.0, fd.norm()));
    }
}

TEST_CASE("validation") {
    ChainModel model = chain(2, 1, 1.0, 0.0);
    model.bonds.push_back({0, 2, CouplingType::Bilinear, 1.0});
    CHECK_THROWS_AS(model.validate(), std::invalid_argument);
    model = chain(2, 1, 1.0, 0.0);
    model.bonds[0].strength = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(model.validate(), std::invalid_argument);
    model = chain(2, 1, 1.0, 0.0);
    model.field = {CMatrix::Identity(2, 2)};
    CHECK_THROWS_AS(model.validate(), std::invalid_argument);
    CHECK_THROWS_AS(chain_energy(uniform_chain_state(3, CVector::Zero(1)), chain(2, 1, 1.0, 0.0)),
                    std::invalid_argument);
}

TEST_CASE("dynamical variables per site") {
    for (int two_s = 1; two_s <= 6; ++two_s) CHECK(variables_per_site(RepresentationSpec::fundamental(two_s + 1)) == 2 * two_s);
}

TEST_CASE("conservation along chain flows") {
    std::mt19937_64 rng(5);
    for (int two_s : {1, 2}) {
        for (int sites : {2, 4}) {
            const auto model = chain(sites, two_s, 1.0, two_s > 1 ? 0.4 : 0.0, Boundary::Periodic);
            const auto s = random_state(sites, two_s, rng);
            ChainEvolveOptions opt;
            opt.output_times = linspace(0.0, 100.0, 201);
            const auto traj = chain_evolve(s, model, {0.0, 100.0}, opt);
            CHECK(traj.energy_drift() < 1e-8);
            CHECK(traj.total_sz_drift() < 1e-8);
        }
    }
    // two spins, one near the north pole
    const auto model = chain(2, 1, 1.0, 0.0);
    ChainState s;
    s.psi = {CVector::Zero(1), CVector::Constant(1, cplx(50.0, 0.0))};
    const auto traj = chain_evolve(s, model, {0.0, 100.0});
    CHECK(traj.energy_drift() < 1e-8);
    CHECK(traj.total_sz_drift() < 1e-8);
}

TEST_CASE("ferromagnetic alignment is stationary") {
    const auto model = chain(4, 2, -1.0, 0.0, Boundary::Periodic);
    const auto s = uniform_chain_state(4, CVector::Constant(2, cplx(0.3, -0.4)));
    const auto traj = chain_evolve(s, model, {0.0, 20.0});
    for (const auto& dipoles : traj.dipole_series)
        for (int a = 0; a < 4; ++a)
            for (int c = 0; c < 3; ++c) CHECK(std::abs(dipoles[a][c] - traj.dipole_series[0][a][c]) < 1e-8);
}

TEST_CASE("decoupled sites follow single-site dynamics") {
    std::mt19937_64 rng(6);
    ChainModel model;
    model.sites = 3;
    model.rep = RepresentationSpec::fundamental(3);
    for (int a = 0; a < 3; ++a) model.field.push_back(random_hermitian(3, rng));
    const auto s = random_state(3, 2, rng);
    ChainEvolveOptions opt;
    opt.output_times = linspace(0.0, 10.0, 21);
    const auto traj = chain_evolve(s, model, {0.0, 10.0}, opt);
    for (int a = 0; a < 3; ++a) {
        IntegrateOptions single;
        single.output_times = opt.output_times;
        const auto one = integrate(state_from_psi(s.psi[a], model.rep),
                                   HamiltonianSpec::from_matrix(model.field[a], model.rep), {0.0, 10.0}, single);
        REQUIRE(one.size() == traj.size());
        for (std::size_t k = 0; k < one.size(); ++k)
            CHECK(fidelity(one.vectors[k], traj.vector_series[k][a]) > 1 - 1e-10);
    }
}

TEST_CASE("multipole basis") {
    for (int two_s = 1; two_s <= 4; ++two_s) {
        const auto rep = RepresentationSpec::fundamental(two_s + 1);
        const int n = rep.n;
        const auto basis = multipole_basis(rep);
        REQUIRE(basis.operators.size() == static_cast<std::size_t>(n * n - 1));
        for (std::size_t a = 0; a < basis.operators.size(); ++a) {
            CHECK(hermiticity_residue(basis.operators[a]) < 1e-12);
            CHECK(std::abs(basis.operators[a].trace()) < 1e-12);
            for (std::size_t b = 0; b < basis.operators.size(); ++b)
                CHECK(std::abs((basis.operators[a] * basis.operators[b]).trace() - (a == b ? 2.0 : 0.0)) < 1e-12);
        }
        const auto ops = spin_operators(two_s, 1.0);
        const double scale = std::sqrt(2.0 / ops.s_z.squaredNorm());
        CHECK(max_abs(basis.operators[2] - scale * ops.s_z) < 1e-12);
        CHECK(basis.labels[0] == "T1_x");
        CHECK(std::count(basis.ranks.begin(), basis.ranks.end(), 2) == (two_s >= 1 && n >= 3 ? 5 : 0));
    }
}

TEST_CASE("multipole series") {
    std::mt19937_64 rng(7);
    const auto half = chain(2, 1, 1.0, 0.0);
    auto series = multipole_series(chain_evolve(random_state(2, 1, rng), half, {0.0, 1.0}));
    CHECK(series.size() == 2);
    CHECK(series[0].higher.front().empty());

    const auto one = chain(2, 2, 1.0, 0.3);
    const auto traj = chain_evolve(random_state(2, 2, rng), one, {0.0, 5.0});
    series = multipole_series(traj);
    for (const auto& site : series) {
        CHECK(site.higher.front().size() == 5);
        for (std::size_t k = 0; k < site.dipole.size(); ++k) {
            double total = 0.0;
            for (double x : site.dipole[k]) total += x * x;
            for (double x : site.higher[k]) total += x * x;
            // pure state in dimension n: sum of squared components = 2(1 - 1/n)
            CHECK(std::abs(total - 2.0 * (1.0 - 1.0 / 3.0)) < 1e-10);
        }
    }
}

TEST_CASE("mean-field deviation from the exact chain is reported") {
    std::mt19937_64 rng(9);
    const auto model = chain(2, 1, 1.0, 0.0);
    ChainEvolveOptions opt;
    opt.output_times = linspace(0.0, 2.0, 11);
    const auto traj = chain_evolve(random_state(2, 1, rng), model, {0.0, 2.0}, opt);
    const double dev = chain_quantum_deviation(traj);
    CHECK(dev >= 0.0);
    CHECK(dev <= 1.0);
    // a product of aligned spins is an exact eigenstate of the isotropic chain
    const auto aligned = chain_evolve(uniform_chain_state(2, CVector::Constant(1, 0.6)), model, {0.0, 2.0}, opt);
    CHECK(chain_quantum_deviation(aligned) < 1e-9);
}
