#include "sucs/coherent.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "sucs/parallel.hpp"

namespace sucs {

namespace {

void check_params_length(const CVector& v, const RepresentationSpec& rep, const char* what) {
    if (v.size() != rep.params())
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(rep.params()) +
                                    " complex parameters, got " + std::to_string(v.size()));
}

// sqrt(binomial(two_j, k)), computed in log space
double sqrt_binomial(int two_j, int k) {
    return std::exp(0.5 * (std::lgamma(two_j + 1.0) - std::lgamma(k + 1.0) - std::lgamma(two_j - k + 1.0)));
}

}  // namespace

CVector psi_from_xi(const CoherentParams& params) {
    params.rep.validate();
    check_params_length(params.xi, params.rep, "psi_from_xi");
    if (!params.xi.allFinite()) throw std::invalid_argument("psi_from_xi: non-finite parameter");
    const double r = params.xi.norm();
    if (params.rep.spin_mode() && r > std::numbers::pi / 2 + 1e-12)
        throw std::domain_error("psi_from_xi: |alpha| must not exceed pi/2");
    if (r == 0.0) return CVector::Zero(params.xi.size());
    if (std::abs(std::cos(r)) < 1e-12)
        throw std::domain_error("psi_from_xi: |xi| = pi/2 maps to the point outside the chart");
    return params.xi * (std::tan(r) / r);
}

CoherentState state_from_psi(const CVector& psi, const RepresentationSpec& rep) {
    rep.validate();
    check_params_length(psi, rep, "state_from_psi");
    if (!psi.allFinite()) throw std::invalid_argument("state_from_psi: non-finite coordinate");
    CoherentState s;
    s.psi = psi;
    s.rep = rep;
    s.vector.resize(rep.dim());
    if (rep.spin_mode()) {
        // (1+|xi|^2)^{-J} exp(xi S^+)|J,-J>: amplitude xi^k sqrt(C(2J, k)) on |-J+k>
        cplx power = 1.0;
        for (int k = 0; k <= rep.two_j; ++k) {
            s.vector[k] = power * sqrt_binomial(rep.two_j, k);
            power *= psi[0];
        }
    } else {
        s.vector[0] = 1.0;
        s.vector.tail(rep.params()) = psi;
    }
    s.vector.normalize();
    return s;
}

CoherentState state_from_exponential(const CoherentParams& params) {
    const CVector psi = psi_from_xi(params);  // domain checks
    const auto& rep = params.rep;
    const int d = rep.dim();
    CMatrix gen = CMatrix::Zero(d, d);
    if (rep.spin_mode()) {
        const auto s = spin_operators(rep.two_j, 1.0);
        gen = params.xi[0] * s.s_plus - std::conj(params.xi[0]) * s.s_minus;
    } else {
        for (int i = 1; i < d; ++i) {
            gen(i, 0) += params.xi[i - 1];
            gen(0, i) -= std::conj(params.xi[i - 1]);
        }
    }
    CVector ref = CVector::Zero(d);
    ref[0] = 1.0;
    CoherentState s;
    s.rep = rep;
    s.vector = expm(gen) * ref;
    s.psi = psi;
    return s;
}

CVector psi_from_vector(const CVector& vector, const RepresentationSpec& rep) {
    rep.validate();
    if (vector.size() != rep.dim()) throw std::invalid_argument("psi_from_vector: dimension mismatch");
    const double scale = vector.norm();
    if (!(scale > 0.0) || std::abs(vector[0]) <= 1e-15 * scale)
        throw std::domain_error("psi_from_vector: reference amplitude vanishes");
    if (rep.spin_mode()) {
        CVector psi(1);
        psi[0] = vector[1] / (vector[0] * std::sqrt(static_cast<double>(rep.two_j)));
        return psi;
    }
    return vector.tail(rep.params()) / vector[0];
}

cplx overlap(const CoherentState& a, const CoherentState& b) {
    if (!(a.rep == b.rep)) throw std::invalid_argument("overlap: representation mismatch");
    return a.vector.dot(b.vector);
}

double fidelity(const CVector& a, const CVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("fidelity: dimension mismatch");
    return std::norm(a.dot(b));
}

double fidelity(const CoherentState& a, const CoherentState& b) { return std::norm(overlap(a, b)); }

double expectation(const CoherentState& state, const CMatrix& h) {
    if (h.rows() != state.dim() || h.cols() != state.dim())
        throw std::invalid_argument("expectation: operator dimension mismatch");
    if (hermiticity_residue(h) > 1e-10) throw std::invalid_argument("expectation: operator is not hermitian");
    const cplx value = state.vector.dot(h * state.vector);
    const double scale = std::max(1.0, max_abs(h) * state.dim());
    if (std::abs(value.imag()) > 1e-12 * scale)
        throw std::logic_error("expectation: imaginary residue on a hermitian operator");
    return value.real();
}

double expectation(const CoherentState& state, const HamiltonianSpec& h) {
    if (!(h.rep() == state.rep)) throw std::invalid_argument("expectation: representation mismatch");
    return expectation(state, h.matrix());
}

std::map<std::string, double> multipole_expectations(const CoherentState& state) {
    std::map<std::string, double> out;
    const auto gens = lie_generators(state.rep);
    const auto labels = lie_generator_labels(state.rep);
    for (std::size_t k = 0; k < gens.size(); ++k) out[labels[k]] = expectation(state, gens[k]);
    const auto s = spin_operators(state.rep.two_s(), state.rep.hbar);
    out["Sx"] = expectation(state, s.s_x());
    out["Sy"] = expectation(state, s.s_y());
    out["Sz"] = expectation(state, s.s_z);
    out["Qzz"] = expectation(state, s.s_z * s.s_z);
    out["Q+-"] = expectation(state, s.s_plus * s.s_minus);
    out["Q-+"] = expectation(state, s.s_minus * s.s_plus);
    return out;
}

Measure::Measure(const RepresentationSpec& rep) : rep_(rep), exponent_(rep.params() + 1.0) {
    rep_.validate();
}

double Measure::total_mass() const { return static_cast<double>(rep_.dim()); }

double Measure::density(const CVector& psi) const {
    check_params_length(psi, rep_, "Measure::density");
    const double m = rep_.params();
    // Normalisation with the radial integral of (1+|psi|^2)^{-(m+1)} = pi^m / m!;
    // the extra factor m+1 = n (or 2J+1) turns this into the resolution of identity.
    const double constant = total_mass() * std::tgamma(m + 1.0) / std::pow(std::numbers::pi, m);
    return constant * std::pow(1.0 + psi.squaredNorm(), -exponent_);
}

CVector Measure::sample(std::mt19937_64& rng) const {
    const int m = rep_.params();
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    // w = u/(1+u) with u = |psi|^2 has density ~ w^{m-1}, so w = U^{1/m}
    const double w = std::pow(uniform(rng), 1.0 / m);
    const double radius = std::sqrt(w / (1.0 - w));
    CVector dir(m);
    for (int i = 0; i < m; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        dir[i] = cplx(re, im);
    }
    return radius * dir.normalized();
}

ResolutionReport verify_resolution_of_identity(const RepresentationSpec& rep, std::uint64_t samples,
                                               std::uint64_t seed, std::size_t workers) {
    if (samples < 10000) throw std::invalid_argument("verify_resolution_of_identity: need at least 1e4 samples");
    const Measure measure(rep);
    const int d = rep.dim();
    const std::size_t chunks = (samples + kMonteCarloChunk - 1) / kMonteCarloChunk;

    struct Partial {
        CMatrix sum;
        Eigen::MatrixXd sq_re, sq_im;
    };
    std::vector<Partial> partials(chunks);
    parallel_chunks(chunks, workers, [&](std::size_t c) {
        std::mt19937_64 rng(substream_seed(seed, c));
        const std::uint64_t begin = c * kMonteCarloChunk;
        const std::uint64_t end = std::min<std::uint64_t>(samples, begin + kMonteCarloChunk);
        Partial p{CMatrix::Zero(d, d), Eigen::MatrixXd::Zero(d, d), Eigen::MatrixXd::Zero(d, d)};
        for (std::uint64_t k = begin; k < end; ++k) {
            const CVector v = state_from_psi(measure.sample(rng), rep).vector;
            const CMatrix f = measure.total_mass() * (v * v.adjoint());
            p.sum += f;
            p.sq_re += f.real().cwiseAbs2();
            p.sq_im += f.imag().cwiseAbs2();
        }
        partials[c] = std::move(p);
    });

    CMatrix sum = CMatrix::Zero(d, d);
    Eigen::MatrixXd sq_re = Eigen::MatrixXd::Zero(d, d), sq_im = Eigen::MatrixXd::Zero(d, d);
    for (const auto& p : partials) {
        sum += p.sum;
        sq_re += p.sq_re;
        sq_im += p.sq_im;
    }
    const double count = static_cast<double>(samples);
    ResolutionReport r;
    r.samples = samples;
    r.estimate = sum / count;
    const Eigen::MatrixXd var_re = (sq_re / count - r.estimate.real().cwiseAbs2()).cwiseMax(0.0);
    const Eigen::MatrixXd var_im = (sq_im / count - r.estimate.imag().cwiseAbs2()).cwiseMax(0.0);
    const Eigen::MatrixXd se_re = (var_re / count).cwiseSqrt();
    const Eigen::MatrixXd se_im = (var_im / count).cwiseSqrt();
    r.std_error = se_re.cast<cplx>() + I_UNIT * se_im.cast<cplx>();
    const CMatrix residual = r.estimate - CMatrix::Identity(d, d);
    r.residual_max = max_abs(residual);
    r.trace = r.estimate.trace().real();
    double worst = 0.0;
    auto score = [&](double res, double sigma) {
        if (sigma > 1e-14) return std::abs(res) / sigma;
        return std::abs(res) < 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
    };
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            worst = std::max(worst, score(residual(i, j).real(), se_re(i, j)));
            worst = std::max(worst, score(residual(i, j).imag(), se_im(i, j)));
        }
    r.max_z = worst;
    r.consistent_3sigma = worst <= 3.0;
    return r;
}

}  // namespace sucs
