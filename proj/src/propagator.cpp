#include "sucs/propagator.hpp"

#include <cmath>
#include <numbers>

#include "sucs/parallel.hpp"

namespace sucs {

std::string to_string(PropagatorMethod method) {
    return method == PropagatorMethod::SemigroupMC ? "SemigroupMC" : "ShortTimeProduct";
}

cplx exact_amplitude(const CoherentState& a, const CoherentState& b, const HamiltonianSpec& h, double t) {
    if (!(a.rep == b.rep)) throw std::invalid_argument("exact_amplitude: representation mismatch");
    return a.vector.dot(quantum_oracle_evolve(b, h, t));
}

PropagatorReport semigroup_mc_check(const CoherentState& a, const CoherentState& b, const HamiltonianSpec& h,
                                    double t, std::uint64_t samples, std::uint64_t seed, std::size_t workers) {
    const auto& rep = a.rep;
    if (!(rep == b.rep) || !(rep == h.rep())) throw std::invalid_argument("semigroup_mc_check: representation mismatch");
    if (rep.spin_mode() || rep.n < 2 || rep.n > 3)
        throw std::invalid_argument("semigroup_mc_check: supported for the fundamental of SU(2) and SU(3)");
    if (samples < 100000) throw std::invalid_argument("semigroup_mc_check: need at least 1e5 samples");

    const CMatrix half = unitary_from_hermitian(h.matrix() / rep.hbar, 0.5 * t);
    const CVector left = half.adjoint() * a.vector;  // <a|U(t/2)|psi> = left^dagger psi
    const CVector right = half * b.vector;            // <psi|U(t/2)|b> = psi^dagger right
    const Measure measure(rep);

    const std::size_t chunks = (samples + kMonteCarloChunk - 1) / kMonteCarloChunk;
    struct Partial {
        cplx sum{0.0};
        double sq = 0.0;
    };
    std::vector<Partial> partials(chunks);
    parallel_chunks(chunks, workers, [&](std::size_t c) {
        std::mt19937_64 rng(substream_seed(seed, c));
        const std::uint64_t begin = c * kMonteCarloChunk;
        const std::uint64_t end = std::min<std::uint64_t>(samples, begin + kMonteCarloChunk);
        Partial p;
        for (std::uint64_t k = begin; k < end; ++k) {
            const CVector v = state_from_psi(measure.sample(rng), rep).vector;
            const cplx f = measure.total_mass() * left.dot(v) * v.dot(right);
            p.sum += f;
            p.sq += std::norm(f);
        }
        partials[c] = p;
    });
    cplx sum{0.0};
    double sq = 0.0;
    for (const auto& p : partials) {
        sum += p.sum;
        sq += p.sq;
    }
    const double count = static_cast<double>(samples);
    PropagatorReport r;
    r.method = PropagatorMethod::SemigroupMC;
    r.samples = samples;
    r.exact = exact_amplitude(a, b, h, t);
    r.approx = sum / count;
    r.std_error = std::sqrt(std::max(0.0, sq / count - std::norm(r.approx)) / count);
    r.abs_error = std::abs(r.approx - r.exact);
    r.within_3sigma = r.abs_error <= 3.0 * r.std_error;
    return r;
}

cplx discrete_kinetic(const PathFunction& path, const RepresentationSpec& rep, double t, double epsilon) {
    const CVector here = state_from_psi(path(t), rep).vector;
    const CVector next = state_from_psi(path(t + epsilon), rep).vector;
    return I_UNIT * rep.hbar / epsilon * std::log(here.dot(next));
}

double continuum_kinetic(const PathFunction& path, const RepresentationSpec& rep, double t) {
    constexpr double h = 1e-3;
    const CVector velocity = (path(t - 2 * h) - 8.0 * path(t - h) + 8.0 * path(t + h) - path(t + 2 * h)) / (12 * h);
    return kinetic_term(state_from_psi(path(t), rep), velocity);
}

KineticCheckReport short_time_kinetic_check(const PathFunction& path, const RepresentationSpec& rep,
                                            const std::vector<double>& times, double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 1e-3)) throw std::invalid_argument("short_time_kinetic_check: need 0 < eps <= 1e-3");
    if (times.empty()) throw std::invalid_argument("short_time_kinetic_check: no sample times");
    KineticCheckReport r;
    r.epsilon = epsilon;
    for (double t : times) {
        const double continuum = continuum_kinetic(path, rep, t);
        r.deviation = std::max(r.deviation, std::abs(discrete_kinetic(path, rep, t, epsilon) - continuum));
        r.deviation_half = std::max(r.deviation_half, std::abs(discrete_kinetic(path, rep, t, 0.5 * epsilon) - continuum));
    }
    constexpr double negligible = 1e-12;
    if (r.deviation < negligible && r.deviation_half < negligible) {
        r.richardson_ratio = 2.0;
        r.first_order = true;
    } else {
        r.richardson_ratio = r.deviation / r.deviation_half;
        r.first_order = r.richardson_ratio >= 1.7 && r.richardson_ratio <= 2.3;
    }
    return r;
}

double action_along_path(const std::vector<CVector>& path, double dt, const HamiltonianSpec& h) {
    if (path.size() < 3) throw std::invalid_argument("action_along_path: need at least three samples");
    if (!(dt > 0.0)) throw std::invalid_argument("action_along_path: step must be positive");
    const auto& rep = h.rep();
    const std::size_t count = path.size();
    double action = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        CVector velocity;
        if (k == 0)
            velocity = (-3.0 * path[0] + 4.0 * path[1] - path[2]) / (2 * dt);
        else if (k + 1 == count)
            velocity = (3.0 * path[k] - 4.0 * path[k - 1] + path[k - 2]) / (2 * dt);
        else
            velocity = (path[k + 1] - path[k - 1]) / (2 * dt);
        const double weight = (k == 0 || k + 1 == count) ? 0.5 : 1.0;
        action += weight * dt * lagrangian(state_from_psi(path[k], rep), velocity, h);
    }
    return action;
}

PathFunction random_smooth_path(int m, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 0.5);
    auto draw = [&] {
        CVector v(m);
        for (int i = 0; i < m; ++i) v[i] = cplx(normal(rng), normal(rng));
        return v;
    };
    const CVector a = draw(), b = draw(), c = draw();
    const double w = 1.0 + std::abs(normal(rng));
    return [a, b, c, w](double t) -> CVector { return a + b * t + c * std::sin(w * t); };
}

StationarityReport action_stationarity(const CoherentState& start, const HamiltonianSpec& h, double t_end, int paths,
                                       double delta, std::uint64_t seed) {
    if (!(t_end > 0.0) || paths < 1 || !(delta > 0.0)) throw std::invalid_argument("action_stationarity: bad arguments");
    constexpr std::size_t steps = 4000;
    IntegrateOptions opt;
    opt.tolerance = 1e-12;
    opt.output_times = linspace(0.0, t_end, steps + 1);
    const Trajectory traj = integrate(start, h, {0.0, t_end}, opt);
    const double dt = t_end / static_cast<double>(steps);

    StationarityReport r;
    r.delta = delta;
    r.paths = paths;
    r.action = action_along_path(traj.psi_series, dt, h);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    const Eigen::Index m = start.psi.size();
    for (int p = 0; p < paths; ++p) {
        CVector dir(m);
        for (Eigen::Index i = 0; i < m; ++i) dir[i] = cplx(normal(rng), normal(rng));
        dir /= dir.norm();
        for (const double d : {delta, 0.5 * delta}) {
            std::vector<CVector> path = traj.psi_series;
            for (std::size_t k = 0; k < path.size(); ++k)
                path[k] += d * std::sin(std::numbers::pi * traj.times[k] / t_end) * dir;
            const double ds = std::abs(action_along_path(path, dt, h) - r.action);
            if (d == delta) {
                r.ratio_delta2 = std::max(r.ratio_delta2, ds / (d * d));
                r.first_order = std::max(r.first_order, ds / d);
            } else {
                r.ratio_delta2_half = std::max(r.ratio_delta2_half, ds / (d * d));
                r.first_order_half = std::max(r.first_order_half, ds / d);
            }
        }
    }
    r.halving_ratio = r.first_order > 0.0 ? r.first_order_half / r.first_order : 0.0;
    return r;
}

}  // namespace sucs
