#include "sucs/ode.hpp"

#include <algorithm>
#include <cmath>

namespace sucs {

namespace {

// Dormand-Prince tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

// Max-norm of the scaled error estimate; every component must meet the tolerance.
double error_norm(const RVector& err, const RVector& y0, const RVector& y1, const OdeOptions& o) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
        const double sc = o.atol + o.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        worst = std::max(worst, std::abs(err[i]) / sc);
    }
    return worst;
}

// Starting step from the size of y and its first two derivatives.
double initial_step(const OdeRhs& rhs, double t0, const RVector& y, const RVector& f0, const OdeOptions& o,
                    std::size_t& evals) {
    if (y.size() == 0) return 1.0;
    RVector sc(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) sc[i] = o.atol + o.rtol * std::abs(y[i]);
    const double d0 = std::sqrt((y.cwiseQuotient(sc)).squaredNorm() / y.size());
    const double d1 = std::sqrt((f0.cwiseQuotient(sc)).squaredNorm() / y.size());
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    RVector y1 = y + h0 * f0, f1(y.size());
    rhs(t0 + h0, y1, f1);
    ++evals;
    const double d2 = std::sqrt(((f1 - f0).cwiseQuotient(sc)).squaredNorm() / y.size()) / h0;
    const double h1 = std::max(d1, d2) <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                                 : std::pow(0.01 / std::max(d1, d2), 1.0 / 5.0);
    return std::min(100 * h0, h1);
}

}  // namespace

OdeStats integrate_dopri5(const OdeRhs& rhs, double t0, double t1, RVector& y, const OdeOptions& options,
                          std::span<const double> stops, const OdeObserver& observer) {
    if (!(t1 >= t0) || !std::isfinite(t0) || !std::isfinite(t1))
        throw std::invalid_argument("integrate_dopri5: need finite t1 >= t0");
    OdeStats stats;
    if (t1 == t0) return stats;

    const Eigen::Index dim = y.size();
    RVector k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim), ytmp(dim), ynew(dim), err(dim);
    rhs(t0, y, k1);
    ++stats.rhs_evaluations;

    double h = options.initial_step > 0 ? options.initial_step
                                        : initial_step(rhs, t0, y, k1, options, stats.rhs_evaluations);
    if (options.max_step > 0) h = std::min(h, options.max_step);

    std::size_t next_stop = 0;
    while (next_stop < stops.size() && stops[next_stop] <= t0) ++next_stop;

    double t = t0;
    while (t < t1) {
        if (stats.accepted + stats.rejected >= options.max_steps)
            throw IntegrationError("integrate_dopri5: step budget exhausted", t);
        const double target = next_stop < stops.size() ? std::min(stops[next_stop], t1) : t1;
        bool hits_target = false;
        double step = h;
        if (t + step >= target) {
            step = target - t;
            hits_target = true;
        }
        const double min_step = 1e-14 * std::max(1.0, std::abs(t));
        if (step < min_step && !hits_target) throw IntegrationError("integrate_dopri5: step size underflow", t);

        ytmp = y + step * a21 * k1;
        rhs(t + c2 * step, ytmp, k2);
        ytmp = y + step * (a31 * k1 + a32 * k2);
        rhs(t + c3 * step, ytmp, k3);
        ytmp = y + step * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(t + c4 * step, ytmp, k4);
        ytmp = y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(t + c5 * step, ytmp, k5);
        ytmp = y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        rhs(t + step, ytmp, k6);
        ynew = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        rhs(t + step, ynew, k7);
        stats.rhs_evaluations += 6;

        err = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double en = error_norm(err, y, ynew, options);
        if (!std::isfinite(en) || !ynew.allFinite()) {
            if (step <= min_step) throw IntegrationError("integrate_dopri5: non-finite state", t);
            ++stats.rejected;
            h = 0.1 * step;
            continue;
        }
        const double factor = std::clamp(0.9 * std::pow(std::max(en, 1e-10), -0.2), 0.2, 5.0);
        if (en > 1.0) {
            ++stats.rejected;
            if (step <= min_step) throw IntegrationError("integrate_dopri5: step size underflow", t);
            h = step * std::max(0.2, factor);
            continue;
        }

        ++stats.accepted;
        t = hits_target ? target : t + step;
        y.swap(ynew);
        k1.swap(k7);
        // Keep the controller's proposal when the step was only clipped to a stop.
        if (!hits_target || factor * step < h) h = step * factor;
        if (options.max_step > 0) h = std::min(h, options.max_step);

        const bool at_stop = hits_target;
        if (hits_target && next_stop < stops.size() && target == stops[next_stop]) ++next_stop;
        if (observer && observer(t, y, at_stop)) {
            rhs(t, y, k1);
            ++stats.rhs_evaluations;
        }
    }
    return stats;
}

}  // namespace sucs
