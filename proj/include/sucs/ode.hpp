#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>

#include "sucs/linalg.hpp"

namespace sucs {

class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double time)
        : std::runtime_error(what + " at t = " + std::to_string(time)), time_(time) {}
    double time() const { return time_; }

private:
    double time_;
};

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-10;
    double initial_step = 0.0;  // 0 = automatic
    double max_step = 0.0;      // 0 = unbounded
    std::size_t max_steps = 50'000'000;
};

struct OdeStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evaluations = 0;
};

using OdeRhs = std::function<void(double t, const RVector& y, RVector& dydt)>;

// Called after every accepted step. `at_stop` is true when t equals one of
// the requested stop times (or the final time). Returning true signals that
// y was modified in place (e.g. a change of coordinates).
using OdeObserver = std::function<bool(double t, RVector& y, bool at_stop)>;

/// Adaptive Dormand-Prince 5(4) integration from t0 to t1 (t1 >= t0).
/// Steps are clipped so that every time in `stops` (ascending, inside
/// (t0, t1]) is hit exactly. Throws IntegrationError on step-size underflow
/// or a non-finite state.
OdeStats integrate_dopri5(const OdeRhs& rhs, double t0, double t1, RVector& y, const OdeOptions& options,
                          std::span<const double> stops, const OdeObserver& observer);

}  // namespace sucs
