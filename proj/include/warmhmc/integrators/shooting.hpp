#pragma once

#include <cmath>

#include "warmhmc/integrators/exact_flow.hpp"

namespace warmhmc {

// Shooting map: the momentum p such that the time-h Hamiltonian flow from
// (x_start, p) lands its position at x_target. Newton iteration from the
// free-flight initializer (x_target - x_start)/h with the constant Jacobian
// approximation h*I, which contracts because the position-in-momentum
// Jacobian of the flow deviates from h*I by O(beta h^3). Requires
// h sqrt(beta) < 0.1 and at most 50 iterations.
inline Vector shooting_momentum(const Vector& x_start, const Vector& x_target,
                                const PotentialOracle& oracle, double h, double tol,
                                long refine = 256) {
    if (x_start.size() != x_target.size() || x_start.size() != oracle.dim())
        throw ConfigError("shooting_momentum: dimension mismatch");
    if (!(tol > 0.0)) throw ConfigError("shooting_momentum: tol must be > 0");
    if (!(h > 0.0) || h * std::sqrt(oracle.meta().beta) >= 0.1)
        throw ConfigError("shooting_momentum: requires h * sqrt(beta) < 0.1");
    Vector p = (x_target - x_start) / h;
    for (int it = 0; it < 50; ++it) {
        const PhasePoint end = hamiltonian_flow(PhasePoint(x_start, p), oracle, h, refine);
        const Vector residual = end.x - x_target;
        if (residual.norm() <= tol) return p;
        p.noalias() -= residual / h;
    }
    throw ConvergenceError("shooting_momentum: Newton did not reach tolerance in 50 iterations");
}

}  // namespace warmhmc
