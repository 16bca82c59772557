#pragma once

#include "warmhmc/core/phase_point.hpp"
#include "warmhmc/potentials/potential.hpp"

namespace warmhmc {

// H(x, p) = V(x) + ||p||^2 / 2.
inline double hamiltonian(const PhasePoint& point, const PotentialOracle& oracle) {
    if (point.dim() != oracle.dim())
        throw ConfigError("hamiltonian: point/oracle dimension mismatch");
    return oracle.evaluate(point.x) + 0.5 * point.p.squaredNorm();
}

}  // namespace warmhmc
