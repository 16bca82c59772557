#pragma once

#include "warmhmc/core/rng.hpp"
#include "warmhmc/integrators/exact_flow.hpp"
#include "warmhmc/integrators/splitting.hpp"

namespace warmhmc {

// One OHO step: O, Hamiltonian flow for time h (exact for quadratics,
// reference flow otherwise), O. Shares the noise protocol of the splitting
// schemes (leading O consumes xi1, trailing O consumes xi2), so an OHO chain
// driven by the same RngStream as an OBABO/OBABCO chain is the synchronous
// coupling used by the strong-error diagnostics.
inline PhasePoint oho_step_with(const PhasePoint& start, const PotentialOracle& oracle, double h,
                                double gamma, const Vector& xi1, const Vector& xi2,
                                long refine = 64) {
    const FrictionParams fp(gamma, h);
    PhasePoint mid(start.x, o_step_with(start.p, fp, xi1));
    PhasePoint flowed = hamiltonian_flow(mid, oracle, h, refine);
    flowed.p = o_step_with(flowed.p, fp, xi2);
    return flowed;
}

inline PhasePoint oho_step(const PhasePoint& start, const PotentialOracle& oracle, double h,
                           double gamma, RngStream& rng, long refine = 64) {
    const Vector xi1 = rng.normal_vector(start.dim());
    const Vector xi2 = rng.normal_vector(start.dim());
    return oho_step_with(start, oracle, h, gamma, xi1, xi2, refine);
}

}  // namespace warmhmc
