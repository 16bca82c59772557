#pragma once

#include <cmath>

#include "warmhmc/core/phase_point.hpp"
#include "warmhmc/integrators/leapfrog.hpp"
#include "warmhmc/potentials/gaussian.hpp"

namespace warmhmc {

// Exact Hamiltonian flow of the diagonal quadratic target, per eigencoordinate
// the rotation with frequency w_i = sqrt(a_i):
//   x(t) =  x cos(w t) + (p / w) sin(w t)
//   p(t) = -x w sin(w t) + p cos(w t).
inline PhasePoint exact_hamiltonian_flow(const PhasePoint& start, const Vector& spectrum,
                                         double t) {
    if (spectrum.size() != start.dim())
        throw ConfigError("exact_hamiltonian_flow: spectrum/point dimension mismatch");
    PhasePoint out = start;
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
        const double w = std::sqrt(spectrum[i]);
        const double c = std::cos(w * t);
        const double s = std::sin(w * t);
        const double x = start.x[i];
        const double p = start.p[i];
        out.x[i] = x * c + (p / w) * s;
        out.p[i] = -x * w * s + p * c;
    }
    return out;
}

inline PhasePoint exact_hamiltonian_flow(const PhasePoint& start, const PotentialOracle& oracle,
                                         double t) {
    const GaussianPotential* g = as_gaussian(oracle);
    if (g == nullptr)
        throw DomainError("exact_hamiltonian_flow: supported only for diagonal quadratic targets");
    return exact_hamiltonian_flow(start, g->spectrum(), t);
}

// High-accuracy reference flow for general potentials: leapfrog with the inner
// step refined by Richardson doubling until one doubling moves the output by
// less than 1e-9 relative.
inline PhasePoint reference_hamiltonian_flow(const PhasePoint& start, const PotentialOracle& oracle,
                                             double t, long refine = 64) {
    if (refine < 64) throw ConfigError("reference_hamiltonian_flow: refine must be >= 64");
    if (t == 0.0) return start;
    constexpr double rel_tol = 1e-9;
    constexpr int max_doublings = 10;
    PhasePoint prev;
    for (int k = 0; k <= max_doublings; ++k) {
        const long n = refine << k;
        FlowResult r = leapfrog_flow(start, oracle, LeapfrogParams(t / static_cast<double>(n), n));
        if (!r.ok) throw BlowupError(r.blowup_step);
        if (k > 0) {
            const double scale = prev.x.norm() + prev.p.norm() + 1.0;
            const double diff = (r.point.x - prev.x).norm() + (r.point.p - prev.p).norm();
            if (diff < rel_tol * scale) return r.point;
        }
        prev = std::move(r.point);
    }
    throw ConvergenceError("reference_hamiltonian_flow: Richardson refinement did not converge");
}

// Dispatch: exact rotation for quadratic targets, reference flow otherwise.
inline PhasePoint hamiltonian_flow(const PhasePoint& start, const PotentialOracle& oracle, double t,
                                   long refine = 64) {
    if (const GaussianPotential* g = as_gaussian(oracle))
        return exact_hamiltonian_flow(start, g->spectrum(), t);
    return reference_hamiltonian_flow(start, oracle, t, refine);
}

}  // namespace warmhmc
