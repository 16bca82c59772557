#pragma once

#include "warmhmc/core/rng.hpp"
#include "warmhmc/integrators/leapfrog.hpp"
#include "warmhmc/integrators/params.hpp"
#include "warmhmc/potentials/potential.hpp"

namespace warmhmc {

// Partial momentum refreshment (the O step).
inline Vector o_step_with(const Vector& p, const FrictionParams& fp, const Vector& xi) {
    if (fp.noise_scale == 0.0) return fp.decay * p;
    return fp.decay * p + fp.noise_scale * xi;
}

inline Vector o_step(const Vector& p, const FrictionParams& fp, RngStream& rng) {
    return o_step_with(p, fp, rng.normal_vector(p.size()));
}

struct SplitStepResult {
    PhasePoint point;
    bool ok = true;
    long blowup_step = 0;
};

// One OBABO step: O, half kick, drift, half kick, O. Two gradient queries.
// Noise protocol: the leading O consumes xi1, the trailing O consumes xi2
// (the shared draw order used by every scheme here, so synchronous couplings
// across schemes reuse one stream).
inline SplitStepResult obabo_step_with(const PhasePoint& start, const PotentialOracle& oracle,
                                       double h, double gamma, const Vector& xi1,
                                       const Vector& xi2) {
    const FrictionParams fp(gamma, h);
    SplitStepResult out;
    Vector p = o_step_with(start.p, fp, xi1);
    Vector g = oracle.gradient(start.x);
    p.noalias() -= (h / 2.0) * g;                 // B
    Vector x = start.x + h * p;                   // A
    if (!detail::within_blowup_threshold(x)) {
        out.ok = false;
        return out;
    }
    oracle.gradient(x, g);
    p.noalias() -= (h / 2.0) * g;                 // B
    out.point = PhasePoint(std::move(x), o_step_with(p, fp, xi2));
    return out;
}

// One OBABCO step: O, B, A, B, then the corrective position step
//   X <- X^O + (h/3) (P^{OBAB} + 2 P^{OB}) + (h^2/6) grad V(X^O),
// then O on the momentum. The correction reuses the leading gradient, so the
// cost stays at two gradient queries per step.
inline SplitStepResult obabco_step_with(const PhasePoint& start, const PotentialOracle& oracle,
                                        double h, double gamma, const Vector& xi1,
                                        const Vector& xi2) {
    const FrictionParams fp(gamma, h);
    SplitStepResult out;
    Vector p0 = o_step_with(start.p, fp, xi1);    // O (position unchanged)
    Vector g0 = oracle.gradient(start.x);
    Vector p_ob = p0 - (h / 2.0) * g0;            // B
    Vector x_oba = start.x + h * p_ob;            // A
    if (!detail::within_blowup_threshold(x_oba)) {
        out.ok = false;
        return out;
    }
    Vector g1 = oracle.gradient(x_oba);
    Vector p_obab = p_ob - (h / 2.0) * g1;        // B
    Vector x_c = start.x + (h / 3.0) * (p_obab + 2.0 * p_ob) + (h * h / 6.0) * g0;  // C
    if (!detail::within_blowup_threshold(x_c)) {
        out.ok = false;
        return out;
    }
    out.point = PhasePoint(std::move(x_c), o_step_with(p_obab, fp, xi2));
    return out;
}

inline SplitStepResult obabo_step(const PhasePoint& start, const PotentialOracle& oracle, double h,
                                  double gamma, RngStream& rng) {
    const Vector xi1 = rng.normal_vector(start.dim());
    const Vector xi2 = rng.normal_vector(start.dim());
    return obabo_step_with(start, oracle, h, gamma, xi1, xi2);
}

inline SplitStepResult obabco_step(const PhasePoint& start, const PotentialOracle& oracle, double h,
                                   double gamma, RngStream& rng) {
    const Vector xi1 = rng.normal_vector(start.dim());
    const Vector xi2 = rng.normal_vector(start.dim());
    return obabco_step_with(start, oracle, h, gamma, xi1, xi2);
}

}  // namespace warmhmc
