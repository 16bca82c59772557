#pragma once

#include "warmhmc/core/phase_point.hpp"
#include "warmhmc/integrators/params.hpp"
#include "warmhmc/potentials/potential.hpp"

namespace warmhmc {

// Outcome of a deterministic flow. On blowup (some coordinate exceeding the
// threshold) ok is false and blowup_step carries the offending step index;
// point/grad_end are then unspecified. grad_end is the gradient at the final
// position, reusable as the next segment's leading gradient.
struct FlowResult {
    PhasePoint point;
    Vector grad_end;
    bool ok = true;
    long blowup_step = -1;
};

namespace detail {

inline bool within_blowup_threshold(const Vector& v) {
    return v.cwiseAbs().maxCoeff() <= blowup_threshold && v.allFinite();
}

}  // namespace detail

// Leapfrog integrator: K iterations of the half-kick / drift / half-kick
// update. Consumes exactly K+1 gradient queries standalone (the boundary
// gradient is shared between consecutive iterations), or K when the caller
// supplies the gradient at the starting position.
inline FlowResult leapfrog_flow(const PhasePoint& start, const PotentialOracle& oracle,
                                const LeapfrogParams& params, const Vector* grad_start = nullptr) {
    FlowResult out;
    out.point = start;
    Vector& x = out.point.x;
    Vector& p = out.point.p;
    Vector& g = out.grad_end;
    if (grad_start != nullptr)
        g = *grad_start;
    else
        oracle.gradient(x, g);
    const double h = params.h;
    for (long k = 0; k < params.K; ++k) {
        p.noalias() -= (h / 2.0) * g;
        x.noalias() += h * p;
        if (!detail::within_blowup_threshold(x)) {
            out.ok = false;
            out.blowup_step = k;
            return out;
        }
        oracle.gradient(x, g);
        p.noalias() -= (h / 2.0) * g;
    }
    if (!detail::within_blowup_threshold(p)) {
        out.ok = false;
        out.blowup_step = params.K - 1;
    }
    return out;
}

// Throwing convenience wrapper.
inline PhasePoint leapfrog_flow_or_throw(const PhasePoint& start, const PotentialOracle& oracle,
                                         const LeapfrogParams& params) {
    FlowResult r = leapfrog_flow(start, oracle, params);
    if (!r.ok) throw BlowupError(r.blowup_step);
    return r.point;
}

}  // namespace warmhmc
