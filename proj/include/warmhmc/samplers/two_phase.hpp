#pragma once

// The headline pipeline: an unadjusted OBABCO warm-start phase from the
// default Gaussian initialization, followed by lazy Metropolized HMC from the
// warm endpoint.  Phase-1 momentum is discarded at the handoff; the
// Metropolized phase refreshes momentum every proposal anyway.

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "warmhmc/core/errors.hpp"
#include "warmhmc/core/phase_point.hpp"
#include "warmhmc/core/rng.hpp"
#include "warmhmc/integrators/params.hpp"
#include "warmhmc/potentials/potential.hpp"
#include "warmhmc/samplers/mhmc.hpp"
#include "warmhmc/samplers/records.hpp"
#include "warmhmc/samplers/schedule.hpp"
#include "warmhmc/samplers/unadjusted.hpp"

namespace warmhmc {

struct TwoPhaseResult {
    // Final position; momentum is not part of the returned sample and is zero.
    PhasePoint sample;
    // Phase-1 rows (iterations 0..N₁) followed by phase-2 rows (N₁+1..N₁+N₂),
    // with cumulative gradient-query counts across both phases.
    std::vector<ChainRecord> trajectory;
    std::uint64_t warm_queries = 0;
    std::uint64_t mhmc_queries = 0;
    double mhmc_acceptance = std::numeric_limits<double>::quiet_NaN();

    std::uint64_t total_queries() const { return warm_queries + mhmc_queries; }
};

inline void validate_plan(const TwoPhasePlan& plan) {
    if (!(plan.warm.h > 0.0) || plan.warm.steps < 0 || !(plan.warm.gamma >= 0.0))
        throw ConfigError("two_phase_sample: invalid warm-phase plan");
    if (!(plan.mhmc.h > 0.0) || plan.mhmc.leapfrog_steps < 1 || plan.mhmc.iterations < 0)
        throw ConfigError("two_phase_sample: invalid Metropolized-phase plan");
}

inline TwoPhaseResult two_phase_sample(const TwoPhasePlan& plan, PotentialOracle& oracle,
                                       RngStream& rng, long record_every = 1) {
    validate_plan(plan);
    const RegularityMeta& meta = oracle.meta();
    meta.validate();
    if (!(meta.beta > 0.0))
        throw ConfigError("two_phase_sample: oracle must declare beta > 0 for the default init");
    const long d = oracle.dim();

    // Initialization N(0, β⁻¹ I) ⊗ N(0, I).
    PhasePoint start(rng.normal_vector(d) / std::sqrt(meta.beta), rng.normal_vector(d));

    UnadjustedOptions warm_opts;
    warm_opts.scheme = Scheme::obabco;
    warm_opts.h = plan.warm.h;
    warm_opts.gamma = plan.warm.gamma;
    warm_opts.steps = plan.warm.steps;
    warm_opts.record_every = record_every;
    UnadjustedResult warm = run_unadjusted(std::move(start), oracle, warm_opts, rng);

    TwoPhaseResult out;
    out.warm_queries = warm.grad_queries;
    out.trajectory = std::move(warm.trajectory);

    MhmcParams mparams{LeapfrogParams(plan.mhmc.h, plan.mhmc.leapfrog_steps), true, false};
    MhmcChain chain(oracle, mparams, std::move(warm.point.x), rng);
    const long offset_iter = plan.warm.steps;
    const long offset_queries = static_cast<long>(out.warm_queries);
    for (long k = 1; k <= plan.mhmc.iterations; ++k) {
        ChainRecord rec = chain.step();
        if (k == plan.mhmc.iterations || (record_every > 0 && k % record_every == 0)) {
            rec.iteration += offset_iter;
            rec.grad_queries += offset_queries;
            out.trajectory.push_back(rec);
        }
    }
    out.mhmc_queries = chain.queries_used();
    if (plan.mhmc.iterations > 0)
        out.mhmc_acceptance = static_cast<double>(chain.accept_count()) /
                              static_cast<double>(plan.mhmc.iterations);

    out.sample = PhasePoint(chain.position(), Vector::Zero(d));
    return out;
}

}  // namespace warmhmc
