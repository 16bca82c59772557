#pragma once

// Step-size / iteration planner for the two-phase sampler.  Converts the
// regularity metadata of a target into concrete phase-1 (unadjusted warm
// start) and phase-2 (Metropolized) parameters.  All order constants that the
// asymptotic theory leaves unspecified are exposed in ScheduleConstants so
// experiments can calibrate them explicitly; defaults are 1.

#include <cmath>
#include <cstdint>

#include "warmhmc/core/errors.hpp"
#include "warmhmc/core/regularity.hpp"

namespace warmhmc {

struct ScheduleConstants {
    double c_w = 1.0;    // multiplies the phase-1 step size
    double c_n1 = 1.0;   // multiplies the phase-1 step count
    double c_h2 = 1.0;   // multiplies the phase-2 step size
    double c_n2 = 1.0;   // multiplies the phase-2 outer iteration count
    double log_override = 0.0;  // > 0 replaces the phase-1 log factor

    void validate() const {
        if (!(c_w > 0.0 && c_n1 > 0.0 && c_h2 > 0.0 && c_n2 > 0.0))
            throw ConfigError("ScheduleConstants: multipliers must be > 0");
        if (!(log_override >= 0.0))
            throw ConfigError("ScheduleConstants: log_override must be >= 0");
    }
};

struct WarmPhasePlan {
    double h = 0.0;
    long steps = 0;
    double gamma = 0.0;
    double log_factor = 0.0;  // the L₁ actually used
};

struct MhmcPhasePlan {
    double h = 0.0;
    long leapfrog_steps = 0;  // K₂ per proposal
    long iterations = 0;      // N₂ proposals
    double log_factor = 0.0;  // the L₂ actually used
};

struct TwoPhasePlan {
    WarmPhasePlan warm;
    MhmcPhasePlan mhmc;

    // Gradient queries the full pipeline will consume: the warm phase costs 2
    // per step, each Metropolized proposal costs K₂ (the gradient at the
    // current position is cached across proposals), plus 1 to seed the cache.
    std::uint64_t predicted_queries() const {
        return 2 * static_cast<std::uint64_t>(warm.steps) +
               static_cast<std::uint64_t>(mhmc.iterations) *
                   static_cast<std::uint64_t>(mhmc.leapfrog_steps) +
               1;
    }
};

// q is the Rényi order the warm phase is planned against; eps the target
// accuracy of phase 2.  Requires a strongly convex target (alpha > 0);
// otherwise the target must first be wrapped in the proximal shift.
inline TwoPhasePlan plan_two_phase(const RegularityMeta& meta, long d, double q, double eps,
                                   const ScheduleConstants& constants = {}) {
    meta.validate();
    constants.validate();
    if (!(meta.alpha > 0.0))
        throw ConfigError(
            "plan_two_phase: target is not strongly convex (alpha <= 0); wrap it in the proximal "
            "shift first");
    if (d < 1) throw ConfigError("plan_two_phase: d must be >= 1");
    if (!(q > 1.0)) throw ConfigError("plan_two_phase: divergence order q must be > 1");
    if (!(eps > 0.0)) throw ConfigError("plan_two_phase: eps must be > 0");

    const double alpha = meta.alpha;
    const double beta = meta.beta;
    const double beta_h2 = meta.has_beta_h2 ? meta.beta_h2 : 0.0;
    const double kappa = beta / alpha;
    const double kappa_h2 = beta_h2 / std::pow(alpha, 1.5);
    const double d14 = std::pow(static_cast<double>(d), 0.25);

    TwoPhasePlan plan;

    const double l1 = std::max(
        1.0, constants.log_override > 0.0 ? constants.log_override
                                          : std::log(kappa * static_cast<double>(d) * q));
    const double rate1 = std::sqrt(beta) * std::sqrt(kappa) +
                         std::sqrt(beta_h2) * std::pow(beta, -0.25) / std::sqrt(kappa);
    plan.warm.log_factor = l1;
    plan.warm.h = constants.c_w / (rate1 * d14 * std::sqrt(l1));
    plan.warm.steps = static_cast<long>(
        std::ceil(constants.c_n1 * (std::sqrt(beta) / alpha) * l1 / plan.warm.h));
    plan.warm.gamma = std::sqrt(32.0 * beta);

    const double l2 = std::max(1.0, std::log(1.0 / eps));
    const double rate2 = std::sqrt(beta) + std::cbrt(beta_h2);
    plan.mhmc.log_factor = l2;
    plan.mhmc.h = constants.c_h2 / (rate2 * d14 * l2);
    plan.mhmc.leapfrog_steps = static_cast<long>(std::ceil(1.0 / (rate2 * plan.mhmc.h)));
    plan.mhmc.iterations = static_cast<long>(
        std::ceil(constants.c_n2 * (kappa + std::pow(kappa_h2, 2.0 / 3.0)) * l2));

    return plan;
}

}  // namespace warmhmc
