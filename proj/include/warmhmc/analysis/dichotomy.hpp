#pragma once

// Step-size dichotomy of Metropolized HMC started at the mode of an isotropic
// Gaussian: integrating T = 1 units of time with step h = d^{−1/4} gives
// vanishing acceptance and a chain pinned near the mode, while h = d^{−1/2}
// gives healthy acceptance but needs ≥ sqrt(d) gradients to escape.

#include <algorithm>
#include <cmath>
#include <vector>

#include "warmhmc/core/errors.hpp"
#include "warmhmc/core/phase_point.hpp"
#include "warmhmc/core/rng.hpp"
#include "warmhmc/integrators/params.hpp"
#include "warmhmc/potentials/gaussian.hpp"
#include "warmhmc/samplers/mhmc.hpp"
#include "warmhmc/samplers/records.hpp"

namespace warmhmc {

struct DichotomyArm {
    double h = 0.0;
    long leapfrog_steps = 0;
    std::vector<ChainRecord> trajectory;

    double mean_acceptance(long first_n = -1) const {
        const long n = first_n < 0 ? static_cast<long>(trajectory.size())
                                   : std::min<long>(first_n, static_cast<long>(trajectory.size()));
        if (n == 0) return 0.0;
        long acc = 0;
        for (long i = 0; i < n; ++i)
            if (trajectory[static_cast<std::size_t>(i)].accepted == 1) ++acc;
        return static_cast<double>(acc) / static_cast<double>(n);
    }

    // ‖x‖ at the last proposal completed within the query budget.
    double norm_after_queries(long budget) const {
        double norm = 0.0;  // chain starts at the mode
        for (const ChainRecord& rec : trajectory) {
            if (rec.grad_queries > budget) break;
            norm = rec.norm_x;
        }
        return norm;
    }

    // Gradient queries consumed when ‖x‖ first reached the radius (-1: never).
    long queries_to_radius(double radius) const {
        for (const ChainRecord& rec : trajectory)
            if (rec.norm_x >= radius) return rec.grad_queries;
        return -1;
    }
};

struct DichotomyResult {
    DichotomyArm large;  // h = d^{−1/4} by default
    DichotomyArm small;  // h = d^{−1/2} by default
};

inline DichotomyArm run_dichotomy_arm(long d, double h, double t_horizon, long proposals,
                                      RngStream& rng) {
    auto oracle = make_isotropic_gaussian(d);
    MhmcParams params{LeapfrogParams::from_horizon(t_horizon, h), true, false};
    MhmcChain chain(*oracle, params, Vector::Zero(d), rng);
    DichotomyArm arm;
    arm.h = params.leapfrog.h;
    arm.leapfrog_steps = params.leapfrog.K;
    arm.trajectory.reserve(static_cast<std::size_t>(proposals));
    for (long k = 0; k < proposals; ++k) arm.trajectory.push_back(chain.step());
    return arm;
}

inline DichotomyResult acceptance_dichotomy(long d, double t_horizon, long proposals_large,
                                            long proposals_small, RngStream& rng,
                                            double h_large = -1.0, double h_small = -1.0) {
    if (d < 1) throw ConfigError("acceptance_dichotomy: d must be >= 1");
    if (!(t_horizon > 0.0)) throw ConfigError("acceptance_dichotomy: horizon must be > 0");
    if (proposals_large < 1 || proposals_small < 1)
        throw ConfigError("acceptance_dichotomy: proposal counts must be >= 1");
    const double dd = static_cast<double>(d);
    if (h_large <= 0.0) h_large = std::pow(dd, -0.25);
    if (h_small <= 0.0) h_small = std::pow(dd, -0.5);

    // Independent per-arm streams so each arm's randomness does not depend on
    // how many proposals the other arm runs.
    RngStream rng_large(rng.next_u64(), 1);
    RngStream rng_small(rng.next_u64(), 2);

    DichotomyResult out;
    out.large = run_dichotomy_arm(d, h_large, t_horizon, proposals_large, rng_large);
    out.small = run_dichotomy_arm(d, h_small, t_horizon, proposals_small, rng_small);
    return out;
}

}  // namespace warmhmc
