#pragma once

// Synchronous-coupling contraction check for the OHO step.  In the
// high-friction regime γ ≥ sqrt(32 β) with h ≤ 0.01·sqrt(α)/γ², one OHO step
// contracts the twisted norm between any two chains driven by the same noise
// by a factor exp(−c′ α h / γ) for some c′ > 0.  The check measures the worst
// ratio over random coupled pairs and reports the implied c′.

#include <algorithm>
#include <cmath>
#include <vector>

#include "warmhmc/analysis/twisted_norm.hpp"
#include "warmhmc/core/errors.hpp"
#include "warmhmc/core/phase_point.hpp"
#include "warmhmc/core/rng.hpp"
#include "warmhmc/integrators/oho.hpp"
#include "warmhmc/potentials/potential.hpp"

namespace warmhmc {

struct ContractionResult {
    double worst_ratio = 0.0;
    double c_prime = 0.0;  // from worst_ratio = exp(−c′ α h / γ)
    std::vector<double> ratios;
};

// Friction must dominate sqrt(32 β) (checked with 1e−9 relative slack so the
// boundary value γ = sqrt(32 β) itself is admissible) and the step size must
// satisfy the smallness condition h ≤ 0.01·sqrt(α)/γ².
inline void check_contraction_regime(const RegularityMeta& meta, double gamma, double h) {
    meta.validate();
    if (!(meta.alpha > 0.0))
        throw ConfigError("contraction_check: target must be strongly convex (alpha > 0)");
    if (!(gamma * (1.0 + 1e-9) >= std::sqrt(32.0 * meta.beta)))
        throw ConfigError("contraction_check: requires gamma >= sqrt(32*beta)");
    if (!(h > 0.0 && h <= 0.01 * std::sqrt(meta.alpha) / (gamma * gamma)))
        throw ConfigError("contraction_check: requires 0 < h <= 0.01*sqrt(alpha)/gamma^2");
}

inline ContractionResult contraction_check(PotentialOracle& oracle, double gamma, double h,
                                           long trials, RngStream& rng) {
    check_contraction_regime(oracle.meta(), gamma, h);
    if (trials < 1) throw ConfigError("contraction_check: trials must be >= 1");

    const long d = oracle.dim();
    const TwistedNorm norm(gamma);
    ContractionResult out;
    out.ratios.reserve(static_cast<std::size_t>(trials));

    for (long t = 0; t < trials; ++t) {
        const PhasePoint a(rng.normal_vector(d), rng.normal_vector(d));
        Vector dx = rng.normal_vector(d);
        Vector dp = rng.normal_vector(d);
        double before = norm(dx, dp);
        while (!(before > 0.0)) {  // vacuous pairs excluded by construction
            dx = rng.normal_vector(d);
            dp = rng.normal_vector(d);
            before = norm(dx, dp);
        }
        const PhasePoint b(a.x + dx, a.p + dp);

        const Vector xi1 = rng.normal_vector(d);
        const Vector xi2 = rng.normal_vector(d);
        const PhasePoint a1 = oho_step_with(a, oracle, h, gamma, xi1, xi2);
        const PhasePoint b1 = oho_step_with(b, oracle, h, gamma, xi1, xi2);

        out.ratios.push_back(norm(a1, b1) / before);
    }

    out.worst_ratio = *std::max_element(out.ratios.begin(), out.ratios.end());
    out.c_prime = -gamma * std::log(out.worst_ratio) / (oracle.meta().alpha * h);
    return out;
}

}  // namespace warmhmc
