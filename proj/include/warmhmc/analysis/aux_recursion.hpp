#pragma once

// Auxiliary-process distance recursion.  An original chain evolves by OHO
// steps; an auxiliary chain, started elsewhere, first shifts its momentum
// toward the original by the scheduled amount and then takes a synchronous
// OHO step.  The squared distance in the effective-friction twisted norm must
// contract per step by at least exp(−c′·∫(ω₊ + η_t^p)) for some c′ > 0, and
// the final fiat assignment makes the two chains agree exactly.  The exact
// quadratic flow is used inside OHO so any failure indicts the recursion
// logic rather than discretization error.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "warmhmc/analysis/shift_schedule.hpp"
#include "warmhmc/analysis/twisted_norm.hpp"
#include "warmhmc/core/errors.hpp"
#include "warmhmc/core/phase_point.hpp"
#include "warmhmc/core/rng.hpp"
#include "warmhmc/integrators/oho.hpp"
#include "warmhmc/potentials/gaussian.hpp"
#include "warmhmc/potentials/potential.hpp"

namespace warmhmc {

struct AuxRecursionResult {
    std::vector<double> sq_distances;  // (𝚍_k)², k = 0..N (index N is post-fiat)
    std::vector<double> ratios;        // (𝚍_{k+1})²/(𝚍_k)², k = 0..N−1
    std::vector<double> rate_int;      // bound exponents ∫(ω₊+η_t^p) per step
    double c_prime = 0.0;              // min over dynamic steps of −log(r_k)/rate_int_k
    bool terminal_exact = false;       // bitwise equality after the fiat step
};

inline AuxRecursionResult aux_recursion_check(PotentialOracle& oracle, double gamma, double h,
                                              long steps, const ShiftSchedule& schedule,
                                              RngStream& rng) {
    const RegularityMeta& meta = oracle.meta();
    meta.validate();
    if (as_gaussian(oracle) == nullptr)
        throw ConfigError("aux_recursion_check: requires a quadratic target (exact flow)");
    if (!(meta.alpha > 0.0)) throw ConfigError("aux_recursion_check: requires alpha > 0");
    if (!(gamma * (1.0 + 1e-9) >= std::sqrt(32.0 * meta.beta)))
        throw ConfigError("aux_recursion_check: requires gamma >= sqrt(32*beta)");
    const double kappa = meta.beta / meta.alpha;
    if (!(h > 0.0 && h <= 0.01 / (std::sqrt(kappa) * gamma)))
        throw ConfigError("aux_recursion_check: requires 0 < h <= 0.01/(sqrt(kappa)*gamma)");
    if (steps < 2) throw ConfigError("aux_recursion_check: steps must be >= 2");
    if (schedule.steps != steps || schedule.h != h || schedule.gamma != gamma)
        throw ConfigError("aux_recursion_check: schedule does not match (gamma, h, steps)");

    const long d = oracle.dim();
    PhasePoint orig(rng.normal_vector(d), rng.normal_vector(d));
    PhasePoint aux(rng.normal_vector(d), rng.normal_vector(d));

    AuxRecursionResult out;
    out.rate_int = schedule.rate_int;
    out.sq_distances.reserve(static_cast<std::size_t>(steps) + 1);

    auto measure = [&](long k) {
        const TwistedNorm norm(schedule.gamma_at(static_cast<double>(k) * h));
        out.sq_distances.push_back(norm(orig, aux));
    };

    measure(0);
    for (long k = 0; k < steps; ++k) {
        if (k == steps - 1) {
            // Final iteration: original advances, auxiliary is set by fiat.
            const Vector xi1 = rng.normal_vector(d);
            const Vector xi2 = rng.normal_vector(d);
            orig = oho_step_with(orig, oracle, h, gamma, xi1, xi2);
            aux = orig;
        } else {
            const double shrink = -std::expm1(-schedule.eta_p_int[static_cast<std::size_t>(k)]);
            aux.p -= shrink * (aux.p - orig.p) +
                     schedule.eta_x_int[static_cast<std::size_t>(k)] * (aux.x - orig.x);
            const Vector xi1 = rng.normal_vector(d);
            const Vector xi2 = rng.normal_vector(d);
            orig = oho_step_with(orig, oracle, h, gamma, xi1, xi2);
            aux = oho_step_with(aux, oracle, h, gamma, xi1, xi2);
        }
        measure(k + 1);
    }

    out.terminal_exact = (aux.x.array() == orig.x.array()).all() &&
                         (aux.p.array() == orig.p.array()).all();

    out.ratios.resize(static_cast<std::size_t>(steps));
    double c_prime = std::numeric_limits<double>::infinity();
    for (long k = 0; k < steps; ++k) {
        const double before = out.sq_distances[static_cast<std::size_t>(k)];
        const double after = out.sq_distances[static_cast<std::size_t>(k) + 1];
        const double r = before > 0.0 ? after / before : 0.0;
        out.ratios[static_cast<std::size_t>(k)] = r;
        if (k < steps - 1 && r > 0.0)  // fiat step (ratio 0) carries no information on c′
            c_prime = std::min(c_prime, -std::log(r) / out.rate_int[static_cast<std::size_t>(k)]);
    }
    out.c_prime = std::isfinite(c_prime) ? c_prime : 0.0;
    return out;
}

}  // namespace warmhmc
