#pragma once

// Driver for the unadjusted (no accept/reject) warm-start phase.  Runs one of
// the splitting schemes for a fixed number of steps, recording the trajectory
// at a configurable cadence, and optionally stops early when a caller-supplied
// predicate fires (e.g. "the chain escaped a ball").  Divergence from the
// stationary law is never estimated from samples here; for Gaussian targets it
// is available in closed form through the exactlaw module.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "warmhmc/core/errors.hpp"
#include "warmhmc/core/phase_point.hpp"
#include "warmhmc/core/rng.hpp"
#include "warmhmc/integrators/oho.hpp"
#include "warmhmc/integrators/scheme.hpp"
#include "warmhmc/integrators/splitting.hpp"
#include "warmhmc/potentials/potential.hpp"
#include "warmhmc/samplers/records.hpp"

namespace warmhmc {

// Advances one step of the chosen scheme.  Throws BlowupError if the update
// leaves the admissible region.
inline PhasePoint unadjusted_step(const PhasePoint& point, PotentialOracle& oracle, Scheme scheme,
                                  double h, double gamma, RngStream& rng) {
    if (scheme == Scheme::oho) return oho_step(point, oracle, h, gamma, rng);
    SplitStepResult r;
    switch (scheme) {
        case Scheme::obabo:
            r = obabo_step(point, oracle, h, gamma, rng);
            break;
        case Scheme::obabco:
            r = obabco_step(point, oracle, h, gamma, rng);
            break;
        default:
            throw ConfigError("unadjusted_step: unknown scheme");
    }
    if (!r.ok) throw BlowupError(r.blowup_step);
    return std::move(r.point);
}

struct UnadjustedOptions {
    Scheme scheme = Scheme::obabco;
    double h = 0.0;
    double gamma = 0.0;
    long steps = 0;
    // Trajectory rows are emitted every `record_every` steps plus at the final
    // step; 0 keeps only the final row.
    long record_every = 1;

    void validate() const {
        if (!(h > 0.0)) throw ConfigError("UnadjustedOptions: h must be > 0");
        if (!(gamma >= 0.0)) throw ConfigError("UnadjustedOptions: gamma must be >= 0");
        if (steps < 0) throw ConfigError("UnadjustedOptions: steps must be >= 0");
        if (record_every < 0) throw ConfigError("UnadjustedOptions: record_every must be >= 0");
    }
};

struct UnadjustedResult {
    PhasePoint point;
    std::vector<ChainRecord> trajectory;
    std::uint64_t grad_queries = 0;  // queries consumed by this run alone
    long stopped_at = -1;            // step index where the predicate fired, or -1
};

// Predicate receives the state after a completed step and its 1-based index.
using StopPredicate = std::function<bool(const PhasePoint&, long)>;

inline UnadjustedResult run_unadjusted(PhasePoint start, PotentialOracle& oracle,
                                       const UnadjustedOptions& opts, RngStream& rng,
                                       const StopPredicate& stop = {}) {
    opts.validate();
    const std::uint64_t q0 = oracle.gradient_queries();

    UnadjustedResult out{std::move(start), {}, 0, -1};
    auto record = [&](long iter) {
        ChainRecord rec;
        rec.iteration = iter;
        rec.grad_queries = static_cast<long>(oracle.gradient_queries() - q0);
        rec.norm_x = out.point.x.norm();
        rec.hamiltonian = oracle.evaluate(out.point.x) + 0.5 * out.point.p.squaredNorm();
        out.trajectory.push_back(rec);
    };

    record(0);
    for (long k = 1; k <= opts.steps; ++k) {
        try {
            out.point = unadjusted_step(out.point, oracle, opts.scheme, opts.h, opts.gamma, rng);
        } catch (BlowupError& e) {
            e.iteration = k;
            throw;
        }
        const bool stopping = stop && stop(out.point, k);
        const bool last = stopping || k == opts.steps;
        if (last || (opts.record_every > 0 && k % opts.record_every == 0)) record(k);
        if (stopping) {
            out.stopped_at = k;
            break;
        }
    }
    out.grad_queries = oracle.gradient_queries() - q0;
    return out;
}

}  // namespace warmhmc
