#pragma once

// Proximal sampler: alternates a forward Gaussian step Y ~ N(X, h_prox I)
// with a backward step that samples the restricted Gaussian oracle
// π^{X|Y}(x) ∝ exp(−V(x) − ||x−y||²/(2 h_prox)).  The backward target is the
// proximally shifted potential, which with h_prox = 1/(2β) has condition
// number at most 3, so the two-phase pipeline samples it cheaply regardless
// of the conditioning (or non-convexity) of the base target.

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "warmhmc/core/errors.hpp"
#include "warmhmc/core/phase_point.hpp"
#include "warmhmc/core/rng.hpp"
#include "warmhmc/potentials/potential.hpp"
#include "warmhmc/potentials/proximal.hpp"
#include "warmhmc/samplers/records.hpp"
#include "warmhmc/samplers/schedule.hpp"
#include "warmhmc/samplers/two_phase.hpp"

namespace warmhmc {

// Builds the inner two-phase plan for one backward step, given the recentred
// shifted target's metadata.
using PlanFactory = std::function<TwoPhasePlan(const RegularityMeta&, long)>;

// Inner accuracy schedule: a backward step run to accuracy eps/sqrt(kappa)
// (kappa of the outer target) yields outer accuracy eps after the alternation.
inline PlanFactory make_rgo_plan_factory(double eps, double kappa, double q = 2.0,
                                         ScheduleConstants constants = {}) {
    if (!(eps > 0.0)) throw ConfigError("make_rgo_plan_factory: eps must be > 0");
    if (!(kappa >= 1.0)) throw ConfigError("make_rgo_plan_factory: kappa must be >= 1");
    const double eps_rgo = eps / std::sqrt(kappa);
    return [eps_rgo, q, constants](const RegularityMeta& meta, long d) {
        return plan_two_phase(meta, d, q, eps_rgo, constants);
    };
}

struct ProximalResult {
    PhasePoint sample;  // final X with zero momentum
    // One row per outer iteration 0..N_outer; grad_queries counts base-oracle
    // gradient calls (minimizer search and inner sampler included).
    std::vector<ChainRecord> trajectory;
    std::uint64_t grad_queries = 0;
    std::vector<double> inner_acceptance;  // phase-2 acceptance per outer step
};

inline ProximalResult proximal_sampler(PotentialOracle& base, const PlanFactory& factory,
                                       double h_prox, long n_outer, RngStream& rng,
                                       double minimizer_tol = 1e-10) {
    const RegularityMeta& meta = base.meta();
    meta.validate();
    if (!(meta.beta > 0.0)) throw ConfigError("proximal_sampler: base oracle must declare beta > 0");
    if (!(h_prox > 0.0)) throw ConfigError("proximal_sampler: h_prox must be > 0");
    if (n_outer < 0) throw ConfigError("proximal_sampler: n_outer must be >= 0");
    if (!factory) throw ConfigError("proximal_sampler: plan factory is empty");

    const long d = base.dim();
    const std::uint64_t q0 = base.gradient_queries();

    ProximalResult out;
    out.sample = PhasePoint(rng.normal_vector(d) / std::sqrt(meta.beta), Vector::Zero(d));
    auto record = [&](long iter) {
        ChainRecord rec;
        rec.iteration = iter;
        rec.grad_queries = static_cast<long>(base.gradient_queries() - q0);
        rec.norm_x = out.sample.x.norm();
        rec.hamiltonian = base.evaluate(out.sample.x);
        out.trajectory.push_back(rec);
    };
    record(0);

    for (long k = 1; k <= n_outer; ++k) {
        try {
            const Vector y = out.sample.x + std::sqrt(h_prox) * rng.normal_vector(d);
            ProximalShiftedOracle shifted(base, y, h_prox);
            const Vector x_star = proximal_oracle(shifted, minimizer_tol);
            RecenteredOracle recentred(shifted, x_star);
            const TwoPhasePlan plan = factory(recentred.meta(), d);
            TwoPhaseResult inner = two_phase_sample(plan, recentred, rng, /*record_every=*/0);
            out.sample.x = x_star + inner.sample.x;
            out.inner_acceptance.push_back(inner.mhmc_acceptance);
        } catch (const BlowupError& e) {
            throw ConvergenceError("proximal_sampler: backward step diverged at outer iteration " +
                                   std::to_string(k) + ": " + e.what());
        } catch (const ConvergenceError& e) {
            throw ConvergenceError("proximal_sampler: backward step failed at outer iteration " +
                                   std::to_string(k) + ": " + e.what());
        }
        record(k);
    }
    out.grad_queries = base.gradient_queries() - q0;
    return out;
}

// The conjugate closed form for a quadratic base V(x) = ½ xᵀ A x with diagonal
// A = diag(spectrum): the backward law given y is exactly Gaussian with
// mean (A + I/h)⁻¹ y / h and covariance (A + I/h)⁻¹.
struct RgoClosedForm {
    Vector mean;
    Vector cov_diag;
};

inline RgoClosedForm rgo_gaussian_closed_form(const Vector& spectrum, const Vector& y,
                                              double h_prox) {
    if (spectrum.size() != y.size())
        throw ConfigError("rgo_gaussian_closed_form: dimension mismatch");
    if (!(h_prox > 0.0)) throw ConfigError("rgo_gaussian_closed_form: h_prox must be > 0");
    RgoClosedForm out;
    const Vector precision = spectrum.array() + 1.0 / h_prox;
    out.cov_diag = precision.cwiseInverse();
    out.mean = out.cov_diag.cwiseProduct(y) / h_prox;
    return out;
}

}  // namespace warmhmc
