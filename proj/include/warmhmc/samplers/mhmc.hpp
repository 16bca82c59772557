#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "warmhmc/core/hamiltonian.hpp"
#include "warmhmc/core/rng.hpp"
#include "warmhmc/integrators/exact_flow.hpp"
#include "warmhmc/integrators/leapfrog.hpp"
#include "warmhmc/samplers/records.hpp"

namespace warmhmc {

// Metropolized HMC parameters. The lazy chain (default) caps the acceptance
// probability at 1/2: accept with 1/2 min(1, exp(dH)) instead of min(1,
// exp(dH)). use_exact_flow swaps the leapfrog proposal for the exact
// Hamiltonian flow (quadratic targets only), under which dH = 0; it exists for
// the stationarity diagnostics.
struct MhmcParams {
    LeapfrogParams leapfrog;
    bool lazy = true;
    bool use_exact_flow = false;
};

// Chain driver with cross-proposal gradient caching: the gradient at the
// current position is always cached (fresh start positions cost one query;
// afterwards both accept and reject leave a cached gradient), so N proposals
// of K leapfrog steps cost exactly N*K + 1 queries.
class MhmcChain {
  public:
    MhmcChain(const PotentialOracle& oracle, MhmcParams params, Vector x0, RngStream& rng)
        : oracle_(oracle), params_(std::move(params)), rng_(rng), x_(std::move(x0)) {
        if (x_.size() != oracle.dim()) throw ConfigError("MhmcChain: x0 dimension mismatch");
        if (params_.use_exact_flow && as_gaussian(oracle) == nullptr)
            throw ConfigError("MhmcChain: exact-flow proposals need a quadratic target");
        start_queries_ = oracle.gradient_queries();
        if (!params_.use_exact_flow) oracle.gradient(x_, grad_x_);
        v_x_ = oracle.evaluate(x_);
    }

    const Vector& position() const { return x_; }
    std::uint64_t queries_used() const { return oracle_.gradient_queries() - start_queries_; }
    long iterations() const { return iter_; }
    long accept_count() const { return accepts_; }

    // One full-refresh proposal with accept/reject. A trajectory blowup is
    // treated as a proposal of +infinity energy, i.e. rejected.
    ChainRecord step() {
        const Eigen::Index d = x_.size();
        Vector p = rng_.normal_vector(d);
        const double h0 = v_x_ + 0.5 * p.squaredNorm();

        bool accept = false;
        double h_end = h0;
        PhasePoint proposal;
        Vector grad_prop;
        double v_prop = 0.0;
        bool proposal_ok;
        if (params_.use_exact_flow) {
            proposal =
                exact_hamiltonian_flow(PhasePoint(x_, std::move(p)), oracle_, params_.leapfrog.T());
            proposal_ok = proposal.finite();
            if (proposal_ok) v_prop = oracle_.evaluate(proposal.x);
        } else {
            FlowResult r =
                leapfrog_flow(PhasePoint(x_, std::move(p)), oracle_, params_.leapfrog, &grad_x_);
            proposal_ok = r.ok;
            if (proposal_ok) {
                proposal = std::move(r.point);
                grad_prop = std::move(r.grad_end);
                v_prop = oracle_.evaluate(proposal.x);
            }
        }

        if (proposal_ok) {
            const double h1 = v_prop + 0.5 * proposal.p.squaredNorm();
            const double log_ratio = std::min(0.0, h0 - h1);
            const double threshold = (params_.lazy ? 0.5 : 1.0) * std::exp(log_ratio);
            if (rng_.uniform() < threshold) {
                accept = true;
                h_end = h1;
                x_ = std::move(proposal.x);
                v_x_ = v_prop;
                if (!params_.use_exact_flow) grad_x_ = std::move(grad_prop);
            }
        }

        ++iter_;
        if (accept) ++accepts_;
        ChainRecord rec;
        rec.iteration = iter_;
        rec.grad_queries = static_cast<long>(queries_used());
        rec.accepted = accept ? 1 : 0;
        rec.norm_x = x_.norm();
        rec.hamiltonian = h_end;
        return rec;
    }

  private:
    const PotentialOracle& oracle_;
    MhmcParams params_;
    RngStream& rng_;
    Vector x_;
    Vector grad_x_;
    double v_x_;
    std::uint64_t start_queries_ = 0;
    long iter_ = 0;
    long accepts_ = 0;
};

// Single free-standing proposal without cross-step caching (K+1 queries).
inline std::pair<PhasePoint, ChainRecord> mhmc_step(const PhasePoint& point,
                                                    const PotentialOracle& oracle,
                                                    const MhmcParams& params, RngStream& rng) {
    MhmcChain chain(oracle, params, point.x, rng);
    ChainRecord rec = chain.step();
    return {PhasePoint(chain.position(), Vector::Zero(point.dim())), rec};
}

}  // namespace warmhmc
