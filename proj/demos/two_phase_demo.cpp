// Minimal usage example: plan a two-phase run for a non-Gaussian product
// target, draw one sample, and show where the gradient budget went.

#include <cstdio>

#include "warmhmc/potentials/logcosh.hpp"
#include "warmhmc/samplers/two_phase.hpp"

int main() {
    using namespace warmhmc;
    const long d = 64;
    auto oracle = make_logcosh_perturbed(1.0, 1.0, 1.0, d);

    const TwoPhasePlan plan = plan_two_phase(oracle->meta(), d, 2.0, 0.1, {});
    std::printf("phase 1: %ld corrected steps of size %.4f at friction %.2f\n", plan.warm.steps,
                plan.warm.h, plan.warm.gamma);
    std::printf("phase 2: %ld proposals x %ld leapfrog steps of size %.4f\n",
                plan.mhmc.iterations, plan.mhmc.leapfrog_steps, plan.mhmc.h);
    std::printf("planned gradient budget: %ld\n", plan.predicted_queries());

    RngStream rng(2024, 0);
    const TwoPhaseResult result = two_phase_sample(plan, *oracle, rng);
    std::printf("drawn sample: |x| = %.4f (first coordinate %.4f)\n", result.sample.x.norm(),
                result.sample.x[0]);
    std::printf("spent %llu warm + %llu Metropolized gradient queries, acceptance %.2f\n",
                static_cast<unsigned long long>(result.warm_queries),
                static_cast<unsigned long long>(result.mhmc_queries), result.mhmc_acceptance);
    return 0;
}
