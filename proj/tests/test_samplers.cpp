// Sampler layer: Metropolized chain mechanics (laziness, rejection on
// blowup, caching-exact query accounting, determinism), the unadjusted
// runner, the two-phase pipeline, the schedule formulas with frozen values,
// and the backward-step closed form.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "support.hpp"
#include "warmhmc/exactlaw/phase_law.hpp"
#include "warmhmc/potentials/gaussian.hpp"
#include "warmhmc/potentials/logcosh.hpp"
#include "warmhmc/samplers/mhmc.hpp"
#include "warmhmc/samplers/proximal_sampler.hpp"
#include "warmhmc/samplers/schedule.hpp"
#include "warmhmc/samplers/two_phase.hpp"
#include "warmhmc/samplers/unadjusted.hpp"

using namespace warmhmc;

TEST_CASE("chains are bit-for-bit deterministic in the seed") {
    auto oracle = make_isotropic_gaussian(4);
    const MhmcParams params{LeapfrogParams(0.4, 5), true, false};
    const auto run = [&](std::uint64_t seed, std::uint64_t stream) {
        RngStream rng(seed, stream);
        MhmcChain chain(*oracle, params, Vector::Ones(4), rng);
        std::vector<double> path;
        for (int i = 0; i < 40; ++i) {
            chain.step();
            path.push_back(chain.position()[0]);
        }
        return path;
    };
    CHECK(run(7, 0) == run(7, 0));
    CHECK(run(7, 0) != run(8, 0));
    CHECK(run(7, 0) != run(7, 1));
}

TEST_CASE("query accounting is exactly N*K + 1 for an uninterrupted chain") {
    auto oracle = make_isotropic_gaussian(8);
    const long K = 6, N = 37;
    const MhmcParams params{LeapfrogParams(0.1, K), true, false};
    RngStream rng(21, 0);
    const std::uint64_t q0 = oracle->gradient_queries();
    MhmcChain chain(*oracle, params, Vector::Zero(8), rng);
    for (long i = 0; i < N; ++i) chain.step();
    // The gradient at the current position is cached across proposals, so an
    // N-proposal chain costs exactly N*K + 1 queries regardless of accepts.
    CHECK(oracle->gradient_queries() - q0 == static_cast<std::uint64_t>(N * K + 1));
    CHECK(chain.queries_used() == static_cast<std::uint64_t>(N * K + 1));
}

TEST_CASE("unstable proposals blow up and count as rejections") {
    // Step size far beyond stability on a stiff quadratic: every leapfrog
    // trajectory diverges, so the chain must never move and never accept.
    Vector spectrum(2);
    spectrum << 40000.0, 40000.0;
    auto oracle = make_gaussian(spectrum);
    const MhmcParams params{LeapfrogParams(0.5, 30), true, false};
    RngStream rng(22, 0);
    const Vector x0 = Vector::Constant(2, 0.005);
    MhmcChain chain(*oracle, params, x0, rng);
    for (int i = 0; i < 30; ++i) {
        const ChainRecord rec = chain.step();
        CHECK(rec.accepted == 0);
    }
    CHECK((chain.position() - x0).norm() == 0.0);
}

TEST_CASE("half-lazy acceptance never exceeds one half") {
    // Even on a perfect proposal (exact flow), the lazy chain accepts with
    // probability 1/2.
    auto oracle = make_isotropic_gaussian(1);
    MhmcParams params{LeapfrogParams(0.3, 4), true, true};  // exact flow proposals
    RngStream rng(23, 0);
    MhmcChain chain(*oracle, params, Vector::Ones(1), rng);
    long accepts = 0;
    const long n = 4000;
    for (long i = 0; i < n; ++i) accepts += chain.step().accepted == 1 ? 1 : 0;
    const double rate = static_cast<double>(accepts) / static_cast<double>(n);
    CHECK(rate > 0.45);
    CHECK(rate < 0.55);
}

TEST_CASE("unadjusted runner: accounting, recording cadence, stop predicate") {
    auto oracle = make_isotropic_gaussian(3);
    RngStream rng(24, 0);
    UnadjustedOptions opts;
    opts.scheme = Scheme::obabco;
    opts.h = 0.05;
    opts.gamma = std::sqrt(32.0);
    opts.steps = 50;
    opts.record_every = 10;
    const std::uint64_t q0 = oracle->gradient_queries();
    const UnadjustedResult r = run_unadjusted(
        PhasePoint(Vector::Zero(3), rng.normal_vector(3)), *oracle, opts, rng);
    CHECK(r.grad_queries == 100);  // two gradients per corrected step
    CHECK(oracle->gradient_queries() - q0 == 100);
    CHECK(r.stopped_at == -1);
    REQUIRE(r.trajectory.size() == 6);  // steps 0, 10, 20, 30, 40, 50
    CHECK(r.trajectory.front().iteration == 0);
    CHECK(r.trajectory.back().iteration == 50);
    for (const ChainRecord& rec : r.trajectory) CHECK_FALSE(rec.has_accept_flag());

    RngStream rng2(24, 1);
    const UnadjustedResult stopped = run_unadjusted(
        PhasePoint(Vector::Zero(3), rng2.normal_vector(3)), *oracle, opts, rng2,
        [](const PhasePoint&, long k) { return k >= 7; });
    CHECK(stopped.stopped_at == 7);
    CHECK(stopped.grad_queries == 14);
}

TEST_CASE("corrected-scheme empirical law matches the exact phase law") {
    // Monte Carlo covariance over independent short runs against the affine
    // recursion, within four standard errors.
    Vector spectrum(2);
    spectrum << 1.0, 4.0;
    const double h = 0.08, gamma = std::sqrt(32.0 * 4.0);
    const long steps = 25, samples = 20000;

    GaussianPhaseLaw law = GaussianPhaseLaw::cold_start(spectrum, 0.25);
    const auto affines = affines_of_scheme(Scheme::obabco, spectrum, h, gamma);
    for (long k = 0; k < steps; ++k) law.step(affines);

    auto oracle = make_gaussian(spectrum);
    Eigen::Vector2d sum_sq = Eigen::Vector2d::Zero();
    for (long s = 0; s < samples; ++s) {
        RngStream rng(900 + static_cast<std::uint64_t>(s), 2);
        PhasePoint z(0.5 * rng.normal_vector(2), rng.normal_vector(2));
        for (long k = 0; k < steps; ++k) {
            const SplitStepResult r = obabco_step(z, *oracle, h, gamma, rng);
            REQUIRE(r.ok);
            z = r.point;
        }
        sum_sq[0] += z.x[0] * z.x[0];
        sum_sq[1] += z.x[1] * z.x[1];
    }
    for (int i = 0; i < 2; ++i) {
        const double exact = law.cov(i)(0, 0);
        const double emp = sum_sq[i] / static_cast<double>(samples);
        const double se = exact * std::sqrt(2.0 / static_cast<double>(samples));
        INFO("mode " << i << " exact " << exact << " empirical " << emp);
        CHECK(std::abs(emp - exact) < 4.0 * se);
    }
}

TEST_CASE("schedule formulas reproduce frozen values") {
    // Perturbed log-cosh target in d = 256 at accuracy 0.05.
    const RegularityMeta meta = LogCoshPotential(1.0, 1.0, 1.0, 256).meta();
    const TwoPhasePlan plan = plan_two_phase(meta, 256, 2.0, 0.05, {});
    CHECK(plan.warm.h == Catch::Approx(0.03659790866172654).epsilon(1e-13));
    CHECK(plan.warm.steps == 268);
    CHECK(plan.warm.gamma == Catch::Approx(8.0).epsilon(1e-14));
    CHECK(plan.warm.log_factor == Catch::Approx(std::log(1024.0)).epsilon(1e-13));
    CHECK(plan.mhmc.h == Catch::Approx(0.03456697098984185).epsilon(1e-13));
    CHECK(plan.mhmc.leapfrog_steps == 12);
    CHECK(plan.mhmc.iterations == 9);
    CHECK(plan.mhmc.log_factor == Catch::Approx(std::log(20.0)).epsilon(1e-13));
    CHECK(plan.predicted_queries() == 645);

    // Quadratic with condition number 4 in d = 16 at accuracy 0.2.
    const TwoPhasePlan gp = plan_two_phase(RegularityMeta(1.0, 4.0), 16, 2.0, 0.2, {});
    CHECK(gp.warm.steps == 172);
    CHECK(gp.mhmc.leapfrog_steps == 4);
    CHECK(gp.mhmc.iterations == 7);
    CHECK(gp.predicted_queries() == 373);
}

TEST_CASE("planning a non-convex target demands the proximal wrapper") {
    RegularityMeta meta;
    meta.alpha = 0.0;
    meta.beta = 4.0;
    CHECK_THROWS_WITH(plan_two_phase(meta, 16, 2.0, 0.1, {}),
                      Catch::Matchers::ContainsSubstring("proximal shift"));
}

TEST_CASE("two-phase pipeline: accounting matches the plan and phases chain up") {
    Vector spectrum = Vector::LinSpaced(16, 1.0, 4.0);
    auto oracle = make_gaussian(spectrum);
    const TwoPhasePlan plan = plan_two_phase(RegularityMeta(1.0, 4.0), 16, 2.0, 0.2, {});
    RngStream rng(25, 0);
    const std::uint64_t q0 = oracle->gradient_queries();
    const TwoPhaseResult r = two_phase_sample(plan, *oracle, rng);
    // On a mild quadratic no proposal blows up, so the measured total equals
    // the planned 2*N1 + N2*K2 + 1 exactly.
    CHECK(r.total_queries() == static_cast<std::uint64_t>(plan.predicted_queries()));
    CHECK(oracle->gradient_queries() - q0 == r.total_queries());
    CHECK(r.warm_queries == static_cast<std::uint64_t>(2 * plan.warm.steps));
    CHECK(r.mhmc_acceptance >= 0.0);
    CHECK(r.mhmc_acceptance <= 1.0);
    CHECK(r.sample.p.norm() == 0.0);  // the deliverable is a position sample
    REQUIRE_FALSE(r.trajectory.empty());
    // Cumulative iteration and query counters never decrease across phases.
    for (std::size_t i = 1; i < r.trajectory.size(); ++i) {
        CHECK(r.trajectory[i].iteration > r.trajectory[i - 1].iteration);
        CHECK(r.trajectory[i].grad_queries >= r.trajectory[i - 1].grad_queries);
    }
    CHECK(r.trajectory.back().grad_queries == static_cast<long>(r.total_queries()));
}

TEST_CASE("two-phase warm start lands near the target law in one pipeline call") {
    // Handoff quality on a quadratic: after phase 1 the exact law of the
    // corrected scheme is inside the constant-divergence ball, so phase-2
    // acceptance stays high in a moderately large dimension.
    Vector spectrum = Vector::Constant(64, 2.0);
    auto oracle = make_gaussian(spectrum);
    const TwoPhasePlan plan = plan_two_phase(RegularityMeta(2.0, 2.0), 64, 2.0, 0.1, {});
    RngStream rng(26, 0);
    const TwoPhaseResult r = two_phase_sample(plan, *oracle, rng);
    CHECK(r.mhmc_acceptance > 0.2);  // half-lazy cap is 1/2
    CHECK(r.sample.x.allFinite());
}

TEST_CASE("backward-step closed form agrees with the shifted minimizer") {
    Vector spectrum = Vector::LinSpaced(6, 1.0, 4.0);
    auto base = make_gaussian(spectrum);
    const double h_prox = 1.0 / (2.0 * base->meta().beta);
    RngStream rng(27, 0);
    const Vector y = rng.normal_vector(6);
    const RgoClosedForm cf = rgo_gaussian_closed_form(spectrum, y, h_prox);
    ProximalShiftedOracle shifted(*base, y, h_prox);
    const Vector x_star = proximal_oracle(shifted, 1e-12);
    CHECK((x_star - cf.mean).norm() < 1e-9);
    for (int i = 0; i < 6; ++i)
        CHECK(cf.cov_diag[i] == Catch::Approx(1.0 / (spectrum[i] + 1.0 / h_prox)).epsilon(1e-12));
}

TEST_CASE("plan factory targets the tightened inner accuracy") {
    const PlanFactory factory = make_rgo_plan_factory(0.3, 4.0);
    const RegularityMeta meta(3.0, 9.0);  // a shifted, recentred target
    const TwoPhasePlan direct = plan_two_phase(meta, 8, 2.0, 0.3 / std::sqrt(4.0), {});
    const TwoPhasePlan via = factory(meta, 8);
    CHECK(via.warm.steps == direct.warm.steps);
    CHECK(via.mhmc.iterations == direct.mhmc.iterations);
    CHECK(via.mhmc.leapfrog_steps == direct.mhmc.leapfrog_steps);
    CHECK(via.warm.h == Catch::Approx(direct.warm.h).epsilon(1e-14));
}

TEST_CASE("proximal outer loop runs and reports per-step diagnostics") {
    Vector spectrum = Vector::LinSpaced(4, 1.0, 4.0);
    auto base = make_gaussian(spectrum);
    const PlanFactory factory = make_rgo_plan_factory(0.5, base->meta().kappa());
    RngStream rng(28, 0);
    const ProximalResult r =
        proximal_sampler(*base, factory, 1.0 / (2.0 * base->meta().beta), 4, rng);
    CHECK(r.sample.x.size() == 4);
    CHECK(r.sample.x.allFinite());
    CHECK(r.sample.p.norm() == 0.0);
    CHECK(r.grad_queries > 0);
    CHECK(r.trajectory.size() == 5);  // outer iterations 0..4 inclusive
    REQUIRE(r.inner_acceptance.size() == 4);
    for (double acc : r.inner_acceptance) {
        CHECK(acc >= 0.0);
        CHECK(acc <= 1.0);
    }
}
