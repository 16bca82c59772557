// Deterministic and stochastic integrator steps: frozen scalar values,
// symplectic structure (reversibility, unit Jacobian determinant), the
// energy-error order of leapfrog, the exact-flow reference, and the noise
// protocol shared by the splitting schemes.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <Eigen/LU>

#include "support.hpp"
#include "warmhmc/core/hamiltonian.hpp"
#include "warmhmc/integrators/leapfrog.hpp"
#include "warmhmc/integrators/oho.hpp"
#include "warmhmc/integrators/splitting.hpp"
#include "warmhmc/potentials/gaussian.hpp"

using namespace warmhmc;

namespace {

PhasePoint scalar_point(double x, double p) {
    Vector vx(1), vp(1);
    vx << x;
    vp << p;
    return PhasePoint(vx, vp);
}

}  // namespace

TEST_CASE("hand-checked scalar values") {
    auto oracle = make_isotropic_gaussian(1);

    // One leapfrog step of size 1 on U = x^2/2 from (1, 0):
    // p <- -1/2, x <- 1/2, p <- -1/2 - 1/4 = -3/4.
    const FlowResult r = leapfrog_flow(scalar_point(1.0, 0.0), *oracle, LeapfrogParams(1.0, 1));
    REQUIRE(r.ok);
    CHECK(r.point.x[0] == Catch::Approx(0.5).epsilon(1e-15));
    CHECK(r.point.p[0] == Catch::Approx(-0.75).epsilon(1e-15));

    // H(x=1, p=2) = 1/2 + 2 = 5/2.
    CHECK(hamiltonian(scalar_point(1.0, 2.0), *oracle) == Catch::Approx(2.5).epsilon(1e-15));

    // The exact Hamiltonian flow on the unit harmonic oscillator is a clock:
    // from (0, 1), x(t) = sin t.
    const Vector zero = Vector::Zero(1);
    const PhasePoint rotated =
        oho_step_with(scalar_point(0.0, 1.0), *oracle, 0.1, 0.0, zero, zero, 256);
    CHECK(rotated.x[0] == Catch::Approx(std::sin(0.1)).margin(1e-9));
    CHECK(rotated.p[0] == Catch::Approx(std::cos(0.1)).margin(1e-9));
}

TEST_CASE("leapfrog is time reversible") {
    Vector spectrum(3);
    spectrum << 0.7, 1.3, 3.2;
    auto oracle = make_gaussian(spectrum);
    RngStream rng(11, 0);
    const PhasePoint z0(rng.normal_vector(3), rng.normal_vector(3));
    const LeapfrogParams params(0.15, 9);

    const FlowResult fwd = leapfrog_flow(z0, *oracle, params);
    REQUIRE(fwd.ok);
    PhasePoint flipped(fwd.point.x, -fwd.point.p);
    const FlowResult back = leapfrog_flow(flipped, *oracle, params);
    REQUIRE(back.ok);
    CHECK((back.point.x - z0.x).norm() < 1e-12);
    CHECK((back.point.p + z0.p).norm() < 1e-12);
}

TEST_CASE("leapfrog preserves phase-space volume") {
    // Finite-difference Jacobian of one step in d = 2 (a 4x4 matrix): its
    // determinant must be 1 to machine precision.
    Vector spectrum(2);
    spectrum << 1.0, 2.5;
    auto oracle = make_gaussian(spectrum);
    RngStream rng(12, 0);
    const PhasePoint z0(rng.normal_vector(2), rng.normal_vector(2));
    const LeapfrogParams params(0.2, 3);
    const double eps = 1e-6;

    const auto flow_vec = [&](const Eigen::Vector4d& v) {
        PhasePoint z = z0;
        z.x[0] += v[0];
        z.x[1] += v[1];
        z.p[0] += v[2];
        z.p[1] += v[3];
        const FlowResult r = leapfrog_flow(z, *oracle, params);
        REQUIRE(r.ok);
        Eigen::Vector4d out;
        out << r.point.x[0], r.point.x[1], r.point.p[0], r.point.p[1];
        return out;
    };

    Eigen::Matrix4d jac;
    for (int j = 0; j < 4; ++j) {
        Eigen::Vector4d e = Eigen::Vector4d::Zero();
        e[j] = eps;
        jac.col(j) = (flow_vec(e) - flow_vec(-e)) / (2.0 * eps);
    }
    CHECK(jac.determinant() == Catch::Approx(1.0).margin(1e-7));
    // On a quadratic the step is bounded: no entry blows past the stability
    // envelope for h well under 2/sqrt(beta).
    CHECK(jac.cwiseAbs().maxCoeff() < 2.0);
}

TEST_CASE("leapfrog energy error scales as h^2 at fixed horizon") {
    Vector spectrum(4);
    spectrum << 1.0, 1.5, 2.0, 4.0;
    auto oracle = make_gaussian(spectrum);
    RngStream rng(13, 0);
    const PhasePoint z0(rng.normal_vector(4), rng.normal_vector(4));
    const double h0 = hamiltonian(z0, *oracle);

    const auto energy_error = [&](double h) {
        const FlowResult r = leapfrog_flow(z0, *oracle, LeapfrogParams::from_horizon(1.0, h));
        REQUIRE(r.ok);
        return std::abs(hamiltonian(r.point, *oracle) - h0);
    };
    const double e1 = energy_error(0.05);
    const double e2 = energy_error(0.025);
    CHECK(e1 / e2 == Catch::Approx(4.0).epsilon(0.25));
}

TEST_CASE("leapfrog query accounting: K+1 standalone, K with a leading gradient") {
    auto oracle = make_isotropic_gaussian(2);
    RngStream rng(14, 0);
    const PhasePoint z0(rng.normal_vector(2), rng.normal_vector(2));
    const std::uint64_t q0 = oracle->gradient_queries();
    const FlowResult r = leapfrog_flow(z0, *oracle, LeapfrogParams(0.1, 7));
    REQUIRE(r.ok);
    CHECK(oracle->gradient_queries() - q0 == 8);

    const Vector g0 = oracle->gradient(z0.x);
    const std::uint64_t q1 = oracle->gradient_queries();
    const FlowResult r2 = leapfrog_flow(z0, *oracle, LeapfrogParams(0.1, 7), &g0);
    REQUIRE(r2.ok);
    CHECK(oracle->gradient_queries() - q1 == 7);
    CHECK((r2.point.x - r.point.x).norm() == 0.0);
}

TEST_CASE("blowup is detected and reported with its step index") {
    // h far beyond the stability limit on a stiff quadratic must trip the
    // divergence guard instead of producing NaNs.
    Vector spectrum(1);
    spectrum << 10000.0;
    auto oracle = make_gaussian(spectrum);
    const FlowResult r =
        leapfrog_flow(scalar_point(1.0, 0.0), *oracle, LeapfrogParams(1.0, 400));
    CHECK_FALSE(r.ok);
    CHECK(r.blowup_step >= 0);
}

TEST_CASE("at zero friction the stochastic schemes reduce to their deterministic cores") {
    // gamma = 0 makes both O half-steps the identity regardless of the noise,
    // so OBABO collapses to one leapfrog step.
    Vector spectrum(3);
    spectrum << 0.9, 1.8, 3.1;
    auto oracle = make_gaussian(spectrum);
    RngStream rng(15, 0);
    const PhasePoint z0(rng.normal_vector(3), rng.normal_vector(3));
    RngStream noise(16, 0);

    const SplitStepResult s = obabo_step(z0, *oracle, 0.12, 0.0, noise);
    REQUIRE(s.ok);
    const FlowResult lf = leapfrog_flow(z0, *oracle, LeapfrogParams(0.12, 1));
    CHECK((s.point.x - lf.point.x).norm() < 1e-14);
    CHECK((s.point.p - lf.point.p).norm() < 1e-14);
}

TEST_CASE("splitting schemes share one noise protocol") {
    // Driving OBABO and the corrected scheme with the same stream consumes
    // the same draws: their leading O sub-steps produce identical momenta.
    Vector spectrum(2);
    spectrum << 1.0, 2.0;
    auto oracle = make_gaussian(spectrum);
    RngStream rng(17, 0);
    const PhasePoint z0(rng.normal_vector(2), rng.normal_vector(2));

    RngStream n1(99, 0), n2(99, 0);
    const SplitStepResult a = obabo_step(z0, *oracle, 0.05, 3.0, n1);
    const SplitStepResult b = obabco_step(z0, *oracle, 0.05, 3.0, n2);
    REQUIRE(a.ok);
    REQUIRE(b.ok);
    // Same stream state afterwards: both consumed exactly 2 d-dimensional draws.
    CHECK(n1.next_u64() == n2.next_u64());
    // The corrected position differs from plain OBABO at O(h^3).
    const double dx = (a.point.x - b.point.x).norm();
    CHECK(dx > 0.0);
    CHECK(dx < 10.0 * 0.05 * 0.05 * 0.05);
}

TEST_CASE("corrected step matches the exact flow to higher order than the plain step") {
    Vector spectrum(2);
    spectrum << 1.0, 4.0;
    auto oracle = make_gaussian(spectrum);
    RngStream rng(18, 0);
    const PhasePoint z0(rng.normal_vector(2), rng.normal_vector(2));
    const double gamma = 2.0;

    const auto one_h = [&](double h) {
        RngStream noise(55, 0);
        const Vector xi1 = noise.normal_vector(2), xi2 = noise.normal_vector(2);
        const PhasePoint exact = oho_step_with(z0, *oracle, h, gamma, xi1, xi2, 512);
        const SplitStepResult plain = obabo_step_with(z0, *oracle, h, gamma, xi1, xi2);
        const SplitStepResult corr = obabco_step_with(z0, *oracle, h, gamma, xi1, xi2);
        REQUIRE(plain.ok);
        REQUIRE(corr.ok);
        return std::pair<double, double>{(plain.point.x - exact.x).norm(),
                                         (corr.point.x - exact.x).norm()};
    };
    const auto [plain_h, corr_h] = one_h(0.02);
    const auto [plain_h2, corr_h2] = one_h(0.01);
    CHECK(plain_h / plain_h2 == Catch::Approx(8.0).epsilon(0.3));   // h^3
    CHECK(corr_h / corr_h2 == Catch::Approx(16.0).epsilon(0.3));    // h^4
    CHECK(corr_h < plain_h);
}

TEST_CASE("friction parameters expose the exact OU decay") {
    const FrictionParams fp(3.0, 0.5);
    CHECK(fp.decay == Catch::Approx(std::exp(-3.0 * 0.5 / 2.0)).epsilon(1e-14));
    CHECK(fp.noise_scale == Catch::Approx(std::sqrt(1.0 - fp.decay * fp.decay)).epsilon(1e-12));
    // The O half-step preserves N(0, 1): decay^2 + noise^2 = 1.
    CHECK(fp.decay * fp.decay + fp.noise_scale * fp.noise_scale == Catch::Approx(1.0));
}
