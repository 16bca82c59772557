#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "warmhmc/core/gaussian_law.hpp"
#include "warmhmc/integrators/params.hpp"
#include "warmhmc/integrators/scheme.hpp"

namespace warmhmc {

// One scheme step restricted to a single eigenmode with eigenvalue a: the
// affine map (x, p) -> M (x, p) + zeta, zeta ~ N(0, Q).
struct ModeAffine {
    Eigen::Matrix2d M;
    Eigen::Matrix2d Q;
};

namespace detail {

// Symbolic phase state of one mode: rows of coefficients over
// (x0, p0, xi1, xi2). The scheme builders below execute the very same
// elementary update lines as the numeric integrators on this representation,
// so (M, Q) are assembled by composition rather than hand-derived closed
// forms.
struct AffineTracker {
    Eigen::RowVector4d x{1.0, 0.0, 0.0, 0.0};
    Eigen::RowVector4d p{0.0, 1.0, 0.0, 0.0};

    void o_step(const FrictionParams& fp, int which_xi) {
        p *= fp.decay;
        p(2 + which_xi) += fp.noise_scale;
    }
    void half_kick(double a, double h) { p -= (a * h / 2.0) * x; }
    void drift(double h) { x += h * p; }
    void rotate(double a, double h) {
        const double w = std::sqrt(a);
        const double c = std::cos(w * h);
        const double s = std::sin(w * h);
        const Eigen::RowVector4d x_new = c * x + (s / w) * p;
        p = -w * s * x + c * p;
        x = x_new;
    }

    ModeAffine finish() const {
        ModeAffine out;
        out.M << x(0), x(1), p(0), p(1);
        Eigen::Matrix2d noise;
        noise << x(2), x(3), p(2), p(3);
        out.Q = noise * noise.transpose();
        return out;
    }
};

}  // namespace detail

inline ModeAffine affine_of_scheme(Scheme scheme, double a, double h, double gamma) {
    if (!(a > 0.0)) throw DomainError("affine_of_scheme: eigenvalue must be positive");
    const FrictionParams fp(gamma, h);
    detail::AffineTracker t;
    switch (scheme) {
        case Scheme::obabo:
            t.o_step(fp, 0);
            t.half_kick(a, h);
            t.drift(h);
            t.half_kick(a, h);
            t.o_step(fp, 1);
            break;
        case Scheme::obabco: {
            t.o_step(fp, 0);
            const Eigen::RowVector4d x0 = t.x;        // position after O
            const Eigen::RowVector4d g0 = a * t.x;    // gradient at it, reused by C
            t.half_kick(a, h);
            const Eigen::RowVector4d p_ob = t.p;
            t.drift(h);
            t.half_kick(a, h);
            t.x = x0 + (h / 3.0) * (t.p + 2.0 * p_ob) + (h * h / 6.0) * g0;  // C
            t.o_step(fp, 1);
            break;
        }
        case Scheme::oho:
            t.o_step(fp, 0);
            t.rotate(a, h);
            t.o_step(fp, 1);
            break;
    }
    return t.finish();
}

inline std::vector<ModeAffine> affines_of_scheme(Scheme scheme, const Vector& spectrum, double h,
                                                 double gamma) {
    std::vector<ModeAffine> out;
    out.reserve(static_cast<size_t>(spectrum.size()));
    for (Eigen::Index i = 0; i < spectrum.size(); ++i)
        out.push_back(affine_of_scheme(scheme, spectrum[i], h, gamma));
    return out;
}

// Exact Gaussian law of (X, P) under the affine dynamics, stored per eigenmode
// (valid because every shipped scheme acts diagonally in the target's
// eigenbasis; the full phase-space law is the product over modes). Covariances
// are symmetrized after every update; rounding that drives an eigenvalue below
// 1e-14 is clamped and counted in `repairs`.
class GaussianPhaseLaw {
  public:
    explicit GaussianPhaseLaw(Vector spectrum)
        : spectrum_(std::move(spectrum)),
          mean_(static_cast<size_t>(spectrum_.size()), Eigen::Vector2d::Zero()),
          cov_(static_cast<size_t>(spectrum_.size()), Eigen::Matrix2d::Identity()) {
        if (spectrum_.size() < 1 || !(spectrum_.minCoeff() > 0.0))
            throw DomainError("GaussianPhaseLaw: spectrum must be positive");
    }

    // Stationary law: per mode m = 0, cov = diag(1/a, 1).
    static GaussianPhaseLaw stationary(Vector spectrum) {
        GaussianPhaseLaw law(std::move(spectrum));
        for (Eigen::Index i = 0; i < law.dim(); ++i)
            law.cov_[static_cast<size_t>(i)] =
                Eigen::Vector2d(1.0 / law.spectrum_[i], 1.0).asDiagonal();
        return law;
    }

    // Cold start N(0, x_var I) (x) N(0, I); x_var = 1/beta is the default
    // initialization of the two-phase pipeline.
    static GaussianPhaseLaw cold_start(Vector spectrum, double x_var) {
        if (!(x_var > 0.0)) throw ConfigError("GaussianPhaseLaw: x_var must be > 0");
        GaussianPhaseLaw law(std::move(spectrum));
        for (auto& c : law.cov_) c = Eigen::Vector2d(x_var, 1.0).asDiagonal();
        return law;
    }

    Eigen::Index dim() const { return spectrum_.size(); }
    const Vector& spectrum() const { return spectrum_; }
    const Eigen::Vector2d& mean(Eigen::Index i) const { return mean_[static_cast<size_t>(i)]; }
    const Eigen::Matrix2d& cov(Eigen::Index i) const { return cov_[static_cast<size_t>(i)]; }
    Eigen::Vector2d& mean(Eigen::Index i) { return mean_[static_cast<size_t>(i)]; }
    Eigen::Matrix2d& cov(Eigen::Index i) { return cov_[static_cast<size_t>(i)]; }
    long repairs() const { return repairs_; }

    void step(const std::vector<ModeAffine>& affines) {
        if (affines.size() != mean_.size())
            throw ConfigError("GaussianPhaseLaw: affine count mismatch");
        for (size_t i = 0; i < mean_.size(); ++i) {
            const ModeAffine& am = affines[i];
            mean_[i] = am.M * mean_[i];
            Eigen::Matrix2d s = am.M * cov_[i] * am.M.transpose() + am.Q;
            s = ((s + s.transpose()) / 2.0).eval();
            repair(s);
            cov_[i] = s;
        }
    }

    // R_q(law || stationary target), additive over modes.
    double renyi_to_target(double q) const {
        double total = 0.0;
        for (Eigen::Index i = 0; i < dim(); ++i) {
            const double r = renyi_mode(q, mean(i), cov(i), spectrum_[i]);
            if (std::isinf(r)) return divergence_infinity;
            total += r;
        }
        return total;
    }

    double kl_to_target() const {
        double total = 0.0;
        for (Eigen::Index i = 0; i < dim(); ++i) {
            const Eigen::Matrix2d target = Eigen::Vector2d(1.0 / spectrum_[i], 1.0).asDiagonal();
            total += kl_gaussian(GaussianLaw(mean(i), cov(i)),
                                 GaussianLaw(Vector::Zero(2), target));
        }
        return total;
    }

    // Allocation-free 2x2 specialization of renyi_gaussian against the
    // stationary mode law N(0, diag(1/a, 1)); verified against the general
    // implementation in the test suite.
    static double renyi_mode(double q, const Eigen::Vector2d& m, const Eigen::Matrix2d& s,
                             double a) {
        const double t00 = 1.0 / a, t11 = 1.0;
        const double mix00 = q * t00 + (1.0 - q) * s(0, 0);
        const double mix01 = (1.0 - q) * s(0, 1);
        const double mix11 = q * t11 + (1.0 - q) * s(1, 1);
        const double det_mix = mix00 * mix11 - mix01 * mix01;
        if (!(mix00 > 0.0) || !(det_mix > 0.0)) return divergence_infinity;
        const double det_s = s(0, 0) * s(1, 1) - s(0, 1) * s(1, 0);
        if (!(det_s > 0.0)) throw DomainError("renyi_mode: covariance not positive definite");
        // quad = m' mix^{-1} m
        const double quad =
            (mix11 * m(0) * m(0) - 2.0 * mix01 * m(0) * m(1) + mix00 * m(1) * m(1)) / det_mix;
        const double logterm =
            std::log(det_mix) - (1.0 - q) * std::log(det_s) - q * std::log(t00 * t11);
        const double r = 0.5 * q * quad - logterm / (2.0 * (q - 1.0));
        return r < 0.0 && r > -1e-12 ? 0.0 : r;
    }

  private:
    void repair(Eigen::Matrix2d& s) {
        // Symmetric 2x2 eigenvalues.
        const double tr = s(0, 0) + s(1, 1);
        const double det = s(0, 0) * s(1, 1) - s(0, 1) * s(1, 0);
        const double disc = std::sqrt(std::max(tr * tr / 4.0 - det, 0.0));
        const double lo = tr / 2.0 - disc;
        constexpr double floor = 1e-14;
        if (lo >= floor) return;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(s);
        Eigen::Vector2d ev = es.eigenvalues().cwiseMax(floor);
        s = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
        s = ((s + s.transpose()) / 2.0).eval();
        ++repairs_;
    }

    Vector spectrum_;
    std::vector<Eigen::Vector2d> mean_;
    std::vector<Eigen::Matrix2d> cov_;
    long repairs_ = 0;
};

// Divergence curve of N scheme steps from `law`: R_q(law_n || target) for
// n = 1..N (additionally reporting the step-0 value at the front).
inline std::vector<double> propagate(GaussianPhaseLaw& law, Scheme scheme, double h, double gamma,
                                     long steps, double q) {
    const std::vector<ModeAffine> affines = affines_of_scheme(scheme, law.spectrum(), h, gamma);
    std::vector<double> out;
    out.reserve(static_cast<size_t>(steps) + 1);
    out.push_back(law.renyi_to_target(q));
    for (long n = 0; n < steps; ++n) {
        law.step(affines);
        out.push_back(law.renyi_to_target(q));
    }
    return out;
}

// Minimal N with R_2(law_N || target) <= threshold under exact propagation,
// from the cold start N(0, beta^{-1} I) (x) N(0, I).
inline long warmstart_iterations(const Vector& spectrum, double h, double gamma,
                                 Scheme scheme = Scheme::obabco, double threshold = 1.0,
                                 double q = 2.0, long cap = 10000000) {
    GaussianPhaseLaw law = GaussianPhaseLaw::cold_start(spectrum, 1.0 / spectrum.maxCoeff());
    const std::vector<ModeAffine> affines = affines_of_scheme(scheme, spectrum, h, gamma);
    if (law.renyi_to_target(q) <= threshold) return 0;
    for (long n = 1; n <= cap; ++n) {
        law.step(affines);
        if (law.renyi_to_target(q) <= threshold) return n;
    }
    throw ConvergenceError(
        "warmstart_iterations: divergence did not reach the threshold (step size too coarse: "
        "bias floor above the target)");
}

// Stationary covariance of one mode's affine step: the discrete Lyapunov
// fixed point S = M S M' + Q, solved directly (4x4 linear system).
inline Eigen::Matrix2d stationary_cov(const ModeAffine& am) {
    Eigen::Matrix4d a = Eigen::Matrix4d::Identity();
    // kron(M, M) acting on vec(S) (column-major).
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    a(k + 2 * l, i + 2 * j) -= am.M(k, i) * am.M(l, j);
    Eigen::Vector4d q_vec(am.Q(0, 0), am.Q(1, 0), am.Q(0, 1), am.Q(1, 1));
    Eigen::Vector4d s_vec = a.fullPivLu().solve(q_vec);
    Eigen::Matrix2d s;
    s << s_vec(0), s_vec(2), s_vec(1), s_vec(3);
    return ((s + s.transpose()) / 2.0).eval();
}

// Asymptotic R_q bias floor of an unadjusted scheme on the given spectrum:
// divergence of the scheme's exact stationary law from the target.
inline double scheme_bias_floor(Scheme scheme, const Vector& spectrum, double h, double gamma,
                                double q = 2.0) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
        const ModeAffine am = affine_of_scheme(scheme, spectrum[i], h, gamma);
        const Eigen::Matrix2d s = stationary_cov(am);
        const double r =
            GaussianPhaseLaw::renyi_mode(q, Eigen::Vector2d::Zero(), s, spectrum[i]);
        if (std::isinf(r)) return divergence_infinity;
        total += r;
    }
    return total;
}

}  // namespace warmhmc
