#pragma once

#include <cmath>
#include <memory>
#include <numbers>

#include "warmhmc/potentials/potential.hpp"

namespace warmhmc {

namespace detail {

// log cosh(z), stable for large |z|: |z| + log(1 + exp(-2|z|)) - log 2.
inline double log_cosh(double z) {
    const double a = std::abs(z);
    return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

// sech^2(z) = (2 e^{-|z|} / (1 + e^{-2|z|}))^2, stable for large |z|.
inline double sech2(double z) {
    const double e = std::exp(-std::abs(z));
    const double s = 2.0 * e / (1.0 + e * e);
    return s * s;
}

}  // namespace detail

// Smooth, strongly convex, Hessian-Lipschitz non-quadratic test target
//   V(x) = (a/2) ||x||^2 + b * sum_i log cosh(c x_i),   a > 0, b >= 0, c > 0.
// All regularity constants are analytic: alpha = a, beta = a + b c^2, and both
// Hessian-Lipschitz constants are bounded by b c^3 (per-coordinate third
// derivative -2 b c^3 sech^2 tanh has magnitude at most 2/(3 sqrt 3) b c^3,
// and the third-derivative tensor is diagonal). Minimized at the origin.
class LogCoshPotential final : public PotentialOracle {
  public:
    LogCoshPotential(double a, double b, double c, Eigen::Index d)
        : PotentialOracle(d, meta_of(a, b, c)), a_(a), b_(b), c_(c) {}

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }

    bool has_hessian() const override { return true; }
    bool has_third() const override { return true; }

  protected:
    double eval_impl(const Vector& x) const override {
        double v = 0.5 * a_ * x.squaredNorm();
        if (b_ != 0.0)
            for (Eigen::Index i = 0; i < x.size(); ++i) v += b_ * detail::log_cosh(c_ * x[i]);
        return v;
    }

    void grad_impl(const Vector& x, Vector& out) const override {
        if (b_ == 0.0) {
            out.noalias() = a_ * x;
            return;
        }
        const double bc = b_ * c_;
        for (Eigen::Index i = 0; i < x.size(); ++i)
            out[i] = a_ * x[i] + bc * std::tanh(c_ * x[i]);
    }

    void hessian_impl(const Vector& x, const Vector& v, Vector& out) const override {
        const double bc2 = b_ * c_ * c_;
        for (Eigen::Index i = 0; i < x.size(); ++i)
            out[i] = (a_ + bc2 * detail::sech2(c_ * x[i])) * v[i];
    }

    void third_impl(const Vector& x, const Vector& v, Vector& out) const override {
        const double bc3 = b_ * c_ * c_ * c_;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            const double z = c_ * x[i];
            out[i] = -2.0 * bc3 * detail::sech2(z) * std::tanh(z) * v[i] * v[i];
        }
    }

  private:
    static RegularityMeta meta_of(double a, double b, double c) {
        if (!(a > 0.0)) throw DomainError("LogCoshPotential: a must be > 0");
        if (b < 0.0) throw DomainError("LogCoshPotential: b must be >= 0");
        if (!(c > 0.0)) throw DomainError("LogCoshPotential: c must be > 0");
        const double bc3 = b * c * c * c;
        return RegularityMeta(a, a + b * c * c, bc3, bc3);
    }

    double a_, b_, c_;
};

inline std::shared_ptr<LogCoshPotential> make_logcosh_perturbed(double a, double b, double c,
                                                                Eigen::Index d) {
    return std::make_shared<LogCoshPotential>(a, b, c, d);
}

}  // namespace warmhmc
