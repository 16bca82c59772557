#pragma once

#include <memory>

#include "warmhmc/potentials/potential.hpp"

namespace warmhmc {

// Shifted potential V(x) + ||x - y||^2 / (2 h_prox): the negative log-density
// of the backward (restricted Gaussian) conditional in the proximal sampler.
// With h_prox = 1/(2 beta) the shifted target has alpha >= beta and
// beta <= 3 beta, so its condition number is at most 3.
// Gradient calls are forwarded to the base oracle, so they count against the
// base query counter (the paper's accounting currency) as well as this one.
class ProximalShiftedOracle final : public PotentialOracle {
  public:
    ProximalShiftedOracle(const PotentialOracle& base, Vector y, double h_prox)
        : PotentialOracle(base.dim(), meta_of(base, h_prox)),
          base_(base), y_(std::move(y)), h_prox_(h_prox) {
        if (y_.size() != base.dim())
            throw ConfigError("ProximalShiftedOracle: center dimension mismatch");
    }

    const PotentialOracle& base() const { return base_; }
    const Vector& center() const { return y_; }
    double h_prox() const { return h_prox_; }

    bool has_hessian() const override { return base_.has_hessian(); }
    bool has_third() const override { return base_.has_third(); }

  protected:
    double eval_impl(const Vector& x) const override {
        return base_.evaluate(x) + (x - y_).squaredNorm() / (2.0 * h_prox_);
    }
    void grad_impl(const Vector& x, Vector& out) const override {
        base_.gradient(x, out);
        out.noalias() += (x - y_) / h_prox_;
    }
    void hessian_impl(const Vector& x, const Vector& v, Vector& out) const override {
        base_.hessian_apply(x, v, out);
        out.noalias() += v / h_prox_;
    }
    void third_impl(const Vector& x, const Vector& v, Vector& out) const override {
        base_.third_apply(x, v, out);
    }

  private:
    static RegularityMeta meta_of(const PotentialOracle& base, double h_prox) {
        if (!(h_prox > 0.0)) throw ConfigError("ProximalShiftedOracle: h_prox must be > 0");
        const RegularityMeta& m = base.meta();
        RegularityMeta out = m;
        out.alpha = m.alpha + 1.0 / h_prox;
        out.beta = m.beta + 1.0 / h_prox;
        out.validate();
        return out;
    }

    const PotentialOracle& base_;
    Vector y_;
    double h_prox_;
};

inline ProximalShiftedOracle proximal_shift(const PotentialOracle& base, Vector y, double h_prox) {
    return ProximalShiftedOracle(base, std::move(y), h_prox);
}

// View of an inner potential in coordinates u = x - center, with the value at
// the center subtracted so the recentred potential is ~0 near its minimizer.
// Regularity metadata is translation invariant and carried over unchanged.
class RecenteredOracle final : public PotentialOracle {
  public:
    RecenteredOracle(const PotentialOracle& inner, Vector center)
        : PotentialOracle(inner.dim(), inner.meta()),
          inner_(inner), center_(std::move(center)) {
        if (center_.size() != inner.dim())
            throw ConfigError("RecenteredOracle: center dimension mismatch");
        value_at_center_ = inner_.evaluate(center_);
    }

    const Vector& center() const { return center_; }

    bool has_hessian() const override { return inner_.has_hessian(); }
    bool has_third() const override { return inner_.has_third(); }

  protected:
    double eval_impl(const Vector& u) const override {
        return inner_.evaluate(center_ + u) - value_at_center_;
    }
    void grad_impl(const Vector& u, Vector& out) const override {
        inner_.gradient(center_ + u, out);
    }
    void hessian_impl(const Vector& u, const Vector& v, Vector& out) const override {
        inner_.hessian_apply(center_ + u, v, out);
    }
    void third_impl(const Vector& u, const Vector& v, Vector& out) const override {
        inner_.third_apply(center_ + u, v, out);
    }

  private:
    const PotentialOracle& inner_;
    Vector center_;
    double value_at_center_ = 0.0;
};

// Proximal oracle: argmin of the shifted potential, by gradient descent with
// step 1/beta_shifted, run until ||grad|| <= tol (iteration cap 1e6).
inline Vector proximal_oracle(const ProximalShiftedOracle& shifted, double tol) {
    if (!(shifted.meta().alpha > 0.0))
        throw ConfigError("proximal_oracle: shifted potential must be strongly convex");
    if (!(tol > 0.0)) throw ConfigError("proximal_oracle: tol must be > 0");
    const double step = 1.0 / shifted.meta().beta;
    Vector x = shifted.center();
    Vector g(shifted.dim());
    constexpr long cap = 1000000;
    for (long it = 0; it < cap; ++it) {
        shifted.gradient(x, g);
        if (g.norm() <= tol) return x;
        x.noalias() -= step * g;
    }
    throw ConvergenceError("proximal_oracle: gradient descent did not reach tolerance");
}

}  // namespace warmhmc
