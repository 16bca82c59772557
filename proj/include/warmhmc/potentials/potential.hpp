#pragma once

#include <atomic>
#include <cstdint>

#include "warmhmc/core/errors.hpp"
#include "warmhmc/core/phase_point.hpp"
#include "warmhmc/core/regularity.hpp"

namespace warmhmc {

// Target potential V with value/gradient access, optional Hessian and
// third-derivative actions, regularity metadata, and a gradient-query counter.
// The counter is the complexity currency of every experiment: it increments by
// exactly one per gradient call, is atomic (oracles are shared read-only across
// chains), and never decrements. Concrete targets implement the *_impl hooks.
class PotentialOracle {
  public:
    PotentialOracle(Eigen::Index d, RegularityMeta meta) : d_(d), meta_(meta) {
        if (d < 1) throw ConfigError("PotentialOracle: dimension must be >= 1");
    }
    virtual ~PotentialOracle() = default;

    PotentialOracle(const PotentialOracle&) = delete;
    PotentialOracle& operator=(const PotentialOracle&) = delete;

    Eigen::Index dim() const { return d_; }
    const RegularityMeta& meta() const { return meta_; }

    double evaluate(const Vector& x) const {
        check_dim(x);
        return eval_impl(x);
    }

    void gradient(const Vector& x, Vector& out) const {
        check_dim(x);
        out.resize(d_);
        queries_.fetch_add(1, std::memory_order_relaxed);
        grad_impl(x, out);
    }

    Vector gradient(const Vector& x) const {
        Vector g(d_);
        gradient(x, g);
        return g;
    }

    virtual bool has_hessian() const { return false; }
    virtual bool has_third() const { return false; }

    // out = Hessian(x) * v.
    void hessian_apply(const Vector& x, const Vector& v, Vector& out) const {
        check_dim(x);
        check_dim(v);
        out.resize(d_);
        hessian_impl(x, v, out);
    }

    // out = ThirdDerivative(x)[v, v].
    void third_apply(const Vector& x, const Vector& v, Vector& out) const {
        check_dim(x);
        check_dim(v);
        out.resize(d_);
        third_impl(x, v, out);
    }

    std::uint64_t gradient_queries() const { return queries_.load(std::memory_order_relaxed); }

  protected:
    virtual double eval_impl(const Vector& x) const = 0;
    virtual void grad_impl(const Vector& x, Vector& out) const = 0;
    virtual void hessian_impl(const Vector&, const Vector&, Vector&) const {
        throw ConfigError("PotentialOracle: Hessian action not available for this target");
    }
    virtual void third_impl(const Vector&, const Vector&, Vector&) const {
        throw ConfigError("PotentialOracle: third-derivative action not available for this target");
    }

    void check_dim(const Vector& x) const {
        if (x.size() != d_) throw ConfigError("PotentialOracle: input dimension mismatch");
    }

  private:
    Eigen::Index d_;
    RegularityMeta meta_;
    mutable std::atomic<std::uint64_t> queries_{0};
};

}  // namespace warmhmc
