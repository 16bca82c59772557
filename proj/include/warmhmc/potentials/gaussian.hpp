#pragma once

#include <memory>

#include "warmhmc/potentials/potential.hpp"

namespace warmhmc {

// Diagonal quadratic target V(x) = 1/2 sum_i a_i x_i^2 with eigenvalues
// a_i > 0. All regularity constants are exact: alpha = min a, beta = max a,
// and both Hessian-Lipschitz constants vanish.
class GaussianPotential final : public PotentialOracle {
  public:
    explicit GaussianPotential(Vector spectrum)
        : PotentialOracle(spectrum.size(), meta_of(spectrum)), spectrum_(std::move(spectrum)) {}

    const Vector& spectrum() const { return spectrum_; }

    bool has_hessian() const override { return true; }
    bool has_third() const override { return true; }

  protected:
    double eval_impl(const Vector& x) const override {
        return 0.5 * spectrum_.cwiseProduct(x).dot(x);
    }
    void grad_impl(const Vector& x, Vector& out) const override {
        out.noalias() = spectrum_.cwiseProduct(x);
    }
    void hessian_impl(const Vector&, const Vector& v, Vector& out) const override {
        out.noalias() = spectrum_.cwiseProduct(v);
    }
    void third_impl(const Vector&, const Vector&, Vector& out) const override { out.setZero(); }

  private:
    static RegularityMeta meta_of(const Vector& spectrum) {
        if (spectrum.size() < 1) throw ConfigError("GaussianPotential: empty spectrum");
        if (!(spectrum.minCoeff() > 0.0))
            throw DomainError("GaussianPotential: eigenvalues must be positive");
        return RegularityMeta(spectrum.minCoeff(), spectrum.maxCoeff(), 0.0, 0.0);
    }

    Vector spectrum_;
};

inline std::shared_ptr<GaussianPotential> make_gaussian(Vector spectrum) {
    return std::make_shared<GaussianPotential>(std::move(spectrum));
}

inline std::shared_ptr<GaussianPotential> make_isotropic_gaussian(Eigen::Index d, double a = 1.0) {
    return make_gaussian(Vector::Constant(d, a));
}

// Downcast helper: non-null iff the oracle is the diagonal quadratic family
// (the exact Hamiltonian flow and exact-law machinery require it).
inline const GaussianPotential* as_gaussian(const PotentialOracle& oracle) {
    return dynamic_cast<const GaussianPotential*>(&oracle);
}

}  // namespace warmhmc
