#pragma once

#include <cmath>
#include <limits>

#include "warmhmc/core/errors.hpp"

namespace warmhmc {

// Regularity metadata of a potential: strong-convexity lower bound alpha
// (may be <= 0), smoothness beta > 0, and the two Hessian-Lipschitz constants
// (operator norm and {1,2},{3} tensor norm flavours). Zero in beta_h1/beta_h2
// means "exactly zero" for quadratics; use has_* to distinguish "not supplied".
struct RegularityMeta {
    double alpha = 0.0;
    double beta = 0.0;
    double beta_h1 = 0.0;
    double beta_h2 = 0.0;
    bool has_beta_h1 = false;
    bool has_beta_h2 = false;

    RegularityMeta() = default;
    RegularityMeta(double alpha_, double beta_) : alpha(alpha_), beta(beta_) { validate(); }
    RegularityMeta(double alpha_, double beta_, double bh1, double bh2)
        : alpha(alpha_), beta(beta_), beta_h1(bh1), beta_h2(bh2),
          has_beta_h1(true), has_beta_h2(true) {
        validate();
    }

    void validate() const {
        if (!(beta > 0.0)) throw ConfigError("RegularityMeta: beta must be > 0");
        if (!(alpha <= beta)) throw ConfigError("RegularityMeta: alpha must be <= beta");
        if (beta_h1 < 0.0 || beta_h2 < 0.0)
            throw ConfigError("RegularityMeta: Hessian-Lipschitz constants must be >= 0");
    }

    bool strongly_convex() const { return alpha > 0.0; }

    // kappa = beta/alpha, defined only for alpha > 0.
    double kappa() const {
        if (!strongly_convex()) throw ConfigError("kappa requires alpha > 0");
        return beta / alpha;
    }

    // kappa_h2 = beta_h2 / alpha^{3/2}, the third-order condition number.
    double kappa_h2() const {
        if (!strongly_convex()) throw ConfigError("kappa_h2 requires alpha > 0");
        return beta_h2 / std::pow(alpha, 1.5);
    }
};

// R_infty bound for the cold start N(0, beta^{-1} I) against the target:
// (d/2) log(beta/alpha) for alpha > 0, +infinity when alpha = 0.
inline double initialization_renyi_bound(const RegularityMeta& meta, long d) {
    if (meta.alpha < 0.0 || !(meta.beta > 0.0) || d < 1)
        throw ConfigError("initialization_renyi_bound: need alpha >= 0, beta > 0, d >= 1");
    if (meta.alpha == 0.0) return std::numeric_limits<double>::infinity();
    return 0.5 * static_cast<double>(d) * std::log(meta.beta / meta.alpha);
}

}  // namespace warmhmc
