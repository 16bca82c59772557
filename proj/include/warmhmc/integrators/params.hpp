#pragma once

#include <cmath>

#include "warmhmc/core/errors.hpp"

namespace warmhmc {

// Inner step size h and step count K of one leapfrog proposal. The horizon
// T = K h is derived, never stored independently.
struct LeapfrogParams {
    double h;
    long K;

    LeapfrogParams(double h_, long K_) : h(h_), K(K_) {
        if (!(h > 0.0)) throw ConfigError("LeapfrogParams: h must be > 0");
        if (K < 1) throw ConfigError("LeapfrogParams: K must be >= 1");
    }

    double T() const { return static_cast<double>(K) * h; }

    static LeapfrogParams from_horizon(double T, double h) {
        if (!(T > 0.0) || !(h > 0.0)) throw ConfigError("LeapfrogParams: T, h must be > 0");
        return LeapfrogParams(h, static_cast<long>(std::llround(T / h)));
    }
};

// Partial momentum refreshment coefficients for friction gamma and step h:
//   p -> decay * p + noise_scale * xi,  xi ~ N(0, I),
// with decay = exp(-gamma h / 2) and noise_scale = sqrt(1 - exp(-gamma h)),
// so decay^2 + noise_scale^2 = 1 and N(0, I) is preserved. gamma = 0 is the
// deterministic edge (decay 1, no noise).
struct FrictionParams {
    double gamma;
    double h;
    double decay;
    double noise_scale;

    FrictionParams(double gamma_, double h_) : gamma(gamma_), h(h_) {
        if (gamma < 0.0) throw ConfigError("FrictionParams: gamma must be >= 0");
        if (!(h > 0.0)) throw ConfigError("FrictionParams: h must be > 0");
        decay = std::exp(-gamma * h / 2.0);
        noise_scale = std::sqrt(-std::expm1(-gamma * h));
    }
};

}  // namespace warmhmc
