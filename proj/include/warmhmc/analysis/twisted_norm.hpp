#pragma once

// Twisted squared norm L(δx, δp) = ‖δx‖² + ‖δx + (2/γ)·δp‖², the Lyapunov
// function under which the kinetic dynamics contract in the high-friction
// regime.  It is equivalent to the product norm ‖δx‖² + (4/γ²)‖δp‖² within a
// factor of 3 either way.

#include "warmhmc/core/errors.hpp"
#include "warmhmc/core/phase_point.hpp"

namespace warmhmc {

struct TwistedNorm {
    double gamma = 0.0;

    explicit TwistedNorm(double g) : gamma(g) {
        if (!(g > 0.0)) throw ConfigError("TwistedNorm: gamma must be > 0");
    }

    double operator()(const Vector& dx, const Vector& dp) const {
        return dx.squaredNorm() + (dx + (2.0 / gamma) * dp).squaredNorm();
    }

    double operator()(const PhasePoint& a, const PhasePoint& b) const {
        return (*this)(Vector(a.x - b.x), Vector(a.p - b.p));
    }
};

}  // namespace warmhmc
