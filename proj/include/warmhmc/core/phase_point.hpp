#pragma once

#include <Eigen/Core>

#include "warmhmc/core/errors.hpp"

namespace warmhmc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Position/momentum pair (x, p) in R^d x R^d: the state of every chain.
struct PhasePoint {
    Vector x;
    Vector p;

    PhasePoint() = default;
    PhasePoint(Vector x_, Vector p_) : x(std::move(x_)), p(std::move(p_)) {
        if (x.size() != p.size() || x.size() < 1)
            throw ConfigError("PhasePoint: x and p must share a length d >= 1");
    }

    Eigen::Index dim() const { return x.size(); }

    bool finite() const { return x.allFinite() && p.allFinite(); }
};

}  // namespace warmhmc
