#pragma once

// Least-squares helpers for the order-of-accuracy and scaling experiments.

#include <cmath>
#include <cstddef>
#include <vector>

#include "warmhmc/core/errors.hpp"

namespace warmhmc {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Ordinary least squares y ≈ intercept + slope·x.
inline FitResult fit_linear(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw ConfigError("fit_linear: size mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw ConfigError("fit_linear: need at least 2 points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw ConfigError("fit_linear: regressor has zero variance");
    FitResult out;
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    const double ss_res = syy - sxy * sxy / sxx;
    out.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return out;
}

// Fits y ≈ C·x^slope through log-log regression.  All inputs must be > 0.
inline FitResult fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw ConfigError("fit_power_law: size mismatch");
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0 && y[i] > 0.0))
            throw DomainError("fit_power_law: inputs must be strictly positive");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    return fit_linear(lx, ly);
}

}  // namespace warmhmc
