#pragma once

// Tail check for the Gaussian chaos ‖T[ξ,ξ]‖ of a symmetric 3-tensor T with
// {1,2},{3}-operator-norm bound β̄: the (1−δ) quantile over ξ ~ N(0, I) must
// stay below 8·β̄·(sqrt(d) + log(1/δ)).

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "warmhmc/core/errors.hpp"
#include "warmhmc/core/phase_point.hpp"
#include "warmhmc/core/rng.hpp"
#include "warmhmc/potentials/potential.hpp"

namespace warmhmc {

// A chaos source is the quadratic-form map ξ ↦ T[ξ,ξ] together with the norm
// bound β̄ the tail is measured against.
struct ChaosTensor {
    std::function<Vector(const Vector&)> apply;
    double beta_bar = 0.0;
    long dim = 0;
};

// Diagonal tensor T_iii = β̄ (all other entries 0): T[ξ,ξ]_i = β̄·ξ_i².
inline ChaosTensor make_diagonal_chaos_tensor(long d, double beta_bar) {
    if (d < 1) throw ConfigError("make_diagonal_chaos_tensor: d must be >= 1");
    if (!(beta_bar >= 0.0)) throw ConfigError("make_diagonal_chaos_tensor: beta_bar must be >= 0");
    return {[beta_bar](const Vector& xi) { return Vector(beta_bar * xi.array().square()); },
            beta_bar, d};
}

// Third-derivative tensor of an oracle evaluated at the point x where it is
// largest in the coordinatewise sense, with β̄ from the declared metadata.
inline ChaosTensor make_oracle_chaos_tensor(const PotentialOracle& oracle, const Vector& x) {
    if (!oracle.has_third())
        throw ConfigError("make_oracle_chaos_tensor: oracle exposes no third derivative");
    if (!oracle.meta().has_beta_h2)
        throw ConfigError("make_oracle_chaos_tensor: oracle declares no beta_h2");
    if (x.size() != oracle.dim()) throw ConfigError("make_oracle_chaos_tensor: dim mismatch");
    return {[&oracle, x](const Vector& xi) {
                Vector out(oracle.dim());
                oracle.third_apply(x, xi, out);
                return out;
            },
            oracle.meta().beta_h2, oracle.dim()};
}

struct ChaosQuantileRow {
    double delta = 0.0;
    double quantile = 0.0;
    double bound = 0.0;  // 8·β̄·(sqrt(d) + log(1/δ))
};

struct ChaosTailResult {
    std::vector<ChaosQuantileRow> table;
    long trials = 0;
    bool all_below_bound = true;
};

inline ChaosTailResult chaos_tail_check(const ChaosTensor& tensor, long trials,
                                        const std::vector<double>& deltas, RngStream& rng) {
    if (!tensor.apply) throw ConfigError("chaos_tail_check: tensor map is empty");
    if (deltas.empty()) throw ConfigError("chaos_tail_check: delta grid is empty");
    double delta_min = 1.0;
    for (double delta : deltas) {
        if (!(delta > 0.0 && delta < 1.0))
            throw ConfigError("chaos_tail_check: deltas must lie in (0,1)");
        delta_min = std::min(delta_min, delta);
    }
    if (static_cast<double>(trials) < 10.0 / delta_min)
        throw ConfigError("chaos_tail_check: trials must be >= 10/min(delta)");

    std::vector<double> norms(static_cast<std::size_t>(trials));
    for (long t = 0; t < trials; ++t)
        norms[static_cast<std::size_t>(t)] = tensor.apply(rng.normal_vector(tensor.dim)).norm();
    std::sort(norms.begin(), norms.end());

    ChaosTailResult out;
    out.trials = trials;
    const double sqrt_d = std::sqrt(static_cast<double>(tensor.dim));
    for (double delta : deltas) {
        ChaosQuantileRow row;
        row.delta = delta;
        std::size_t idx = static_cast<std::size_t>(
            std::ceil((1.0 - delta) * static_cast<double>(trials)));
        if (idx > 0) --idx;  // empirical quantile: smallest value with rank ≥ (1−δ)·n
        row.quantile = norms[idx];
        row.bound = 8.0 * tensor.beta_bar * (sqrt_d + std::log(1.0 / delta));
        out.all_below_bound = out.all_below_bound && row.quantile <= row.bound;
        out.table.push_back(row);
    }
    return out;
}

}  // namespace warmhmc
