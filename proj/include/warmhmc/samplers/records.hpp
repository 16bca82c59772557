#pragma once

#include <cstdint>
#include <limits>

namespace warmhmc {

// Per-iteration chain metrics. `accepted` is -1 where no accept/reject
// decision exists (unadjusted chains); `divergence` is NaN when no exact
// divergence is being tracked (non-Gaussian targets).
struct ChainRecord {
    long iteration = 0;
    long grad_queries = 0;
    int accepted = -1;
    double norm_x = 0.0;
    double hamiltonian = 0.0;
    double divergence = std::numeric_limits<double>::quiet_NaN();

    bool has_accept_flag() const { return accepted >= 0; }
    bool has_divergence() const { return divergence == divergence; }
};

}  // namespace warmhmc
