#pragma once

#include <stdexcept>
#include <string>

namespace warmhmc {

// Misconfiguration: dimension mismatches, invalid parameters, violated
// preconditions. Distinct from numerical failures below.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Domain errors: inputs outside an operation's mathematical domain
// (non-PD covariance, nonpositive eigenvalue, operator norm >= 1, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A trajectory coordinate exceeded the blowup threshold. Carries the index of
// the integrator step (and, where applicable, the chain iteration) at fault.
struct BlowupError : std::runtime_error {
    BlowupError(long step_index_, long iteration_ = -1)
        : std::runtime_error("numerical blowup at integrator step " +
                             std::to_string(step_index_) +
                             (iteration_ >= 0
                                  ? " (chain iteration " + std::to_string(iteration_) + ")"
                                  : std::string{})),
          step_index(step_index_),
          iteration(iteration_) {}
    long step_index;
    long iteration;
};

// An iterative solver (proximal gradient descent, shooting Newton, reference
// flow refinement) failed to reach its tolerance within its cap.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Coordinate magnitude beyond which a trajectory is declared blown up.
inline constexpr double blowup_threshold = 1e12;

}  // namespace warmhmc
