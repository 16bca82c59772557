#pragma once

// Pass/fail bookkeeping for the acceptance-criteria suite.  A criterion is a
// named bundle of individual checks, each comparing a measured statistic
// against a bound.

#include <string>
#include <vector>

namespace warmhmc {

struct CheckLine {
    std::string label;
    double measured = 0.0;
    double bound = 0.0;
    // How measured relates to bound when the check passes: "<=", ">=", "in"
    // (bound is the half-width of a symmetric window), or "==" (exact).
    std::string relation = "<=";
    bool ok = false;
    // Transient measurements (wall-clock runtime) still gate the verdict but
    // are excluded from the manifest so reruns stay byte-identical.
    bool transient = false;
};

struct CriterionResult {
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::vector<CheckLine> checks;

    void add(const std::string& label, double measured, double bound, const std::string& relation,
             bool ok) {
        checks.push_back({label, measured, bound, relation, ok, false});
    }

    void add_transient(const std::string& label, double measured, double bound,
                       const std::string& relation, bool ok) {
        checks.push_back({label, measured, bound, relation, ok, true});
    }

    void finalize() {
        pass = !checks.empty();
        for (const CheckLine& c : checks) pass = pass && c.ok;
    }
};

}  // namespace warmhmc
