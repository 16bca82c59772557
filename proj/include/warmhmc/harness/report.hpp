#pragma once

// Offline report over a completed run directory: re-reads the manifest,
// re-checksums every artifact, and prints the per-criterion verdicts exactly
// as recorded.  Never modifies the directory.

#include <ostream>
#include <string>
#include <vector>

#include "warmhmc/harness/manifest.hpp"

namespace warmhmc {

struct ReportSummary {
    bool manifest_ok = false;
    bool all_criteria_pass = false;
    std::vector<std::string> tampered;  // artifacts failing checksum verification
    long criteria = 0;

    // 0: verified and all criteria pass; 1: criterion failure or tampering.
    int exit_code() const {
        return (manifest_ok && all_criteria_pass && tampered.empty()) ? 0 : 1;
    }
};

inline ReportSummary report_run(const std::string& out_dir, std::ostream& os) {
    ReportSummary summary;
    const Manifest m = Manifest::load(out_dir);
    summary.manifest_ok = true;

    os << "run directory : " << out_dir << "\n";
    os << "experiment    : " << m.kv.get_string("experiment", "?") << "\n";
    os << "version       : " << m.kv.get_string("version", "?") << "\n";
    os << "seeds         : " << m.kv.get_string("seeds", "?");
    const std::string offset = m.kv.get_string("seed_offset", "0");
    if (offset != "0") os << " (offset " << offset << ")";
    os << "\n\n";

    summary.all_criteria_pass = true;
    for (const auto& [key, value] : m.kv.entries()) {
        const std::string prefix = "criterion.";
        const std::string suffix = ".pass";
        if (key.rfind(prefix, 0) != 0) continue;
        if (key.size() <= prefix.size() + suffix.size()) continue;
        if (key.compare(key.size() - suffix.size(), suffix.size(), suffix) != 0) continue;
        const std::string name =
            key.substr(prefix.size(), key.size() - prefix.size() - suffix.size());
        const bool pass = value == "true";
        summary.all_criteria_pass = summary.all_criteria_pass && pass;
        ++summary.criteria;
        os << "criterion " << name << ": " << (pass ? "PASS" : "FAIL") << "\n";
        const long n = m.kv.get_long(prefix + name + ".checks", 0);
        for (long i = 0; i < n; ++i) {
            const std::string line =
                m.kv.get_string(prefix + name + ".check." + std::to_string(i), "");
            if (!line.empty()) os << "    " << line << "\n";
        }
    }
    if (summary.criteria == 0) {
        summary.all_criteria_pass = false;
        os << "no criteria recorded in manifest\n";
    }

    summary.tampered = m.verify_files(out_dir);
    long verified = 0;
    for (const auto& [key, value] : m.kv.entries())
        if (key.rfind("file.", 0) == 0) ++verified;
    verified -= static_cast<long>(summary.tampered.size());
    os << "\nartifacts: " << verified << " verified";
    if (!summary.tampered.empty()) {
        os << ", " << summary.tampered.size() << " FAILED checksum:\n";
        for (const std::string& f : summary.tampered) os << "    " << f << "\n";
    } else {
        os << "\n";
    }
    os << "RESULT: " << (summary.exit_code() == 0 ? "PASS" : "FAIL") << "\n";
    return summary;
}

}  // namespace warmhmc
