#pragma once

// Run manifest: a key-value file pinning the library version, the effective
// configuration (after environment overrides and seed offset), every schedule
// constant, the emitted artifact files with their checksums, and the
// per-criterion results.  No timestamps or host details: a rerun with the
// same inputs must reproduce the manifest byte for byte.

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "warmhmc/harness/checksum.hpp"
#include "warmhmc/harness/config.hpp"
#include "warmhmc/harness/criteria.hpp"
#include "warmhmc/harness/csv.hpp"
#include "warmhmc/version.hpp"

namespace warmhmc {

inline const char* manifest_filename() { return "manifest.txt"; }

struct Manifest {
    KeyValueConfig kv;

    static Manifest build(const std::string& experiment, const KeyValueConfig& config,
                          const std::vector<long>& seeds, long seed_offset,
                          const std::vector<std::string>& files, const std::string& out_dir,
                          const std::vector<CriterionResult>& criteria) {
        Manifest m;
        m.kv.set("version", version_string);
        m.kv.set("experiment", experiment);
        m.kv.set("seed_offset", std::to_string(seed_offset));
        std::string seed_list;
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            if (i) seed_list += ",";
            seed_list += std::to_string(seeds[i]);
        }
        m.kv.set("seeds", seed_list);
        for (const auto& [k, v] : config.entries()) m.kv.set("config." + k, v);
        for (const std::string& f : files)
            m.kv.set("file." + f,
                      checksum_hex(checksum_file((std::filesystem::path(out_dir) / f).string())));
        for (const CriterionResult& c : criteria) {
            const std::string base = "criterion." + c.name;
            m.kv.set(base + ".pass", c.pass ? "true" : "false");
            // Transient (wall-clock) checks gate the verdict but are not
            // serialized, keeping reruns byte-identical.
            std::size_t persistent = 0;
            for (const CheckLine& line : c.checks) persistent += line.transient ? 0 : 1;
            m.kv.set(base + ".checks", std::to_string(persistent));
            std::size_t index = 0;
            for (const CheckLine& line : c.checks) {
                if (line.transient) continue;
                m.kv.set(base + ".check." + std::to_string(index++),
                         line.label + " | measured " + csv_format(line.measured) + " | " +
                             line.relation + " bound " + csv_format(line.bound) + " | " +
                             (line.ok ? "ok" : "VIOLATED"));
            }
        }
        return m;
    }

    void write(const std::string& out_dir) const {
        const auto path = std::filesystem::path(out_dir) / manifest_filename();
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("manifest: cannot write " + path.string());
        const std::string text = kv.serialize();
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!out) throw ConfigError("manifest: write failure on " + path.string());
    }

    static Manifest load(const std::string& out_dir) {
        const auto path = std::filesystem::path(out_dir) / manifest_filename();
        if (!std::filesystem::exists(path))
            throw ConfigError("manifest: not found in " + out_dir);
        Manifest m;
        m.kv = KeyValueConfig::load(path.string());
        return m;
    }

    // Returns the artifact files whose current checksum disagrees with the
    // recorded one (missing files included).
    std::vector<std::string> verify_files(const std::string& out_dir) const {
        std::vector<std::string> bad;
        for (const auto& [k, v] : kv.entries()) {
            if (k.rfind("file.", 0) != 0) continue;
            const std::string name = k.substr(5);
            const auto path = std::filesystem::path(out_dir) / name;
            if (!std::filesystem::exists(path)) {
                bad.push_back(name + " (missing)");
                continue;
            }
            if (checksum_hex(checksum_file(path.string())) != v) bad.push_back(name);
        }
        return bad;
    }
};

}  // namespace warmhmc
