#pragma once

// Flat key-value configuration with dotted section names.
//
// Grammar (line oriented, UTF-8):
//   file    := line*
//   line    := blank | comment | entry
//   comment := '#' .*
//   entry   := key '=' value      (whitespace around key and value trimmed)
//   key     := dotted identifier, e.g. "schedule.c_w"
//   value   := rest of the line, verbatim after trimming
//
// Keys keep insertion order; duplicates are an error, so parse → serialize →
// parse is the identity on the entries.  Environment variables can override
// existing keys: key "a.b_c" maps to WARMHMC_A_B_C.

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "warmhmc/core/errors.hpp"

namespace warmhmc {

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace detail

class KeyValueConfig {
  public:
    KeyValueConfig() = default;

    static KeyValueConfig parse(const std::string& text) {
        KeyValueConfig cfg;
        std::istringstream in(text);
        std::string line;
        long lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            const std::string stripped = detail::trim(line);
            if (stripped.empty() || stripped[0] == '#') continue;
            const std::size_t eq = stripped.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
            std::string key = detail::trim(std::string_view(stripped).substr(0, eq));
            std::string value = detail::trim(std::string_view(stripped).substr(eq + 1));
            if (key.empty())
                throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
            cfg.set_new(std::move(key), std::move(value), lineno);
        }
        return cfg;
    }

    static KeyValueConfig load(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ConfigError("cannot open config file: " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse(buf.str());
    }

    std::string serialize() const {
        std::string out;
        for (const auto& [k, v] : entries_) {
            out += k;
            out += " = ";
            out += v;
            out += '\n';
        }
        return out;
    }

    bool has(const std::string& key) const { return index_.count(key) != 0; }

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

    std::string get_string(const std::string& key) const {
        auto it = index_.find(key);
        if (it == index_.end()) throw ConfigError("config: missing key '" + key + "'");
        return entries_[it->second].second;
    }
    std::string get_string(const std::string& key, const std::string& fallback) const {
        return has(key) ? get_string(key) : fallback;
    }

    double get_double(const std::string& key) const { return parse_double(key, get_string(key)); }
    double get_double(const std::string& key, double fallback) const {
        return has(key) ? get_double(key) : fallback;
    }

    long get_long(const std::string& key) const { return parse_long(key, get_string(key)); }
    long get_long(const std::string& key, long fallback) const {
        return has(key) ? get_long(key) : fallback;
    }

    bool get_bool(const std::string& key) const {
        const std::string v = get_string(key);
        if (v == "true" || v == "1") return true;
        if (v == "false" || v == "0") return false;
        throw ConfigError("config: key '" + key + "' is not a bool: " + v);
    }
    bool get_bool(const std::string& key, bool fallback) const {
        return has(key) ? get_bool(key) : fallback;
    }

    std::vector<long> get_long_list(const std::string& key) const {
        std::vector<long> out;
        for (const std::string& tok : split_list(get_string(key)))
            out.push_back(parse_long(key, tok));
        return out;
    }

    std::vector<double> get_double_list(const std::string& key) const {
        std::vector<double> out;
        for (const std::string& tok : split_list(get_string(key)))
            out.push_back(parse_double(key, tok));
        return out;
    }

    // Inserts or overwrites.
    void set(const std::string& key, const std::string& value) {
        auto it = index_.find(key);
        if (it == index_.end()) {
            index_.emplace(key, entries_.size());
            entries_.emplace_back(key, value);
        } else {
            entries_[it->second].second = value;
        }
    }

    // Overrides existing keys from the environment: "a.b_c" ← $WARMHMC_A_B_C.
    // Returns the keys that were overridden.
    std::vector<std::string> apply_env_overrides(const std::string& prefix = "WARMHMC_") {
        std::vector<std::string> changed;
        for (auto& [key, value] : entries_) {
            std::string env_name = prefix;
            for (char c : key)
                env_name += c == '.' ? '_' : static_cast<char>(
                                                 std::toupper(static_cast<unsigned char>(c)));
            if (const char* env = std::getenv(env_name.c_str())) {
                value = env;
                changed.push_back(key);
            }
        }
        return changed;
    }

  private:
    void set_new(std::string key, std::string value, long lineno) {
        if (index_.count(key))
            throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" +
                              key + "'");
        index_.emplace(key, entries_.size());
        entries_.emplace_back(std::move(key), std::move(value));
    }

    static std::vector<std::string> split_list(const std::string& raw) {
        std::vector<std::string> out;
        std::string cur;
        std::istringstream in(raw);
        while (std::getline(in, cur, ',')) {
            const std::string tok = detail::trim(cur);
            if (!tok.empty()) out.push_back(tok);
        }
        return out;
    }

    static double parse_double(const std::string& key, const std::string& v) {
        try {
            std::size_t pos = 0;
            const double x = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return x;
        } catch (const std::exception&) {
            throw ConfigError("config: key '" + key + "' is not a number: " + v);
        }
    }

    static long parse_long(const std::string& key, const std::string& v) {
        try {
            std::size_t pos = 0;
            const long x = std::stol(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return x;
        } catch (const std::exception&) {
            throw ConfigError("config: key '" + key + "' is not an integer: " + v);
        }
    }

    std::vector<std::pair<std::string, std::string>> entries_;
    std::map<std::string, std::size_t> index_;
};

}  // namespace warmhmc
