#pragma once

// RFC-4180 CSV emission: header row mandatory, CRLF record separators, fields
// quoted only when they contain a comma, quote, or line break.  Floating-point
// fields use the shortest round-trip decimal form so identical runs produce
// byte-identical files.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include "warmhmc/core/errors.hpp"

namespace warmhmc {

inline std::string csv_format(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    if (res.ec != std::errc()) throw DomainError("csv_format: double conversion failed");
    return std::string(buf, res.ptr);
}

inline std::string csv_format(long v) { return std::to_string(v); }
inline std::string csv_format(std::uint64_t v) { return std::to_string(v); }

inline std::string csv_quote(const std::string& field) {
    const bool needs = field.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header) : path_(path) {
        if (header.empty()) throw ConfigError("CsvWriter: header must be nonempty");
        out_.open(path, std::ios::binary | std::ios::trunc);
        if (!out_) throw ConfigError("CsvWriter: cannot open " + path);
        columns_ = header.size();
        write_record(header);
    }

    // Fields are already formatted; empty string = absent value.
    void row(const std::vector<std::string>& fields) {
        if (fields.size() != columns_)
            throw ConfigError("CsvWriter: row width mismatch in " + path_);
        write_record(fields);
    }

    void close() {
        if (out_.is_open()) {
            out_.close();
            if (!out_) throw ConfigError("CsvWriter: write failure on " + path_);
        }
    }

    const std::string& path() const { return path_; }

  private:
    void write_record(const std::vector<std::string>& fields) {
        std::string line;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) line += ',';
            line += csv_quote(fields[i]);
        }
        line += "\r\n";
        out_.write(line.data(), static_cast<std::streamsize>(line.size()));
    }

    std::string path_;
    std::ofstream out_;
    std::size_t columns_ = 0;
};

}  // namespace warmhmc
