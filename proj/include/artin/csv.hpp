#pragma once

// CSV and plot-file emission. Numbers are rendered locale-independently with
// 15 significant digits; fields are quoted per RFC 4180 only when needed.

#include <charconv>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <string>
#include <vector>

#include "common.hpp"

namespace artin {

inline std::string csv_number(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 15);
    return std::string(buf, res.ptr);
}

inline std::string csv_number(long long x) { return std::to_string(x); }
inline std::string csv_number(std::uint64_t x) { return std::to_string(x); }

inline std::string csv_escape(const std::string& field) {
    bool needs_quotes = false;
    for (char c : field)
        if (c == ',' || c == '"' || c == '\n' || c == '\r') needs_quotes = true;
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string iso_timestamp_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class CsvFile {
public:
    CsvFile(const std::string& path, bool with_timestamp) : out_(path) {
        if (!out_) throw config_error("cannot open output file '" + path + "'");
        if (with_timestamp) out_ << "# generated " << iso_timestamp_now() << "\n";
    }

    void comment(const std::string& text) { out_ << "# " << text << "\n"; }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ",";
            out_ << csv_escape(cells[i]);
        }
        out_ << "\n";
    }

private:
    std::ofstream out_;
};

// Two-column whitespace-separated data for generic plotting tools.
class PlotFile {
public:
    PlotFile(const std::string& path, bool with_timestamp) : out_(path) {
        if (!out_) throw config_error("cannot open plot file '" + path + "'");
        if (with_timestamp) out_ << "# generated " << iso_timestamp_now() << "\n";
    }

    void point(double x, double y) { out_ << csv_number(x) << " " << csv_number(y) << "\n"; }

private:
    std::ofstream out_;
};

}  // namespace artin
