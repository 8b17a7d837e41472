#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace topomode::io {

/// Shortest round-trip decimal form; locale-free and byte-deterministic.
inline std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline std::string format_bool(bool b) { return b ? "1" : "0"; }

class CsvBuilder {
  public:
    explicit CsvBuilder(std::vector<std::string> header) : columns_(header.size()) {
        append_row(header);
    }

    void row(const std::vector<std::string>& cells) {
        if (cells.size() != columns_)
            throw std::invalid_argument("csv: row width does not match header");
        append_row(cells);
    }

    const std::string& str() const { return text_; }
    std::size_t rows() const { return rows_; }

    void write(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("csv: cannot open " + path);
        out << text_;
        if (!out) throw std::runtime_error("csv: write failed for " + path);
    }

  private:
    void append_row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) text_ += ',';
            text_ += cells[i];
        }
        text_ += '\n';
        ++rows_;
    }

    std::size_t columns_;
    std::string text_;
    std::size_t rows_ = 0;
};

/// FNV-1a over the canonical config text; the hex digest names the artifacts.
inline std::string content_hash(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace topomode::io
