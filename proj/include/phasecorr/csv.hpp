// CSV emission with full round-trip precision: comma separators, '.' decimal,
// one header row, LF line endings.

#pragma once

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace phasecorr {

/// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot open output file: " + path);
    }

    void header(const std::vector<std::string>& columns) { raw_row(columns); }

    void raw_row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

    void row(const std::vector<double>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << format_double(cells[i]);
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

} // namespace phasecorr
