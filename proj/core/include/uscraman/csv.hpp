// csv.hpp — deterministic CSV emission (header row, '.' decimal, %.12g cells)
#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace uscraman::csv {

// NaN cells are written empty (used for scan points without a numeric column).
class Writer {
public:
    Writer(const std::string& path, const std::vector<std::string>& header) : out_(path) {
        if (!out_) throw std::runtime_error("csv: cannot open " + path);
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) out_ << ',';
            out_ << header[i];
        }
        out_ << '\n';
        columns_ = header.size();
    }

    void row(const std::vector<double>& cells) {
        if (cells.size() != columns_) throw std::invalid_argument("csv: column count mismatch");
        char buf[40];
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            if (!std::isnan(cells[i])) {
                std::snprintf(buf, sizeof(buf), "%.12g", cells[i]);
                out_ << buf;
            }
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
    std::size_t columns_ = 0;
};

} // namespace uscraman::csv
