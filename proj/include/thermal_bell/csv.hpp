#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "thermal_bell/figures.hpp"

namespace thermal_bell {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Deterministic UTF-8 CSV with LF line endings:
//   axis,value,curve,M,C,D,chsh_max
inline void emit_csv(const std::vector<FigureRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("emit_csv: cannot open '" + path + "' for writing");
    out << "axis,value,curve,M,C,D,chsh_max\n";
    for (const auto& row : rows) {
        out << row.axis << ',' << format_value(row.value) << ',' << row.curve
            << ',' << format_value(row.report.violation_m) << ','
            << format_value(row.report.concurrence) << ','
            << format_value(row.report.disorder_d) << ','
            << format_value(row.report.chsh_max) << '\n';
    }
    out.flush();
    if (!out) throw io_error("emit_csv: write to '" + path + "' failed");
}

} // namespace thermal_bell
