#ifndef FDCOVERT_HARNESS_TABLE_HPP
#define FDCOVERT_HARNESS_TABLE_HPP

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdcovert::harness {

/// Numeric cell text; fixed "%.10g" so identical doubles give identical bytes.
inline std::string format_number(double v) {
    if (!std::isfinite(v)) throw std::logic_error("non-finite value reached a CSV cell");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw std::out_of_range("no column named " + name);
    }
};

inline void write_csv(std::ostream& out, const Table& t) {
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
        out << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
}

}  // namespace fdcovert::harness

#endif
