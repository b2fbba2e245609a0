#include "sechsim/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace sechsim {

std::string format_sci(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::scientific, 12);
    if (res.ec != std::errc{}) throw std::runtime_error("format_sci: to_chars failed");
    return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

void emit_row(std::ofstream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ',';
        out << cells[i];
    }
    out << '\n';
}

} // namespace

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    auto out = open_out(path);
    emit_row(out, header);
    for (const auto& r : rows) {
        if (r.size() != header.size())
            throw std::runtime_error("csv row width mismatch: " + path);
        emit_row(out, r);
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_csv_matrix(const std::string& path, const std::string& corner,
                      const std::vector<double>& col_axis,
                      const std::vector<double>& row_axis,
                      const std::vector<std::vector<double>>& values) {
    if (values.size() != row_axis.size())
        throw std::runtime_error("csv matrix row count mismatch: " + path);
    auto out = open_out(path);
    out << corner;
    for (double c : col_axis) out << ',' << format_sci(c);
    out << '\n';
    for (std::size_t r = 0; r < row_axis.size(); ++r) {
        if (values[r].size() != col_axis.size())
            throw std::runtime_error("csv matrix column count mismatch: " + path);
        out << format_sci(row_axis[r]);
        for (double v : values[r]) out << ',' << format_sci(v);
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace sechsim
