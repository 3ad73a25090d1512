#include "intermap/harness/result_table.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "intermap/common.hpp"

namespace intermap::harness {

std::string format_cell(const Cell& cell) {
    if (std::holds_alternative<std::int64_t>(cell)) {
        return std::to_string(std::get<std::int64_t>(cell));
    }
    if (std::holds_alternative<double>(cell)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(cell));
        return buf;
    }
    return std::get<std::string>(cell);
}

namespace {

bool cell_less(const Cell& a, const Cell& b) {
    const auto as_double = [](const Cell& c, double& out) {
        if (std::holds_alternative<std::int64_t>(c)) {
            out = static_cast<double>(std::get<std::int64_t>(c));
            return true;
        }
        if (std::holds_alternative<double>(c)) {
            out = std::get<double>(c);
            return true;
        }
        return false;
    };
    double x = 0.0;
    double y = 0.0;
    const bool ax = as_double(a, x);
    const bool by = as_double(b, y);
    if (ax && by) return x < y;
    if (ax != by) return ax;  // numbers sort before strings
    return std::get<std::string>(a) < std::get<std::string>(b);
}

bool cell_equal(const Cell& a, const Cell& b) {
    return !cell_less(a, b) && !cell_less(b, a);
}

}  // namespace

ResultTable::ResultTable(std::vector<std::string> columns)
    : columns_(std::move(columns)) {}

void ResultTable::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size()) {
        throw Error("ResultTable: row width mismatch");
    }
    rows_.push_back(std::move(row));
}

void ResultTable::set_provenance(std::uint64_t spec_hash,
                                 std::uint64_t master_seed) {
    spec_hash_ = spec_hash;
    master_seed_ = master_seed;
}

const Cell& ResultTable::cell(std::size_t row,
                              const std::string& column) const {
    for (std::size_t j = 0; j < columns_.size(); ++j) {
        if (columns_[j] == column) return rows_.at(row)[j];
    }
    throw Error("ResultTable: no column '" + column + "'");
}

void ResultTable::sort_rows(std::size_t key_columns) {
    const std::size_t k = std::min(key_columns, columns_.size());
    std::stable_sort(rows_.begin(), rows_.end(),
                     [k](const std::vector<Cell>& a,
                         const std::vector<Cell>& b) {
                         for (std::size_t j = 0; j < k; ++j) {
                             if (!cell_equal(a[j], b[j])) {
                                 return cell_less(a[j], b[j]);
                             }
                         }
                         return false;
                     });
}

std::string ResultTable::to_csv() const {
    std::ostringstream out;
    for (const std::string& name : columns_) out << name << ",";
    out << "spec_hash,master_seed,version\n";
    char hash_hex[32];
    std::snprintf(hash_hex, sizeof hash_hex, "%016llx",
                  static_cast<unsigned long long>(spec_hash_));
    for (const auto& row : rows_) {
        for (const Cell& cell : row) out << format_cell(cell) << ",";
        out << hash_hex << "," << master_seed_ << "," << version_string()
            << "\n";
    }
    return out.str();
}

void ResultTable::write_csv(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << to_csv();
}

void write_plot_script(const std::string& path, const std::string& csv_name,
                       const std::string& title, const std::string& xlabel,
                       const std::string& ylabel,
                       const std::vector<std::pair<int, int>>& xy_columns,
                       bool logscale) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "# gnuplot companion script\n";
    out << "set datafile separator ','\n";
    out << "set key autotitle columnhead\n";
    out << "set title '" << title << "'\n";
    out << "set xlabel '" << xlabel << "'\n";
    out << "set ylabel '" << ylabel << "'\n";
    if (logscale) out << "set logscale xy\n";
    out << "plot ";
    bool first = true;
    for (const auto& [x, y] : xy_columns) {
        if (!first) out << ", ";
        out << "'" << csv_name << "' using " << x << ":" << y
            << " with linespoints";
        first = false;
    }
    out << "\n";
}

}  // namespace intermap::harness
