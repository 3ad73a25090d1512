#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace intermap::harness {

/// Typed table cell; doubles are rendered with 17 significant digits so CSV
/// output is bit-faithful and reproducible.
using Cell = std::variant<std::int64_t, double, std::string>;

std::string format_cell(const Cell& cell);

/// Columnar result container. Rows carry provenance (spec hash, master
/// seed, code version) as trailing columns when written out; row order is
/// made deterministic by sort_rows regardless of worker scheduling.
class ResultTable {
public:
    explicit ResultTable(std::vector<std::string> columns);

    void add_row(std::vector<Cell> row);
    void set_provenance(std::uint64_t spec_hash, std::uint64_t master_seed);

    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<Cell>>& rows() const { return rows_; }
    std::size_t row_count() const { return rows_.size(); }
    const Cell& cell(std::size_t row, const std::string& column) const;

    /// Lexicographic sort on the first `key_columns` cells (typed compare:
    /// numeric before string, numeric compared by value).
    void sort_rows(std::size_t key_columns);

    std::string to_csv() const;
    void write_csv(const std::string& path) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
    std::uint64_t spec_hash_ = 0;
    std::uint64_t master_seed_ = 0;
};

/// Minimal gnuplot companion script referencing a CSV by filename.
void write_plot_script(const std::string& path, const std::string& csv_name,
                       const std::string& title, const std::string& xlabel,
                       const std::string& ylabel,
                       const std::vector<std::pair<int, int>>& xy_columns,
                       bool logscale = false);

}  // namespace intermap::harness
