#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace twinbeam::cli {

using Cell = std::variant<double, std::int64_t, std::string>;

// Column-ordered result table; the CSV schema of every command.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
    std::size_t column(std::string_view name) const;
    double number(std::size_t row, std::string_view name) const;
    std::string text(std::size_t row, std::string_view name) const;
};

// Shortest round-trip form is not used: always 17 significant digits so the
// output is byte-stable. Non-finite values print as nan, inf, -inf.
std::string format_double(double value);

std::string format_cell(const Cell& cell);

// Comma-separated, header row first, '\n' line endings. Text cells containing
// commas or quotes are quoted.
void write_csv(std::ostream& out, const Table& table);

}  // namespace twinbeam::cli
