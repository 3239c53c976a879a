#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace detumble::cli {

/// Shortest round-trippable decimal form (17 significant digits).
std::string format_double(double value);

void write_csv_row(std::ostream& out, std::span<const std::string> cells);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> comments; ///< lines starting with '#'
};

/// Minimal reader for the CSVs this tool writes: comma-separated cells, one
/// header row, '#' lines collected separately.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

} // namespace detumble::cli
