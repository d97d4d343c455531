// CSV and key=value report emission, plus the table reader used for
// tabulated decay moduli. Numeric cells are printed with %.17g so that
// identical inputs produce byte-identical files.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace specproj {

inline constexpr const char* kVersion = "0.1.0";

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_double(double v);

// Writes "# specproj <version>" followed by a header row and the data rows.
void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

void write_report(const std::string& path,
                  const std::vector<std::pair<std::string, std::string>>& entries);

// Two-column numeric table (comments with '#', blank lines skipped).
// Throws ParseError with a line-numbered message on malformed input.
std::vector<std::pair<double, double>> read_table(const std::string& path);

void ensure_directory(const std::string& path);

} // namespace specproj
