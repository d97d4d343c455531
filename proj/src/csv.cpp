#include "specproj/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace specproj {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "# specproj " << kVersion << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
        out << columns[i] << (i + 1 < columns.size() ? "," : "\n");
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << format_double(row[i]) << (i + 1 < row.size() ? "," : "\n");
    }
    if (!out) throw IoError("write failed: " + path);
}

void write_report(const std::string& path,
                  const std::vector<std::pair<std::string, std::string>>& entries) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "# specproj " << kVersion << "\n";
    for (const auto& [k, v] : entries) out << k << " = " << v << "\n";
    if (!out) throw IoError("write failed: " + path);
}

std::vector<std::pair<double, double>> read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path);
    std::vector<std::pair<double, double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = line;
        if (const auto hash = body.find('#'); hash != std::string::npos)
            body = body.substr(0, hash);
        bool blank = true;
        for (char c : body)
            if (!std::isspace(static_cast<unsigned char>(c))) { blank = false; break; }
        if (blank) continue;
        for (char& c : body)
            if (c == ',' || c == ';' || c == '\t') c = ' ';
        std::istringstream ss(body);
        double a = 0.0, b = 0.0;
        std::string extra;
        if (!(ss >> a >> b) || (ss >> extra))
            throw ParseError(path + ":" + std::to_string(lineno) +
                             ": expected two numeric columns, got '" + line + "'");
        rows.emplace_back(a, b);
    }
    if (rows.empty()) throw ParseError(path + ": table is empty");
    return rows;
}

void ensure_directory(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) throw IoError("cannot create directory " + path + ": " + ec.message());
}

} // namespace specproj
