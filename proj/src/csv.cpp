#include "momentinfo/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace momentinfo {

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open CSV file: " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

namespace {

bool parse_double(const std::string& s, double& out) {
    const char* b = s.data();
    const char* e = s.data() + s.size();
    while (b < e && (*b == ' ' || *b == '\t')) ++b;
    auto [p, ec] = std::from_chars(b, e, out);
    if (ec != std::errc()) return false;
    while (p < e && (*p == ' ' || *p == '\t')) ++p;
    return p == e;
}

} // namespace

std::vector<std::vector<double>> read_numeric_csv(const std::string& path) {
    auto rows = read_csv(path);
    std::vector<std::vector<double>> out;
    size_t width = 0;
    for (size_t r = 0; r < rows.size(); ++r) {
        std::vector<double> vals(rows[r].size());
        bool numeric = true;
        for (size_t c = 0; c < rows[r].size(); ++c)
            if (!parse_double(rows[r][c], vals[c])) { numeric = false; break; }
        if (!numeric) {
            if (r == 0) continue;  // header row
            throw ConfigError("non-numeric cell in CSV: " + path);
        }
        if (width == 0) width = vals.size();
        if (vals.size() != width) throw ConfigError("ragged CSV rows in: " + path);
        out.push_back(std::move(vals));
    }
    if (out.empty()) throw ConfigError("no numeric rows in CSV: " + path);
    return out;
}

std::vector<std::pair<std::string, double>> read_labeled_csv(const std::string& path) {
    auto rows = read_csv(path);
    std::vector<std::pair<std::string, double>> out;
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != 2) throw ConfigError("labeled CSV must have two columns: " + path);
        double y;
        if (!parse_double(rows[r][1], y)) {
            if (r == 0) continue;  // header row
            throw ConfigError("non-numeric y value in CSV: " + path);
        }
        out.emplace_back(rows[r][0], y);
    }
    if (out.empty()) throw ConfigError("no rows in labeled CSV: " + path);
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace momentinfo
