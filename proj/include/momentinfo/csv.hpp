#pragma once

#include <string>
#include <vector>

#include "momentinfo/errors.hpp"

namespace momentinfo {

/// Loads a CSV of numeric columns ('.' decimal separator, optional header row
/// of non-numeric cells, which is skipped). Returns row-major cells.
std::vector<std::vector<std::string>> read_csv(const std::string& path);

/// Numeric columns from a sample CSV: every row must have the same width.
std::vector<std::vector<double>> read_numeric_csv(const std::string& path);

/// (label, y) pairs from a two-column CSV; the first column is categorical.
std::vector<std::pair<std::string, double>> read_labeled_csv(const std::string& path);

std::string format_double(double v);  // shortest round-trip formatting

} // namespace momentinfo
