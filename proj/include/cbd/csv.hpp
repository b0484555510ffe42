#pragma once

#include <string>
#include <vector>

namespace cbd {

/// Shortest decimal form with 12 significant digits, "." decimal point.
std::string format_sig(double v, int digits = 12);

/// Comma-separated, LF line endings, UTF-8. Numeric cells are rendered
/// with format_sig.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::string render() const;
    void write(const std::string& path) const;
};

}  // namespace cbd
