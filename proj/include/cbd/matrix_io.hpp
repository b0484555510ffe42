#pragma once

#include <iosfwd>
#include <string>

#include "cbd/pmf.hpp"

namespace cbd {

/// Plain-text matrix format: first line "rows cols", then whitespace
/// separated rows of decimal values.
Mat load_matrix(std::istream& in);
Mat load_matrix_file(const std::string& path);
void save_matrix(std::ostream& out, const Mat& m);

}  // namespace cbd
