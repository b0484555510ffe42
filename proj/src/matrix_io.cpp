#include "cbd/matrix_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace cbd {

Mat load_matrix(std::istream& in) {
    int rows = 0, cols = 0;
    if (!(in >> rows >> cols) || rows < 1 || cols < 1)
        throw std::runtime_error("matrix: bad header, expected 'rows cols'");
    Mat m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (!(in >> m(r, c)))
                throw std::runtime_error("matrix: not enough entries");
    return m;
}

Mat load_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);
    return load_matrix(in);
}

void save_matrix(std::ostream& out, const Mat& m) {
    out << m.rows << ' ' << m.cols << '\n';
    out << std::setprecision(17);
    for (int r = 0; r < m.rows; ++r) {
        for (int c = 0; c < m.cols; ++c) out << (c ? " " : "") << m(r, c);
        out << '\n';
    }
}

}  // namespace cbd
