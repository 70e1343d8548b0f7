#include "mulrep/matrix.hpp"

#include <sstream>

namespace mulrep {

IntMatrix::IntMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1)
        throw precondition_error("matrix dimensions must be at least 1x1");
    e_.assign(static_cast<std::size_t>(rows) * cols, Int(0));
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

void IntMatrix::swap_rows(int i, int j) {
    if (i == j) return;
    for (int k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMatrix::swap_cols(int i, int j) {
    if (i == j) return;
    for (int k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw precondition_error("matrix size mismatch in multiply");
    IntMatrix r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Int& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j) r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

IntMatrix parse_matrix(const std::string& text) {
    std::vector<std::vector<Int>> rows;
    std::string row_text;
    std::istringstream whole(text);
    while (std::getline(whole, row_text, ';')) {
        std::istringstream rs(row_text);
        std::vector<Int> row;
        std::string tok;
        while (rs >> tok) {
            try {
                row.push_back(from_dec(tok));
            } catch (const std::invalid_argument& e) {
                throw parse_error(std::string("bad matrix entry: ") + e.what());
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw parse_error("empty matrix");
    std::size_t cols = rows.front().size();
    for (const auto& row : rows)
        if (row.size() != cols) throw parse_error("ragged matrix rows");
    IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    return m;
}

std::string render(const IntMatrix& m) {
    std::ostringstream out;
    for (int i = 0; i < m.rows(); ++i) {
        if (i) out << "; ";
        for (int j = 0; j < m.cols(); ++j) {
            if (j) out << " ";
            out << to_dec(m.at(i, j));
        }
    }
    return out.str();
}

IntMatrix augment_column(const IntMatrix& m, const std::vector<Int>& c) {
    if (static_cast<int>(c.size()) != m.rows())
        throw precondition_error("augment_column length mismatch");
    IntMatrix r(m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j);
        r.at(i, m.cols()) = c[i];
    }
    return r;
}

std::vector<Int> mat_vec(const IntMatrix& m, const std::vector<Int>& x) {
    if (static_cast<int>(x.size()) != m.cols())
        throw precondition_error("apply length mismatch");
    std::vector<Int> y(m.rows(), Int(0));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) y[i] += m.at(i, j) * x[j];
    return y;
}

}  // namespace mulrep
