#pragma once

#include <string>
#include <vector>

#include "mulrep/errors.hpp"
#include "mulrep/int.hpp"

namespace mulrep {

// Dense integer matrix, row-major, at least 1x1.
class IntMatrix {
public:
    IntMatrix(int rows, int cols);
    static IntMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Int& at(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }

    void swap_rows(int i, int j);
    void swap_cols(int i, int j);

    bool operator==(const IntMatrix&) const = default;

private:
    int rows_, cols_;
    std::vector<Int> e_;
};

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

// Rows separated by ';', entries by whitespace: "2 4; 6 8".
IntMatrix parse_matrix(const std::string& text);
std::string render(const IntMatrix& m);

// m with an extra column c appended on the right.
IntMatrix augment_column(const IntMatrix& m, const std::vector<Int>& c);

std::vector<Int> mat_vec(const IntMatrix& m, const std::vector<Int>& x);

}  // namespace mulrep
