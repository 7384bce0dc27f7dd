#ifndef SHIFTEQ_MATRIX_HPP
#define SHIFTEQ_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "shifteq/integers.hpp"

namespace shifteq {

// Dense matrix of arbitrary-precision integers, row-major. Matrices act on
// coordinate columns: the j-th column holds the image of the j-th basis
// vector. Rectangular shapes are allowed (shift-equivalence witnesses between
// spaces of different rank); 0x0 is a valid value.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, 0) {}
    IntMatrix(std::initializer_list<std::initializer_list<Int>> rows);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Int& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    bool operator==(const IntMatrix& o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix operator-() const;
    IntMatrix operator*(const Int& s) const;

    IntMatrix transpose() const;
    IntMatrix pow(unsigned long e) const;  // square only

    Int trace() const;
    Int det() const;  // fraction-free (Bareiss); square only
    bool is_zero() const;
    Int max_abs() const;

    // Inverse of a unimodular matrix (det ±1); throws otherwise.
    IntMatrix unimodular_inverse() const;

    std::string to_string() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> e_;
};

}  // namespace shifteq

#endif
