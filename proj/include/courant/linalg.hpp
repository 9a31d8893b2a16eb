#pragma once

// Dense exact linear algebra over Q or Q(i).  Elimination always takes the
// first nonzero entry of the current column as pivot, so bases and
// representatives are deterministic.

#include "courant/scalar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace courant {

class Matrix {
public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
    static Matrix identity(size_t n);
    static Matrix from_columns(size_t rows, const std::vector<std::vector<Scalar>>& cols);

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    Scalar& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const Scalar& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

    std::vector<Scalar> column(size_t j) const;
    std::vector<std::vector<Scalar>> columns() const;
    Matrix transpose() const;
    Matrix select_columns(const std::vector<size_t>& idx) const;
    Matrix select_rows(const std::vector<size_t>& idx) const;
    Matrix hconcat(const Matrix& o) const;  // [this | o]
    bool is_zero() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b);
    std::vector<Scalar> apply(const std::vector<Scalar>& v) const;

    std::string str() const;

private:
    size_t r_ = 0, c_ = 0;
    std::vector<Scalar> a_;
};

struct Echelon {
    Matrix rref;
    std::vector<size_t> pivots;  // pivot column of each nonzero row
};

Echelon row_reduce(Matrix m);
size_t rank(const Matrix& m);
// Basis of the null space, one column per free variable.
Matrix kernel(const Matrix& m);
// Independent columns of m (the pivot columns), spanning its column space.
Matrix column_basis(const Matrix& m);
// Some x with m x = b, if one exists.
std::optional<std::vector<Scalar>> solve(const Matrix& m, const std::vector<Scalar>& b);
std::optional<Matrix> inverse(const Matrix& m);
Scalar determinant(Matrix m);

// Columns of `extra` that are independent modulo span(base), chosen greedily
// in order.  The returned matrix holds the chosen columns.
Matrix complement_in(const Matrix& base, const Matrix& extra);

// Intersection of two column spans inside the same ambient space.
Matrix intersect(const Matrix& a, const Matrix& b);

bool is_zero_vector(const std::vector<Scalar>& v);

}  // namespace courant
