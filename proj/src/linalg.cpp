#include "courant/linalg.hpp"

#include <stdexcept>

namespace courant {

Matrix Matrix::identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_columns(size_t rows, const std::vector<std::vector<Scalar>>& cols) {
    Matrix m(rows, cols.size());
    for (size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
        for (size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

std::vector<Scalar> Matrix::column(size_t j) const {
    std::vector<Scalar> v(r_);
    for (size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

std::vector<std::vector<Scalar>> Matrix::columns() const {
    std::vector<std::vector<Scalar>> out;
    for (size_t j = 0; j < c_; ++j) out.push_back(column(j));
    return out;
}

Matrix Matrix::transpose() const {
    Matrix t(c_, r_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::select_columns(const std::vector<size_t>& idx) const {
    Matrix m(r_, idx.size());
    for (size_t k = 0; k < idx.size(); ++k)
        for (size_t i = 0; i < r_; ++i) m(i, k) = (*this)(i, idx[k]);
    return m;
}

Matrix Matrix::select_rows(const std::vector<size_t>& idx) const {
    Matrix m(idx.size(), c_);
    for (size_t k = 0; k < idx.size(); ++k)
        for (size_t j = 0; j < c_; ++j) m(k, j) = (*this)(idx[k], j);
    return m;
}

Matrix Matrix::hconcat(const Matrix& o) const {
    if (o.r_ != r_) throw std::invalid_argument("hconcat row mismatch");
    Matrix m(r_, c_ + o.c_);
    for (size_t i = 0; i < r_; ++i) {
        for (size_t j = 0; j < c_; ++j) m(i, j) = (*this)(i, j);
        for (size_t j = 0; j < o.c_; ++j) m(i, c_ + j) = o(i, j);
    }
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix m(a.r_, b.c_);
    for (size_t i = 0; i < a.r_; ++i)
        for (size_t k = 0; k < a.c_; ++k) {
            const Scalar& x = a(i, k);
            if (x.is_zero()) continue;
            for (size_t j = 0; j < b.c_; ++j)
                if (!b(k, j).is_zero()) m(i, j) += x * b(k, j);
        }
    return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix sum shape mismatch");
    Matrix m = a;
    for (size_t k = 0; k < m.a_.size(); ++k) m.a_[k] += b.a_[k];
    return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix difference shape mismatch");
    Matrix m = a;
    for (size_t k = 0; k < m.a_.size(); ++k) m.a_[k] -= b.a_[k];
    return m;
}

bool operator==(const Matrix& a, const Matrix& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }

std::vector<Scalar> Matrix::apply(const std::vector<Scalar>& v) const {
    if (v.size() != c_) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<Scalar> out(r_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j)
            if (!v[j].is_zero() && !(*this)(i, j).is_zero()) out[i] += (*this)(i, j) * v[j];
    return out;
}

std::string Matrix::str() const {
    std::string s = "[";
    for (size_t i = 0; i < r_; ++i) {
        s += i ? "; " : "";
        for (size_t j = 0; j < c_; ++j) s += (j ? " " : "") + (*this)(i, j).str();
    }
    return s + "]";
}

Echelon row_reduce(Matrix m) {
    Echelon e;
    size_t row = 0;
    for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        size_t p = row;
        while (p < m.rows() && m(p, col).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        Scalar inv = m(row, col).inverse();
        for (size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            Scalar f = m(i, col);
            for (size_t j = col; j < m.cols(); ++j)
                if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
        }
        e.pivots.push_back(col);
        ++row;
    }
    e.rref = std::move(m);
    return e;
}

size_t rank(const Matrix& m) { return row_reduce(m).pivots.size(); }

Matrix kernel(const Matrix& m) {
    Echelon e = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t p : e.pivots) is_pivot[p] = true;
    std::vector<std::vector<Scalar>> basis;
    for (size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Scalar> v(m.cols());
        v[f] = 1;
        for (size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.rref(r, f);
        basis.push_back(std::move(v));
    }
    return Matrix::from_columns(m.cols(), basis);
}

Matrix column_basis(const Matrix& m) { return m.select_columns(row_reduce(m).pivots); }

std::optional<std::vector<Scalar>> solve(const Matrix& m, const std::vector<Scalar>& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve shape mismatch");
    Matrix aug(m.rows(), m.cols() + 1);
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    Echelon e = row_reduce(aug);
    if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
    std::vector<Scalar> x(m.cols());
    for (size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.rref(r, m.cols());
    return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
    const size_t n = m.rows();
    if (n == 0) return Matrix();
    Echelon e = row_reduce(m.hconcat(Matrix::identity(n)));
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
    Matrix inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv(i, j) = e.rref(i, n + j);
    return inv;
}

Scalar determinant(Matrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    const size_t n = m.rows();
    Scalar det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m(p, c).is_zero()) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        Scalar inv = m(c, c).inverse();
        for (size_t i = c + 1; i < n; ++i) {
            if (m(i, c).is_zero()) continue;
            Scalar f = m(i, c) * inv;
            for (size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

Matrix complement_in(const Matrix& base, const Matrix& extra) {
    Matrix cur = column_basis(base);
    size_t r = cur.cols();
    std::vector<size_t> chosen;
    for (size_t j = 0; j < extra.cols(); ++j) {
        Matrix trial = cur.hconcat(extra.select_columns({j}));
        size_t rk = rank(trial);
        if (rk > r) {
            cur = trial;
            r = rk;
            chosen.push_back(j);
        }
    }
    return extra.select_columns(chosen);
}

Matrix intersect(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("intersect ambient mismatch");
    // a x = b y  <=>  [a | -b] (x, y) = 0
    Matrix nb(b.rows(), b.cols());
    for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) nb(i, j) = -b(i, j);
    Matrix k = kernel(a.hconcat(nb));
    Matrix top(a.cols(), k.cols());
    for (size_t i = 0; i < a.cols(); ++i)
        for (size_t j = 0; j < k.cols(); ++j) top(i, j) = k(i, j);
    return column_basis(a * top);
}

bool is_zero_vector(const std::vector<Scalar>& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

}  // namespace courant
