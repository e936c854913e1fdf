#pragma once

#include "superell/bigint.hpp"
#include "superell/errors.hpp"
#include "superell/poly.hpp"

#include <vector>

namespace superell {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, T(0)) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
        : r_(rows), c_(cols), a_(std::move(entries)) {
        require(a_.size() == r_ * c_, "matrix: entry count mismatch");
    }
    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        if (rows.empty()) return Matrix();
        Matrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            require(rows[i].size() == m.c_, "matrix: ragged rows");
            for (std::size_t j = 0; j < m.c_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
    }
    void set_row(std::size_t i, const std::vector<T>& v) {
        require(v.size() == c_, "matrix: row length mismatch");
        for (std::size_t j = 0; j < c_; ++j) (*this)(i, j) = v[j];
    }

    Matrix transpose() const {
        Matrix t(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        require(x.c_ == y.r_, "matrix product: dimension mismatch");
        Matrix z(x.r_, y.c_);
        for (std::size_t i = 0; i < x.r_; ++i)
            for (std::size_t k = 0; k < x.c_; ++k) {
                if (x(i, k) == 0) continue;
                for (std::size_t j = 0; j < y.c_; ++j) z(i, j) += x(i, k) * y(k, j);
            }
        return z;
    }
    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        require(x.r_ == y.r_ && x.c_ == y.c_, "matrix sum: dimension mismatch");
        Matrix z = x;
        for (std::size_t i = 0; i < z.a_.size(); ++i) z.a_[i] += y.a_[i];
        return z;
    }
    friend Matrix operator*(const T& s, const Matrix& x) {
        Matrix z = x;
        for (auto& v : z.a_) v *= s;
        return z;
    }
    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
    }
    friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

    bool is_symmetric() const {
        if (r_ != c_) return false;
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < i; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

using IntMat = Matrix<Int>;
using RatMat = Matrix<Rat>;

RatMat to_rat(const IntMat& m);

// Row vector times matrix.
std::vector<Rat> vec_mul(const std::vector<Rat>& v, const RatMat& m);

Rat det(const RatMat& m);
Int det(const IntMat& m);  // Bareiss, fraction-free
RatMat inverse(const RatMat& m);
std::size_t rank(const RatMat& m);

// Solve x * m = b for a row vector x (m square, nonsingular).
std::vector<Rat> solve_left(const RatMat& m, const std::vector<Rat>& b);

// Row-style Hermite normal form of the lattice spanned by the rows of m.
// Output rows are a basis: upper echelon, positive pivots, entries above a
// pivot reduced into [0, pivot). Zero rows are dropped.
IntMat hnf(const IntMat& m);

// det(x*A + z*B) as homogeneous coefficients c[k] of x^{d-k} z^k, by
// evaluating det(t*A + B) at d+1 integer points and interpolating exactly.
std::vector<Int> det_linear_pencil(const IntMat& a, const IntMat& b);

// det(t*I - m) as a polynomial in t.
IntPoly char_poly(const IntMat& m);

}  // namespace superell
