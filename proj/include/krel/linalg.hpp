#pragma once

#include "krel/exactmath.hpp"

#include <cstddef>
#include <vector>

namespace krel {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, const T& fill = T(0)) : rows_(r), cols_(c), a_(r * c, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const { return {a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_}; }
    std::vector<T> col(std::size_t j) const {
        std::vector<T> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw InputError("matrix dimension mismatch");
        Matrix z(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const T& v = x(i, k);
                if (v == 0) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) z(i, j) += v * y(k, j);
            }
        return z;
    }

    friend std::vector<T> operator*(const Matrix& x, const std::vector<T>& v) {
        if (x.cols_ != v.size()) throw InputError("matrix-vector dimension mismatch");
        std::vector<T> out(x.rows_, T(0));
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t j = 0; j < x.cols_; ++j) out[i] += x(i, j) * v[j];
        return out;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    void swap_rows(std::size_t i, std::size_t k) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
    }
    void swap_cols(std::size_t j, std::size_t k) {
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, j), (*this)(i, k));
    }
    // row_i += c * row_k
    void add_row(std::size_t i, std::size_t k, const T& c) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) += c * (*this)(k, j);
    }
    void add_col(std::size_t j, std::size_t k, const T& c) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) += c * (*this)(i, k);
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

// Toggle for the U*A*V == D postcondition check.
void set_check_invariants(bool on);
bool check_invariants();

struct SmithForm {
    IntMatrix U, D, V;  // U*A*V == D, diagonal d_1 | d_2 | ... , d_i > 0
    std::size_t rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& a);

struct SnfSolution {
    std::vector<IntVector> kernel;  // Z-basis of {x : A x = 0}
    Integer multiple = 1;            // least m >= 1 with A x = m t solvable
    IntVector witness;               // A * witness == multiple * t
};

SnfSolution snf_solve(const IntMatrix& a, const IntVector& t);

// Basis (as rows, Hermite normal form) of the lattice spanned by the given vectors.
std::vector<IntVector> lattice_basis(const std::vector<IntVector>& gens, std::size_t dim);

void lll_reduce(std::vector<IntVector>& basis);

// Move v to a short representative of v + span(basis); basis should be LLL-reduced.
IntVector reduce_modulo_lattice(IntVector v, const std::vector<IntVector>& basis);

// Rational linear algebra.
std::size_t rank(RatMatrix m);
Rational determinant(RatMatrix m);
// Columns spanning the null space of m.
std::vector<RatVector> null_space(RatMatrix m);
// Linearly independent columns spanning the column space.
std::vector<RatVector> column_space(const RatMatrix& m);

Integer dot(const IntVector& a, const IntVector& b);

}  // namespace krel
