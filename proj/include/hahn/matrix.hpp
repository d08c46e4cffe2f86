#pragma once

#include "hahn/numeric.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace hahn {

// Dense row-major matrix over an exact scalar. Lattices are row spans.
template <typename Scalar>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows, std::size_t cols) {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols && j < rows[i].size(); ++j)
                m(i, j) = rows[i][j];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<Scalar> row(std::size_t i) const {
        return std::vector<Scalar>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap((*this)(i, a), (*this)(i, b));
    }

    // row[dst] += factor * row[src]
    void add_row(std::size_t dst, std::size_t src, const Scalar& factor) {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(dst, j) += factor * (*this)(src, j);
    }

    void add_col(std::size_t dst, std::size_t src, const Scalar& factor) {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, dst) += factor * (*this)(i, src);
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    bool row_is_zero(std::size_t i) const {
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0)
                return false;
        return true;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

// Row Hermite normal form: transform * input == form. The first `rank` rows of
// `form` are nonzero with strictly increasing pivot columns and positive
// pivots; entries above a pivot lie in [0, pivot).
struct HermiteForm {
    IntMatrix form;
    IntMatrix transform;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

HermiteForm hermite_form(const IntMatrix& a);

// Smith normal form: left * input * right == diagonal, with
// right * right_inverse == I and d_0 | d_1 | ... (nonzero ones first).
struct SmithForm {
    IntMatrix diagonal;
    IntMatrix left;
    IntMatrix right;
    IntMatrix right_inverse;
    std::vector<Integer> divisors;  // nonzero diagonal entries
};

SmithForm smith_form(const IntMatrix& a);

// Basis (rows) of {x in Z^rows : x * a == 0}, in Hermite form.
IntMatrix left_integer_kernel(const IntMatrix& a);

// Hermite basis of the row lattice of `a` (zero rows dropped).
IntMatrix lattice_basis(const IntMatrix& a);

// Solve x * basis == target over Z, basis given by a HermiteForm of the
// generator matrix. Returns coordinates with respect to the ORIGINAL rows.
std::optional<IntVector> solve_row_combination(const HermiteForm& h, const IntVector& target);

// All integer solutions of m * u == rhs (u a column vector): a particular
// solution plus a kernel lattice basis (rows). nullopt: no integer solution.
struct DiophantineSolution {
    IntVector particular;
    IntMatrix kernel;
};

std::optional<DiophantineSolution> solve_diophantine(const IntMatrix& m, const IntVector& rhs);

// Reduced row echelon form over Q.
struct RowEchelon {
    RatMatrix form;
    std::vector<std::size_t> pivots;
};

RowEchelon row_echelon(const RatMatrix& a);

// Solutions of a * u == rhs over Q: particular solution with all free
// variables zero, plus the nullspace basis (one vector per free variable,
// with a 1 in that free position).
struct RationalSolution {
    std::optional<RatVector> particular;
    std::vector<RatVector> nullspace;
};

RationalSolution solve_rational(const RatMatrix& a, const RatVector& rhs);

}  // namespace hahn
