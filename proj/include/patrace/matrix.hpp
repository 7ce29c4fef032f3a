#pragma once

/**
 * @file matrix.hpp
 * @brief Small dense matrices with exact determinants and solves.
 */

#include "patrace/rational.hpp"
#include "patrace/rational_func.hpp"

#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace patrace {

template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n, T(Rational(0)));
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(Rational(1));
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    /// Copy with column j replaced by `column`.
    Matrix with_column(std::size_t j, const std::vector<T>& column) const
    {
        assert(column.size() == rows_ && j < cols_);
        Matrix out = *this;
        for (std::size_t i = 0; i < rows_; ++i)
            out(i, j) = column[i];
        return out;
    }

    template <typename F>
    auto map(F&& f) const
    {
        using U = decltype(f(data_.front()));
        Matrix<U> out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out(i, j) = f((*this)(i, j));
        return out;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Raised when a linear system that must be nonsingular is not.
class SingularSystem : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Determinant over the rationals by Gaussian elimination.
Rational det(Matrix<Rational> m);

/// Determinant over the rational-function field. Rows are brought to a common
/// polynomial denominator, then fraction-free (Bareiss) elimination runs over
/// Q[α] with the lowest-degree nonzero pivot chosen at each step.
RationalFunc det_rf(const Matrix<RationalFunc>& m);

/// Solves m·X = rhs (rhs may hold several columns); throws SingularSystem.
Matrix<Rational> solve(Matrix<Rational> m, Matrix<Rational> rhs);

}  // namespace patrace
