#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace dunkl {

/// Dense row-major matrix.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }
    const T& operator()(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }

    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::span<const T> data() const { return data_; }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Plain product a * b (i-k-j loop order).
template <class T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
    assert(a.cols() == b.rows());
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto out = c.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T aik = a(i, k);
            if (aik == T{}) continue;
            auto brow = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) out[j] += aik * brow[j];
        }
    }
    return c;
}

/// Symmetric tridiagonal matrix stored as its diagonal and first off-diagonal.
struct SymmetricTridiagonal {
    std::vector<double> diagonal;
    std::vector<double> off_diagonal;  // size n - 1; off_diagonal[i] couples i and i + 1

    std::size_t size() const { return diagonal.size(); }

    Matrix<double> to_dense() const {
        const std::size_t n = size();
        Matrix<double> m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = diagonal[i];
            if (i + 1 < n) {
                m(i, i + 1) = off_diagonal[i];
                m(i + 1, i) = off_diagonal[i];
            }
        }
        return m;
    }

    std::vector<double> apply(std::span<const double> x) const {
        const std::size_t n = size();
        assert(x.size() == n);
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            double acc = diagonal[i] * x[i];
            if (i > 0) acc += off_diagonal[i - 1] * x[i - 1];
            if (i + 1 < n) acc += off_diagonal[i] * x[i + 1];
            y[i] = acc;
        }
        return y;
    }
};

}  // namespace dunkl
