#pragma once

#include <algorithm>
#include <cassert>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace pseudospec {

using Complex = std::complex<double>;

/// Dense row-major matrix. Rows are contiguous so pivoted elimination
/// works on whole rows.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    [[nodiscard]] static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }
    const T& operator()(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }

    [[nodiscard]] std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    [[nodiscard]] std::span<const T> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }

    [[nodiscard]] std::span<T> data() noexcept { return data_; }
    [[nodiscard]] std::span<const T> data() const noexcept { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RMatrix = Matrix<double>;
using CMatrix = Matrix<Complex>;
using CVector = std::vector<Complex>;

template <typename T>
[[nodiscard]] Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    assert(a.cols() == b.rows());
    Matrix<T> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T aik = a(i, k);
            if (aik == T{}) continue;
            auto brow = b.row(k);
            auto orow = out.row(i);
            for (std::size_t j = 0; j < b.cols(); ++j) orow[j] += aik * brow[j];
        }
    }
    return out;
}

[[nodiscard]] inline CMatrix to_complex(const RMatrix& m) {
    CMatrix out(m.rows(), m.cols());
    std::copy(m.data().begin(), m.data().end(), out.data().begin());
    return out;
}

/// Conjugate transpose.
[[nodiscard]] inline CMatrix adjoint(const CMatrix& m) {
    CMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
    return out;
}

/// A - z*I.
[[nodiscard]] inline CMatrix shifted(const CMatrix& a, Complex z) {
    assert(a.square());
    CMatrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i) out(i, i) -= z;
    return out;
}

[[nodiscard]] inline CVector multiply(const CMatrix& a, std::span<const Complex> x) {
    assert(a.cols() == x.size());
    CVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex acc{};
        auto r = a.row(i);
        for (std::size_t j = 0; j < x.size(); ++j) acc += r[j] * x[j];
        y[i] = acc;
    }
    return y;
}

/// Max absolute row sum.
[[nodiscard]] inline double norm_inf(const CMatrix& a) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (const Complex& v : a.row(i)) s += std::abs(v);
        best = std::max(best, s);
    }
    return best;
}

[[nodiscard]] inline double norm2(std::span<const Complex> v) {
    double scale = 0.0;
    for (const Complex& x : v) scale = std::max(scale, std::max(std::abs(x.real()), std::abs(x.imag())));
    if (scale == 0.0) return 0.0;
    double s = 0.0;
    for (const Complex& x : v) s += std::norm(x / scale);
    return scale * std::sqrt(s);
}

}  // namespace pseudospec
