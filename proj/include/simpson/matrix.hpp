#pragma once

/**
 * @file matrix.hpp
 * @brief Dense matrices of PadicScalar.
 */

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "simpson/padic.hpp"

namespace simpson {

class Matrix {
public:
    Matrix() = default;
    Matrix(const Context& ctx, std::size_t rows, std::size_t cols)
        : ctx_(ctx), rows_(rows), cols_(cols), data_(rows * cols, PadicScalar::zero(ctx)) {}

    static Matrix identity(const Context& ctx, std::size_t n) {
        Matrix m(ctx, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = PadicScalar::one(ctx);
        return m;
    }

    static Matrix from_ints(const Context& ctx, const std::vector<std::vector<long>>& rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r ? rows[0].size() : 0;
        Matrix m(ctx, r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw DimensionMismatch("from_ints: ragged rows");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = PadicScalar::from_int(ctx, rows[i][j]);
        }
        return m;
    }

    static Matrix column(const std::vector<PadicScalar>& v) {
        if (v.empty()) throw DimensionMismatch("column: empty vector");
        Matrix m(v[0].context(), v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
        return m;
    }

    const Context& context() const noexcept { return ctx_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    PadicScalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const PadicScalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.check_same_shape(b, "+");
        Matrix r = a;
        for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += b.data_[k];
        return r;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.check_same_shape(b, "-");
        Matrix r = a;
        for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] -= b.data_[k];
        return r;
    }

    Matrix operator-() const {
        Matrix r = *this;
        for (auto& x : r.data_) x = -x;
        return r;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw DimensionMismatch("matrix product " + a.shape() + " * " + b.shape());
        Matrix r(a.ctx_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) {
                PadicScalar acc = PadicScalar::zero(a.ctx_);
                bool first = true;
                for (std::size_t k = 0; k < a.cols_; ++k) {
                    const PadicScalar& x = a(i, k);
                    const PadicScalar& y = b(k, j);
                    PadicScalar t = x * y;
                    acc = first ? t : acc + t;
                    first = false;
                }
                r(i, j) = acc;
            }
        return r;
    }

    friend Matrix operator*(const PadicScalar& s, const Matrix& a) {
        Matrix r = a;
        for (auto& x : r.data_) x = s * x;
        return r;
    }

    Matrix& operator+=(const Matrix& b) { return *this = *this + b; }
    Matrix& operator-=(const Matrix& b) { return *this = *this - b; }
    Matrix& operator*=(const Matrix& b) { return *this = *this * b; }

    Matrix transpose() const {
        Matrix r(ctx_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    /// Kronecker product: (a kron b)(i*rb + k, j*cb + l) = a(i,j) b(k,l).
    friend Matrix kron(const Matrix& a, const Matrix& b) {
        Matrix r(a.ctx_, a.rows_ * b.rows_, a.cols_ * b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j)
                for (std::size_t k = 0; k < b.rows_; ++k)
                    for (std::size_t l = 0; l < b.cols_; ++l)
                        r(i * b.rows_ + k, j * b.cols_ + l) = a(i, j) * b(k, l);
        return r;
    }

    friend Matrix block_diag(const Matrix& a, const Matrix& b) {
        Matrix r(a.ctx_, a.rows_ + b.rows_, a.cols_ + b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) r(a.rows_ + i, a.cols_ + j) = b(i, j);
        return r;
    }

    /// Smallest entry valuation bound (entries zero to precision contribute their precision).
    std::int64_t min_valuation() const {
        std::int64_t v = std::numeric_limits<std::int64_t>::max();
        for (const auto& x : data_) v = std::min(v, x.valuation_bound());
        return v;
    }

    std::int64_t min_precision() const {
        std::int64_t v = std::numeric_limits<std::int64_t>::max();
        for (const auto& x : data_) v = std::min(v, x.precision());
        return v;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    /// Entrywise agreement modulo p^digits.
    bool agrees_with(const Matrix& other, std::int64_t digits) const {
        if (rows_ != other.rows_ || cols_ != other.cols_) return false;
        for (std::size_t k = 0; k < data_.size(); ++k)
            if (!data_[k].agrees_with(other.data_[k], digits)) return false;
        return true;
    }

    /// Entrywise equality modulo p^min(precisions).
    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t k = 0; k < a.data_.size(); ++k)
            if (!(a.data_[k] == b.data_[k])) return false;
        return true;
    }

    Matrix in_context(const Context& ctx) const {
        Matrix r(ctx, rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k].in_context(ctx);
        return r;
    }

    Matrix reduced_to(std::int64_t prec) const {
        Matrix r = *this;
        for (auto& x : r.data_) x = x.reduced_to(prec);
        return r;
    }

    bool commutes_with(const Matrix& b) const { return (*this) * b == b * (*this); }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i ? ", [" : "[";
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) s += ", ";
                s += format_scalar((*this)(i, j));
            }
            s += "]";
        }
        return s + "]";
    }

private:
    void check_same_shape(const Matrix& b, const char* op) const {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            throw DimensionMismatch(std::string("matrix ") + op + ": " + shape() + " vs " + b.shape());
    }

    Context ctx_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<PadicScalar> data_;
};

} // namespace simpson
