#pragma once

#include "bigint.hpp"
#include "errors.hpp"

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace gyent {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<std::vector<BigInt>>& rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r ? rows.front().size() : 0;
        IntMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c)
                throw InputError("ragged matrix: row " + std::to_string(i) + " has " +
                                 std::to_string(rows[i].size()) + " entries, expected " +
                                 std::to_string(c));
            for (std::size_t j = 0; j < c; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }

    static IntMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
        std::vector<std::vector<BigInt>> v;
        for (const auto& r : rows) {
            std::vector<BigInt> row;
            for (long long x : r)
                row.emplace_back(x);
            v.push_back(std::move(row));
        }
        return from_rows(v);
    }

    static IntMatrix diagonal(std::span<const BigInt> d) {
        IntMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<BigInt> column(std::size_t j) const {
        std::vector<BigInt> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    std::vector<std::vector<BigInt>> to_rows() const {
        std::vector<std::vector<BigInt>> out(rows_, std::vector<BigInt>(cols_));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out[i][j] = (*this)(i, j);
        return out;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    BigInt trace() const {
        require_square("trace");
        BigInt s = 0;
        for (std::size_t i = 0; i < rows_; ++i)
            s += (*this)(i, i);
        return s;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (x != 0)
                return false;
        return true;
    }

    void require_square(const char* what) const {
        if (!is_square())
            throw InputError(std::string(what) + ": matrix is " + std::to_string(rows_) + "x" +
                             std::to_string(cols_) + ", expected square");
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_)
            throw InputError("matrix product: " + std::to_string(a.rows_) + "x" +
                             std::to_string(a.cols_) + " times " + std::to_string(b.rows_) + "x" +
                             std::to_string(b.cols_));
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const BigInt& aik = a(i, k);
                if (aik == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend std::vector<BigInt> operator*(const IntMatrix& a, std::span<const BigInt> v) {
        if (a.cols_ != v.size())
            throw InputError("matrix-vector product: dimension mismatch");
        std::vector<BigInt> out(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j)
                out[i] += a(i, j) * v[j];
        return out;
    }

    friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) {
        a.require_same_shape(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            a.data_[i] += b.data_[i];
        return a;
    }

    friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) {
        a.require_same_shape(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            a.data_[i] -= b.data_[i];
        return a;
    }

    friend IntMatrix operator*(const BigInt& s, IntMatrix a) {
        for (auto& x : a.data_)
            x *= s;
        return a;
    }

    friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
        os << '[';
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? ",[" : "[");
            for (std::size_t j = 0; j < m.cols_; ++j)
                os << (j ? "," : "") << m(i, j);
            os << ']';
        }
        return os << ']';
    }

private:
    void require_same_shape(const IntMatrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            throw InputError("matrix shapes differ");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigInt> data_;
};

inline IntMatrix matrix_power(const IntMatrix& m, unsigned k) {
    m.require_square("matrix_power");
    IntMatrix result = IntMatrix::identity(m.rows());
    IntMatrix base = m;
    while (k) {
        if (k & 1U)
            result = result * base;
        k >>= 1U;
        if (k)
            base = base * base;
    }
    return result;
}

} // namespace gyent
