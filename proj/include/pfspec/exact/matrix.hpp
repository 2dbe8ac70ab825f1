#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfspec/errors.hpp"
#include "pfspec/exact/poly.hpp"
#include "pfspec/exact/rational.hpp"
#include "pfspec/exact/scalar.hpp"

namespace pfspec::exact {

/// Dense row-major matrix over an exact field.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<T> column(std::size_t j) const {
        std::vector<T> c;
        c.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
        return c;
    }
    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                              a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    /// Leading principal block of size r x c.
    Matrix block(std::size_t r, std::size_t c) const {
        Matrix b(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) b(i, j) = (*this)(i, j);
        return b;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw PreconditionError("matrix shape mismatch");
        Matrix r(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const T& xik = x(i, k);
                if (xik.is_zero()) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) {
                    const T& ykj = y(k, j);
                    if (!ykj.is_zero()) r(i, j) += xik * ykj;
                }
            }
        return r;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        if (v.size() != cols_) throw PreconditionError("vector length mismatch");
        std::vector<T> r(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!(*this)(i, j).is_zero() && !v[j].is_zero()) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    Matrix& operator+=(const Matrix& o) {
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    Matrix& operator*=(const T& s) {
        for (auto& x : a_) x *= s;
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

    /// this - s * I
    Matrix shifted(const T& s) const {
        Matrix m = *this;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) m(i, i) -= s;
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    bool is_upper_triangular() const {
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < std::min(i, cols_); ++j)
                if (!(*this)(i, j).is_zero()) return false;
        return true;
    }

    /// Reduced row echelon form in place; returns pivot columns.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t p = r;
            while (p < rows_ && (*this)(p, c).is_zero()) ++p;
            if (p == rows_) continue;
            swap_rows(p, r);
            T inv = T(1) / (*this)(r, c);
            for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || (*this)(i, c).is_zero()) continue;
                T f = (*this)(i, c);
                for (std::size_t j = c; j < cols_; ++j)
                    if (!(*this)(r, j).is_zero()) (*this)(i, j) -= f * (*this)(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    std::size_t rank() const {
        Matrix m = *this;
        return m.rref().size();
    }

    /// Basis of the right null space, one vector per free column.
    std::vector<std::vector<T>> nullspace() const {
        Matrix m = *this;
        auto pivots = m.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto p : pivots) is_pivot[p] = true;
        std::vector<std::vector<T>> basis;
        for (std::size_t f = 0; f < cols_; ++f) {
            if (is_pivot[f]) continue;
            std::vector<T> v(cols_, T(0));
            v[f] = T(1);
            for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m(k, f);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    /// Inverse by Gauss-Jordan; throws DivisionByZero when singular.
    Matrix inverse() const {
        if (rows_ != cols_) throw PreconditionError("inverse of a non-square matrix");
        std::size_t n = rows_;
        Matrix aug(n, 2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
            aug(i, n + i) = T(1);
        }
        auto pivots = aug.rref();
        if (pivots.size() < n || pivots[n - 1] != n - 1) throw DivisionByZero();
        Matrix inv(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
        return inv;
    }

    /**
     * Characteristic polynomial det(x I - A) via reduction to upper Hessenberg
     * form followed by the standard three-term determinant recurrence.
     */
    Poly<T> charpoly() const {
        if (rows_ != cols_) throw PreconditionError("charpoly of a non-square matrix");
        std::size_t n = rows_;
        Matrix h = *this;
        for (std::size_t m = 1; m + 1 < n; ++m) {
            std::size_t i = m;
            while (i < n && h(i, m - 1).is_zero()) ++i;
            if (i == n) continue;
            if (i != m) {
                h.swap_rows(i, m);
                h.swap_cols(i, m);
            }
            T inv = T(1) / h(m, m - 1);
            for (std::size_t j = m + 1; j < n; ++j) {
                if (h(j, m - 1).is_zero()) continue;
                T u = h(j, m - 1) * inv;
                for (std::size_t k = 0; k < n; ++k)
                    if (!h(m, k).is_zero()) h(j, k) -= u * h(m, k);
                for (std::size_t k = 0; k < n; ++k)
                    if (!h(k, j).is_zero()) h(k, m) += u * h(k, j);
            }
        }
        std::vector<Poly<T>> p;
        p.push_back(Poly<T>::constant(T(1)));
        for (std::size_t m = 1; m <= n; ++m) {
            Poly<T> next = Poly<T>({-h(m - 1, m - 1), T(1)}) * p[m - 1];
            T prod(1);
            for (std::size_t i = m - 1; i >= 1; --i) {
                prod *= h(i, i - 1);
                if (prod.is_zero()) break;
                const T& him = h(i - 1, m - 1);
                if (!him.is_zero()) next -= p[i - 1] * (him * prod);
            }
            p.push_back(std::move(next));
        }
        return p.back();
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < rows_; ++i) {
            out += "[";
            for (std::size_t j = 0; j < cols_; ++j) out += (j ? ", " : "") + (*this)(i, j).to_string();
            out += "]\n";
        }
        return out;
    }

private:
    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> a_;
};

using SMatrix = Matrix<Scalar>;
using QMatrix = Matrix<Rational>;

/**
 * Rank over Q by fraction-free (Bareiss) elimination: every row is first
 * cleared of denominators, then all arithmetic stays in Z.
 */
std::size_t rank_fraction_free(const QMatrix& m);

}  // namespace pfspec::exact
