#include "bispan/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bispan {

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols)
{
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw std::invalid_argument("Matrix::from_rows: ragged rows");
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

bool Matrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return sgn(x) == 0; });
}

bool Matrix::operator==(const Matrix& other) const
{
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

std::string Matrix::to_string() const
{
    std::ostringstream out;
    out << "[";
    for (std::size_t r = 0; r < rows_; ++r) {
        out << (r ? "; " : "");
        for (std::size_t c = 0; c < cols_; ++c)
            out << (c ? " " : "") << (*this)(r, c).get_str();
    }
    out << "]";
    return out.str();
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix product: shape mismatch");
    Matrix p(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (sgn(a(i, k)) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                p(i, j) += a(i, k) * b(k, j);
        }
    return p;
}

namespace {
    Matrix elementwise(const Matrix& a, const Matrix& b, int sign)
    {
        if (a.rows() != b.rows() || a.cols() != b.cols())
            throw std::invalid_argument("matrix sum: shape mismatch");
        Matrix s(a.rows(), a.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                s(i, j) = sign > 0 ? Rational(a(i, j) + b(i, j)) : Rational(a(i, j) - b(i, j));
        return s;
    }
}

Matrix operator-(const Matrix& a, const Matrix& b) { return elementwise(a, b, -1); }
Matrix operator+(const Matrix& a, const Matrix& b) { return elementwise(a, b, +1); }

Echelon row_reduce(Matrix m)
{
    std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && sgn(m(p, c)) == 0)
            ++p;
        if (p == rows)
            continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(m(p, j), m(r, j));
        Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < cols; ++j)
            m(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(m(i, c)) == 0)
                continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < cols; ++j)
                m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    Matrix reduced(r, cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            reduced(i, j) = m(i, j);
    return {std::move(reduced), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return row_reduce(m).rank(); }

std::vector<std::vector<Rational>> kernel_basis(const Matrix& m)
{
    auto e = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        std::vector<Rational> v(m.cols());
        v[free] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            v[e.pivots[i]] = -e.reduced(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t span_rank(const std::vector<std::vector<Rational>>& vectors, std::size_t dim)
{
    return rank(Matrix::from_rows(vectors, dim));
}

bool span_contains(const std::vector<std::vector<Rational>>& super,
                   const std::vector<std::vector<Rational>>& sub, std::size_t dim)
{
    auto base = span_rank(super, dim);
    auto all = super;
    all.insert(all.end(), sub.begin(), sub.end());
    return span_rank(all, dim) == base;
}

Cokernel cokernel(const std::vector<std::vector<Rational>>& relations, std::size_t n)
{
    auto e = row_reduce(Matrix::from_rows(relations, n));
    std::vector<int> pivot_row(n, -1);
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
        pivot_row[e.pivots[i]] = static_cast<int>(i);
    Cokernel out;
    for (std::size_t c = 0; c < n; ++c)
        if (pivot_row[c] < 0)
            out.basis_columns.push_back(c);
    out.projection = Matrix(out.basis_columns.size(), n);
    for (std::size_t q = 0; q < out.basis_columns.size(); ++q) {
        std::size_t free = out.basis_columns[q];
        out.projection(q, free) = 1;
        // e_pivot = -sum_free R[row][free] e_free modulo relations
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            out.projection(q, e.pivots[i]) = -e.reduced(i, free);
    }
    return out;
}

std::vector<Integer> smith_invariants(const std::vector<std::vector<Integer>>& input)
{
    auto a = input;
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::vector<Integer> diag;
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // smallest nonzero entry in the remaining block as pivot
        std::size_t pr = rows, pc = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (sgn(a[i][j]) != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
                    pr = i;
                    pc = j;
                }
        if (pr == rows)
            break;
        std::swap(a[t], a[pr]);
        for (auto& row : a)
            std::swap(row[t], row[pc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (sgn(a[i][t]) == 0)
                    continue;
                Integer q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j)
                    a[i][j] -= q * a[t][j];
                if (sgn(a[i][t]) != 0) {
                    std::swap(a[t], a[i]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (sgn(a[t][j]) == 0)
                    continue;
                Integer q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i)
                    a[i][j] -= q * a[i][t];
                if (sgn(a[t][j]) != 0) {
                    for (auto& row : a)
                        std::swap(row[t], row[j]);
                    clean = false;
                }
            }
            if (clean) {
                // divisibility condition on the remaining block
                for (std::size_t i = t + 1; i < rows && clean; ++i)
                    for (std::size_t j = t + 1; j < cols; ++j)
                        if (a[i][j] % a[t][t] != 0) {
                            for (std::size_t k = t; k < cols; ++k)
                                a[t][k] += a[i][k];
                            clean = false;
                            break;
                        }
            }
        }
        diag.push_back(abs(a[t][t]));
        ++t;
    }
    return diag;
}

bool Spanning::add(std::vector<Rational> v)
{
    reduce(v);
    std::size_t p = 0;
    while (p < dim_ && v[p] == 0)
        ++p;
    if (p == dim_)
        return false;
    Rational lead = v[p];
    for (auto& x : v)
        x /= lead;
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
}

bool Spanning::contains(std::vector<Rational> v) const
{
    reduce(v);
    for (const auto& x : v)
        if (x != 0)
            return false;
    return true;
}

void Spanning::reduce(std::vector<Rational>& v) const
{
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        Rational c = v[pivots_[r]];
        if (c == 0)
            continue;
        for (std::size_t i = 0; i < dim_; ++i)
            v[i] -= c * rows_[r][i];
    }
}

std::vector<std::vector<Integer>> integer_rows(const Matrix& m)
{
    std::vector<std::vector<Integer>> out(m.rows(), std::vector<Integer>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (m(r, c).get_den() != 1)
                throw std::logic_error("matrix has a non-integer entry");
            out[r][c] = m(r, c).get_num();
        }
    return out;
}

} // namespace bispan
