#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace bispan {

using Rational = mpq_class;
using Integer = mpz_class;

// Dense row-major matrix over exact rationals.
class Matrix
{
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    Matrix transpose() const;
    bool is_zero() const;
    bool operator==(const Matrix& other) const;

    std::string to_string() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);

struct Echelon
{
    Matrix reduced;           // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots; // pivot column of each nonzero row
    std::size_t rank() const { return pivots.size(); }
};

Echelon row_reduce(Matrix m);
std::size_t rank(const Matrix& m);

// Basis of { x : m x = 0 }, one vector per free column.
std::vector<std::vector<Rational>> kernel_basis(const Matrix& m);

// Rank of the span of a set of vectors of equal length.
std::size_t span_rank(const std::vector<std::vector<Rational>>& vectors, std::size_t dim);

// True iff every vector of `sub` lies in the span of `super`.
bool span_contains(const std::vector<std::vector<Rational>>& super,
                   const std::vector<std::vector<Rational>>& sub, std::size_t dim);

// Quotient of Q^n by the span of `relations` (each of length n). The projection
// is (n - rank) x n with full row rank and kernel equal to the relation span;
// quotient basis = standard vectors of the non-pivot columns.
struct Cokernel
{
    Matrix projection;
    std::vector<std::size_t> basis_columns;
};
Cokernel cokernel(const std::vector<std::vector<Rational>>& relations, std::size_t n);

// Nonzero invariant factors of an integer matrix (Smith normal form diagonal).
std::vector<Integer> smith_invariants(const std::vector<std::vector<Integer>>& m);

// Row echelon set grown one vector at a time.
class Spanning
{
  public:
    explicit Spanning(std::size_t dim) : dim_(dim) {}

    // True if v was independent of the rows so far.
    bool add(std::vector<Rational> v);
    bool contains(std::vector<Rational> v) const;
    std::size_t rank() const { return rows_.size(); }
    const std::vector<std::vector<Rational>>& rows() const { return rows_; }

  private:
    void reduce(std::vector<Rational>& v) const;

    std::size_t dim_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<std::size_t> pivots_;
};

// Integer copy of a matrix with integral entries; throws std::logic_error otherwise.
std::vector<std::vector<Integer>> integer_rows(const Matrix& m);

} // namespace bispan
