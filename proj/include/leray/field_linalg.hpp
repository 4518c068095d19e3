#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "leray/errors.hpp"

namespace leray {

bool is_prime(std::uint32_t n);

// Element of the prime field F_p.  The modulus travels with the value;
// mixing moduli in one expression throws.
class FieldElem {
public:
    FieldElem(std::int64_t value, std::uint32_t p);

    std::uint32_t value() const { return value_; }
    std::uint32_t modulus() const { return mod_; }

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator-() const;
    FieldElem inverse() const;  // throws InvariantViolation on zero
    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }
    bool is_zero() const { return value_ == 0; }

private:
    std::uint32_t value_;
    std::uint32_t mod_;
};

// Coordinate vector with entries in [0, p); the modulus is carried by the
// matrix or operation it is used with.
using Vec = std::vector<std::uint32_t>;

// Dense matrix over F_p.  Row-major storage; all entries kept reduced.
class Matrix {
public:
    Matrix() : Matrix(0, 0, 2) {}
    Matrix(std::size_t rows, std::size_t cols, std::uint32_t p = 2);
    static Matrix identity(std::size_t n, std::uint32_t p = 2);
    static Matrix from_columns(std::size_t rows, const std::vector<Vec>& cols, std::uint32_t p = 2);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint32_t modulus() const { return mod_; }

    std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    FieldElem elem(std::size_t r, std::size_t c) const { return FieldElem(at(r, c), mod_); }
    void set(std::size_t r, std::size_t c, std::int64_t v);
    void add_at(std::size_t r, std::size_t c, std::int64_t v);

    Vec column(std::size_t c) const;
    Vec row(std::size_t r) const;
    void set_column(std::size_t c, const Vec& v);

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Vec apply(const Vec& v) const;  // matrix * column vector
    bool is_zero() const;
    bool is_identity() const;

    // Submatrix of the given rows (in the given order), all columns.
    Matrix select_rows(const std::vector<std::size_t>& rows) const;

private:
    std::size_t rows_, cols_;
    std::uint32_t mod_;
    std::vector<std::uint32_t> data_;
};

Matrix hconcat(const Matrix& a, const Matrix& b);

int rank(const Matrix& m);

// Particular solution of A x = b, free coordinates set to zero; nullopt when
// no solution exists.  NoSolution is a value, not an error.
std::optional<Vec> solve(const Matrix& a, const Vec& b);

// Columns form the canonical (RREF-derived) basis of ker(m).
Matrix kernel_basis(const Matrix& m);

// Deterministic maximal independent subset of m's columns, kept left to right.
Matrix column_space_basis(const Matrix& m);

// span(b) subset of span(a)?
bool column_space_contains(const Matrix& a, const Matrix& b);

// Basis of span(a) intersected with span(b).
Matrix intersect_column_spaces(const Matrix& a, const Matrix& b);

// Subspace pair Z >= B of a coordinate space, representing the quotient
// span(Z)/span(B).  Construction validates span(B) <= span(Z) and fixes a
// deterministic representative basis (columns of Z, chosen greedily).
class Subquotient {
public:
    Subquotient(std::size_t ambient_dim, Matrix z, Matrix b);
    static Subquotient zero(std::size_t ambient_dim, std::uint32_t p = 2);

    std::size_t ambient_dim() const { return ambient_; }
    std::uint32_t modulus() const { return mod_; }
    int dim() const { return dim_; }
    const Matrix& cycles() const { return z_; }
    const Matrix& boundaries() const { return b_; }
    const Matrix& representatives() const { return reps_; }

    // Coordinates of an ambient vector's class in the representative basis;
    // nullopt when the vector lies outside span(Z).
    std::optional<Vec> try_coords(const Vec& ambient_vector) const;
    Vec coords(const Vec& ambient_vector) const;  // throws InvariantViolation

private:
    std::size_t ambient_;
    std::uint32_t mod_;
    int dim_;
    Matrix z_, b_, reps_;
    Matrix coord_system_;  // [reps | B], solved against by coords()
};

int subquotient_dim(const Subquotient& s);

// Matrix (target reps x source reps) of the map induced by `map` on the
// quotients.  Throws NotWellDefined unless map.span(Z_S) <= span(Z_T) and
// map.span(B_S) <= span(B_T).
Matrix induced_map(const Subquotient& source, const Subquotient& target, const Matrix& map);

}  // namespace leray
