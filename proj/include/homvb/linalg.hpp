#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "homvb/field.hpp"

namespace homvb {

class LinalgError : public std::runtime_error {
public:
    explicit LinalgError(const std::string& msg) : std::runtime_error(msg) {}
};

using Vector = std::vector<Scalar>;

/// Dense matrix over one exact field, row-major. All entries share the
/// field fixed at construction; dimensions may be zero.
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols, const Field& f);
    static Matrix identity(std::size_t n, const Field& f);
    static Matrix from_rows(const std::vector<Vector>& rows, const Field& f);
    static Matrix column(const Vector& v, const Field& f);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Field& field() const { return field_; }
    bool is_square() const { return rows_ == cols_; }

    const Scalar& at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, const Scalar& v);

    Matrix operator+(const Matrix& other) const;
    Matrix operator-(const Matrix& other) const;
    Matrix operator*(const Matrix& other) const;
    Matrix operator*(const Scalar& c) const;
    Matrix operator-() const;
    bool operator==(const Matrix& other) const;
    bool operator!=(const Matrix& other) const { return !(*this == other); }

    Matrix transpose() const;
    Matrix pow(std::size_t e) const;
    Vector apply(const Vector& v) const;  // matrix * column vector
    bool is_zero() const;
    bool is_identity() const;
    Scalar trace() const;

    /// Row-major flattening, length rows*cols.
    Vector vectorize() const;
    static Matrix from_vector(const Vector& v, std::size_t rows, std::size_t cols, const Field& f);

    /// Columns j of this matrix for j in cols, assembled left to right.
    Matrix select_columns(const std::vector<std::size_t>& cols) const;
    /// Horizontal concatenation [this | other].
    Matrix hcat(const Matrix& other) const;
    /// Vertical concatenation [this ; other].
    Matrix vcat(const Matrix& other) const;
    /// Contiguous block of size h x w starting at (i0, j0).
    Matrix block(std::size_t i0, std::size_t j0, std::size_t h, std::size_t w) const;

    /// Lexicographic order on (rows, cols, entries); used for canonical sorting.
    static int compare(const Matrix& a, const Matrix& b);

private:
    std::size_t idx(std::size_t i, std::size_t j) const { return i * cols_ + j; }
    std::size_t rows_, cols_;
    Field field_;
    std::vector<Scalar> entries_;
};

struct RrefResult {
    Matrix reduced;
    std::size_t rank;
    std::vector<std::size_t> pivots;  // pivot column per pivot row
};

/// Gauss-Jordan over the exact field. Pivot = first nonzero entry in the
/// column scan, so the output is deterministic.
RrefResult rref(const Matrix& m);

/// Basis of the right null space. Free columns in increasing order; the
/// basis vector for free column j has a 1 in position j.
std::vector<Vector> kernel_basis(const Matrix& m);

/// One exact solution of A x = b, or nullopt when inconsistent. Free
/// variables are set to zero.
std::optional<Vector> solve(const Matrix& a, const Vector& b);

/// Rank via rref.
std::size_t rank(const Matrix& m);

/// Monic minimal polynomial, coefficients low to high (constant first).
/// Computed from the first linear dependence among I, M, M^2, ...
std::vector<Scalar> min_poly(const Matrix& m);

/// Least n >= 1 with M^n = 0. Throws LinalgError for non-nilpotent input.
/// Returns 0 for the empty 0x0 matrix.
std::size_t nilpotency_index(const Matrix& m);

bool is_nilpotent(const Matrix& m);

Matrix kron(const Matrix& a, const Matrix& b);
Matrix direct_sum(const Matrix& a, const Matrix& b);

/// Exact inverse of a square matrix, or nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

/// True when the span of the columns of sub contains v.
bool in_column_span(const Matrix& sub, const Vector& v);

}  // namespace homvb
