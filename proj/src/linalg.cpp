#include "homvb/linalg.hpp"

#include <algorithm>
#include <utility>

namespace homvb {

Matrix::Matrix(std::size_t rows, std::size_t cols, const Field& f)
    : rows_(rows), cols_(cols), field_(f), entries_(rows * cols, Scalar::zero(f)) {}

Matrix Matrix::identity(std::size_t n, const Field& f) {
    Matrix m(n, n, f);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, Scalar::one(f));
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, const Field& f) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.front().size();
    Matrix m(r, c, f);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw LinalgError("ragged row lengths");
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

Matrix Matrix::column(const Vector& v, const Field& f) {
    Matrix m(v.size(), 1, f);
    for (std::size_t i = 0; i < v.size(); ++i) m.set(i, 0, v[i]);
    return m;
}

const Scalar& Matrix::at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw LinalgError("index out of range");
    return entries_[idx(i, j)];
}

void Matrix::set(std::size_t i, std::size_t j, const Scalar& v) {
    if (i >= rows_ || j >= cols_) throw LinalgError("index out of range");
    if (v.field() != field_) throw FieldError("entry field differs from matrix field");
    entries_[idx(i, j)] = v;
}

Matrix Matrix::operator+(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw LinalgError("shape mismatch in add");
    Matrix r(rows_, cols_, field_);
    for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] = entries_[k] + other.entries_[k];
    return r;
}

Matrix Matrix::operator-(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw LinalgError("shape mismatch in sub");
    Matrix r(rows_, cols_, field_);
    for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] = entries_[k] - other.entries_[k];
    return r;
}

Matrix Matrix::operator*(const Matrix& other) const {
    if (cols_ != other.rows_) throw LinalgError("shape mismatch in mul");
    Matrix r(rows_, other.cols_, field_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& a = entries_[idx(i, k)];
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) {
                const Scalar& b = other.entries_[other.idx(k, j)];
                if (b.is_zero()) continue;
                r.entries_[r.idx(i, j)] += a * b;
            }
        }
    }
    return r;
}

Matrix Matrix::operator*(const Scalar& c) const {
    Matrix r(rows_, cols_, field_);
    for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] = entries_[k] * c;
    return r;
}

Matrix Matrix::operator-() const {
    Matrix r(rows_, cols_, field_);
    for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] = -entries_[k];
    return r;
}

bool Matrix::operator==(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && field_ == other.field_ &&
           entries_ == other.entries_;
}

Matrix Matrix::transpose() const {
    Matrix r(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.set(j, i, entries_[idx(i, j)]);
    return r;
}

Matrix Matrix::pow(std::size_t e) const {
    if (!is_square()) throw LinalgError("pow of non-square matrix");
    Matrix acc = identity(rows_, field_);
    for (std::size_t k = 0; k < e; ++k) acc = acc * *this;
    return acc;
}

Vector Matrix::apply(const Vector& v) const {
    if (v.size() != cols_) throw LinalgError("shape mismatch in apply");
    Vector r(rows_, Scalar::zero(field_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!entries_[idx(i, j)].is_zero() && !v[j].is_zero()) r[i] += entries_[idx(i, j)] * v[j];
    return r;
}

bool Matrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool Matrix::is_identity() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            const Scalar& e = entries_[idx(i, j)];
            if (i == j ? !e.is_one() : !e.is_zero()) return false;
        }
    return true;
}

Scalar Matrix::trace() const {
    if (!is_square()) throw LinalgError("trace of non-square matrix");
    Scalar t = Scalar::zero(field_);
    for (std::size_t i = 0; i < rows_; ++i) t += entries_[idx(i, i)];
    return t;
}

Vector Matrix::vectorize() const { return entries_; }

Matrix Matrix::from_vector(const Vector& v, std::size_t rows, std::size_t cols, const Field& f) {
    if (v.size() != rows * cols) throw LinalgError("vector length does not match shape");
    Matrix m(rows, cols, f);
    for (std::size_t k = 0; k < v.size(); ++k) m.set(k / cols, k % cols, v[k]);
    return m;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& cols) const {
    Matrix r(rows_, cols.size(), field_);
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j] >= cols_) throw LinalgError("column index out of range");
        for (std::size_t i = 0; i < rows_; ++i) r.set(i, j, entries_[idx(i, cols[j])]);
    }
    return r;
}

Matrix Matrix::hcat(const Matrix& other) const {
    if (rows_ != other.rows_) throw LinalgError("row mismatch in hcat");
    Matrix r(rows_, cols_ + other.cols_, field_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) r.set(i, j, entries_[idx(i, j)]);
        for (std::size_t j = 0; j < other.cols_; ++j) r.set(i, cols_ + j, other.at(i, j));
    }
    return r;
}

Matrix Matrix::vcat(const Matrix& other) const {
    if (cols_ != other.cols_) throw LinalgError("column mismatch in vcat");
    Matrix r(rows_ + other.rows_, cols_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.set(i, j, entries_[idx(i, j)]);
    for (std::size_t i = 0; i < other.rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.set(rows_ + i, j, other.at(i, j));
    return r;
}

Matrix Matrix::block(std::size_t i0, std::size_t j0, std::size_t h, std::size_t w) const {
    if (i0 + h > rows_ || j0 + w > cols_) throw LinalgError("block out of range");
    Matrix r(h, w, field_);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < w; ++j) r.set(i, j, entries_[idx(i0 + i, j0 + j)]);
    return r;
}

int Matrix::compare(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_ ? -1 : 1;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_ ? -1 : 1;
    for (std::size_t k = 0; k < a.entries_.size(); ++k) {
        int c = cmp(a.entries_[k].raw(), b.entries_[k].raw());
        if (c != 0) return c < 0 ? -1 : 1;
    }
    return 0;
}

RrefResult rref(const Matrix& m) {
    Matrix r = m;
    std::size_t nrows = r.rows(), ncols = r.cols();
    std::vector<std::size_t> pivots;
    std::size_t prow = 0;
    for (std::size_t col = 0; col < ncols && prow < nrows; ++col) {
        // first nonzero entry at or below prow
        std::size_t sel = nrows;
        for (std::size_t i = prow; i < nrows; ++i) {
            if (!r.at(i, col).is_zero()) { sel = i; break; }
        }
        if (sel == nrows) continue;
        if (sel != prow) {
            for (std::size_t j = 0; j < ncols; ++j) {
                Scalar tmp = r.at(prow, j);
                r.set(prow, j, r.at(sel, j));
                r.set(sel, j, tmp);
            }
        }
        Scalar inv = r.at(prow, col).inverse();
        for (std::size_t j = col; j < ncols; ++j) r.set(prow, j, r.at(prow, j) * inv);
        for (std::size_t i = 0; i < nrows; ++i) {
            if (i == prow || r.at(i, col).is_zero()) continue;
            Scalar factor = r.at(i, col);
            for (std::size_t j = col; j < ncols; ++j)
                r.set(i, j, r.at(i, j) - factor * r.at(prow, j));
        }
        pivots.push_back(col);
        ++prow;
    }
    std::size_t rk = pivots.size();
    return RrefResult{std::move(r), rk, std::move(pivots)};
}

std::vector<Vector> kernel_basis(const Matrix& m) {
    RrefResult rr = rref(m);
    std::size_t ncols = m.cols();
    std::vector<bool> is_pivot(ncols, false);
    for (std::size_t p : rr.pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    const Field& f = m.field();
    for (std::size_t j = 0; j < ncols; ++j) {
        if (is_pivot[j]) continue;
        Vector v(ncols, Scalar::zero(f));
        v[j] = Scalar::one(f);
        for (std::size_t i = 0; i < rr.pivots.size(); ++i)
            v[rr.pivots[i]] = -rr.reduced.at(i, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
    if (b.size() != a.rows()) throw LinalgError("rhs length mismatch");
    Matrix aug = a.hcat(Matrix::column(b, a.field()));
    RrefResult rr = rref(aug);
    std::size_t last = a.cols();
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) {
        if (rr.pivots[i] == last) return std::nullopt;  // pivot in augmented column
    }
    Vector x(a.cols(), Scalar::zero(a.field()));
    for (std::size_t i = 0; i < rr.pivots.size(); ++i)
        x[rr.pivots[i]] = rr.reduced.at(i, last);
    return x;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

std::vector<Scalar> min_poly(const Matrix& m) {
    if (!m.is_square()) throw LinalgError("min_poly of non-square matrix");
    const Field& f = m.field();
    std::size_t n = m.rows();
    if (n == 0) return {Scalar::one(f)};  // constant 1: the zero-length operator
    std::vector<Vector> powers;           // vectorized I, M, M^2, ...
    Matrix p = Matrix::identity(n, f);
    powers.push_back(p.vectorize());
    for (std::size_t k = 1; k <= n; ++k) {
        p = p * m;
        Vector target = p.vectorize();
        // columns = previous powers; solve for a dependence
        Matrix span(n * n, k, f);
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < n * n; ++i) span.set(i, j, powers[j][i]);
        if (auto c = solve(span, target)) {
            std::vector<Scalar> coeffs(k + 1, Scalar::zero(f));
            for (std::size_t j = 0; j < k; ++j) coeffs[j] = -(*c)[j];
            coeffs[k] = Scalar::one(f);
            return coeffs;
        }
        powers.push_back(std::move(target));
    }
    throw LinalgError("min_poly: no dependence up to degree n");  // unreachable
}

std::size_t nilpotency_index(const Matrix& m) {
    if (!m.is_square()) throw LinalgError("nilpotency_index of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return 0;
    Matrix p = m;
    for (std::size_t k = 1; k <= n; ++k) {
        if (p.is_zero()) return k;
        p = p * m;
    }
    throw LinalgError("matrix is not nilpotent");
}

bool is_nilpotent(const Matrix& m) {
    if (!m.is_square()) return false;
    if (m.rows() == 0) return true;
    return m.pow(m.rows()).is_zero();
}

Matrix kron(const Matrix& a, const Matrix& b) {
    if (a.field() != b.field()) throw FieldError("field mismatch in kron");
    Matrix r(a.rows() * b.rows(), a.cols() * b.cols(), a.field());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a.at(i, j).is_zero()) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r.set(i * b.rows() + k, j * b.cols() + l, a.at(i, j) * b.at(k, l));
        }
    return r;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
    if (a.field() != b.field()) throw FieldError("field mismatch in direct_sum");
    Matrix r(a.rows() + b.rows(), a.cols() + b.cols(), a.field());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.set(i, j, a.at(i, j));
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) r.set(a.rows() + i, a.cols() + j, b.at(i, j));
    return r;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (!m.is_square()) throw LinalgError("inverse of non-square matrix");
    std::size_t n = m.rows();
    RrefResult rr = rref(m.hcat(Matrix::identity(n, m.field())));
    // singular iff some pivot falls in the adjoined identity columns
    for (std::size_t i = 0; i < n; ++i)
        if (rr.pivots[i] != i) return std::nullopt;
    return rr.reduced.block(0, n, n, n);
}

bool in_column_span(const Matrix& sub, const Vector& v) {
    return solve(sub, v).has_value();
}

}  // namespace homvb
