#include "homvb/hom_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace homvb {

namespace {

Matrix column_space_basis(const Matrix& m) {
    RrefResult rr = rref(m.transpose());
    Matrix out(m.rows(), rr.rank, m.field());
    for (std::size_t i = 0; i < rr.rank; ++i)
        for (std::size_t j = 0; j < m.rows(); ++j) out.set(j, i, rr.reduced.at(i, j));
    return out;
}

// Canonical basis of the span of coordinate vectors: nonzero rows of rref.
std::vector<Vector> canonical_span(const std::vector<Vector>& vecs, std::size_t len, const Field& f) {
    if (vecs.empty()) return {};
    Matrix m(vecs.size(), len, f);
    for (std::size_t i = 0; i < vecs.size(); ++i)
        for (std::size_t j = 0; j < len; ++j) m.set(i, j, vecs[i][j]);
    RrefResult rr = rref(m);
    std::vector<Vector> out;
    for (std::size_t i = 0; i < rr.rank; ++i) {
        Vector v(len, Scalar::zero(f));
        for (std::size_t j = 0; j < len; ++j) v[j] = rr.reduced.at(i, j);
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

HomSpace hom_space(const UnipotentModule& f, const UnipotentModule& fp) {
    return HomSpace{f, fp, intertwiner_basis(f, fp)};
}

EndAlgebra::EndAlgebra(std::size_t n, const Field& f, std::vector<Matrix> span)
    : n_(n), field_(f), basis_(std::move(span)) {
    if (basis_.empty()) throw AlgebraError("algebra needs a nonempty spanning set");
    for (const auto& b : basis_)
        if (!b.is_square() || b.rows() != n_ || b.field() != field_)
            throw AlgebraError("spanning matrices must be square of the declared size and field");
    // linear independence + location of the identity in the span
    Matrix s(n_ * n_, basis_.size(), field_);
    for (std::size_t j = 0; j < basis_.size(); ++j) {
        Vector v = basis_[j].vectorize();
        for (std::size_t i = 0; i < v.size(); ++i) s.set(i, j, v[i]);
    }
    if (rank(s) != basis_.size()) throw AlgebraError("spanning set is linearly dependent");
    auto id_coords = solve(s, Matrix::identity(n_, field_).vectorize());
    if (!id_coords) throw AlgebraError("identity does not lie in the span");
    if (!basis_.front().is_identity()) {
        std::size_t j = 0;
        while (j < basis_.size() && (*id_coords)[j].is_zero()) ++j;
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(j));
        basis_.insert(basis_.begin(), Matrix::identity(n_, field_));
    }
    compute_structure_constants();
    verify_associativity();
    bool valid_char = !field_.is_prime_field() ||
                      static_cast<std::size_t>(field_.modulus()) > basis_.size();
    if (valid_char) compute_radical();
}

void EndAlgebra::compute_structure_constants() {
    std::size_t d = basis_.size();
    Matrix aug(n_ * n_, d + d * d, field_);
    for (std::size_t j = 0; j < d; ++j) {
        Vector v = basis_[j].vectorize();
        for (std::size_t i = 0; i < v.size(); ++i) aug.set(i, j, v[i]);
    }
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            Vector v = (basis_[a] * basis_[b]).vectorize();
            for (std::size_t i = 0; i < v.size(); ++i) aug.set(i, d + a * d + b, v[i]);
        }
    RrefResult rr = rref(aug);
    // the first d columns are independent, so they hold all pivots
    for (std::size_t i = 0; i < rr.pivots.size(); ++i)
        if (rr.pivots[i] != i)
            throw AlgebraError("spanning set is not multiplicatively closed");
    sc_.assign(d * d * d, Scalar::zero(field_));
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t k = 0; k < d; ++k)
                sc_[(a * d + b) * d + k] = rr.reduced.at(k, d + a * d + b);
    commutative_ = true;
    for (std::size_t a = 0; a < d && commutative_; ++a)
        for (std::size_t b = a + 1; b < d && commutative_; ++b)
            for (std::size_t k = 0; k < d; ++k)
                if (structure_constant(a, b, k) != structure_constant(b, a, k)) {
                    commutative_ = false;
                    break;
                }
}

void EndAlgebra::verify_associativity() const {
    std::size_t d = basis_.size();
    // nonzero entries of each row of the table, for sparse accumulation
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> nz(d * d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t k = 0; k < d; ++k)
                if (!structure_constant(a, b, k).is_zero())
                    nz[a * d + b].push_back({k, structure_constant(a, b, k)});
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t c = 0; c < d; ++c) {
                Vector lhs(d, Scalar::zero(field_)), rhs(d, Scalar::zero(field_));
                for (const auto& [m, cab] : nz[a * d + b])
                    for (const auto& [l, cmc] : nz[m * d + c]) lhs[l] += cab * cmc;
                for (const auto& [m, cbc] : nz[b * d + c])
                    for (const auto& [l, cam] : nz[a * d + m]) rhs[l] += cbc * cam;
                if (lhs != rhs) throw AlgebraError("structure constants fail associativity");
            }
    // identity must be neutral in the table
    for (std::size_t b = 0; b < d; ++b)
        for (std::size_t k = 0; k < d; ++k) {
            Scalar expect = k == b ? Scalar::one(field_) : Scalar::zero(field_);
            if (structure_constant(0, b, k) != expect || structure_constant(b, 0, k) != expect)
                throw AlgebraError("identity is not neutral in the table");
        }
}

Vector EndAlgebra::coordinates(const Matrix& x) const {
    Matrix s(n_ * n_, basis_.size(), field_);
    for (std::size_t j = 0; j < basis_.size(); ++j) {
        Vector v = basis_[j].vectorize();
        for (std::size_t i = 0; i < v.size(); ++i) s.set(i, j, v[i]);
    }
    auto c = solve(s, x.vectorize());
    if (!c) throw AlgebraError("element lies outside the algebra");
    return *c;
}

Matrix EndAlgebra::element(const Vector& coords) const {
    if (coords.size() != basis_.size()) throw AlgebraError("coordinate length mismatch");
    Matrix x(n_, n_, field_);
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (!coords[i].is_zero()) x = x + basis_[i] * coords[i];
    return x;
}

Vector EndAlgebra::multiply(const Vector& x, const Vector& y) const {
    std::size_t d = basis_.size();
    Vector out(d, Scalar::zero(field_));
    for (std::size_t i = 0; i < d; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (y[j].is_zero()) continue;
            Scalar xy = x[i] * y[j];
            for (std::size_t k = 0; k < d; ++k) {
                const Scalar& c = structure_constant(i, j, k);
                if (!c.is_zero()) out[k] += xy * c;
            }
        }
    }
    return out;
}

Matrix EndAlgebra::left_regular(const Vector& coords) const {
    std::size_t d = basis_.size();
    Matrix l(d, d, field_);
    for (std::size_t j = 0; j < d; ++j) {
        Vector ej(d, Scalar::zero(field_));
        ej[j] = Scalar::one(field_);
        Vector col = multiply(coords, ej);
        for (std::size_t k = 0; k < d; ++k) l.set(k, j, col[k]);
    }
    return l;
}

void EndAlgebra::compute_radical() {
    std::size_t d = basis_.size();
    // Gram matrix of (x, y) -> trace(L_x L_y) on basis pairs, from the table:
    // trace(L_i L_j) = sum_{m,k} c[i][m][k] c[j][k][m]
    Matrix gram(d, d, field_);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Scalar t = Scalar::zero(field_);
            for (std::size_t m = 0; m < d; ++m)
                for (std::size_t k = 0; k < d; ++k) {
                    const Scalar& a = structure_constant(i, m, k);
                    if (a.is_zero()) continue;
                    t += a * structure_constant(j, k, m);
                }
            gram.set(i, j, t);
        }
    RadicalData rd;
    rd.basis = canonical_span(kernel_basis(gram), d, field_);
    // closure of the radical as a two-sided ideal
    for (const auto& r : rd.basis)
        for (std::size_t i = 0; i < d; ++i) {
            Vector ei(d, Scalar::zero(field_));
            ei[i] = Scalar::one(field_);
            for (const Vector& prod : {multiply(ei, r), multiply(r, ei)}) {
                std::vector<Vector> probe = rd.basis;
                probe.push_back(prod);
                if (canonical_span(probe, d, field_).size() != rd.basis.size())
                    throw AlgebraError("radical candidate is not an ideal");
            }
        }
    // nilpotency chain rad^1 >= rad^2 >= ... >= 0
    rd.power_dims.push_back(rd.basis.size());
    std::vector<Vector> power = rd.basis;
    while (!power.empty()) {
        std::vector<Vector> next;
        for (const auto& x : rd.basis)
            for (const auto& y : power) next.push_back(multiply(x, y));
        power = canonical_span(next, d, field_);
        rd.power_dims.push_back(power.size());
        if (rd.power_dims.size() > d + 1)
            throw AlgebraError("radical candidate is not nilpotent");
    }
    rd.index = rd.power_dims.size();  // rad^index = 0 entry sits at index-1
    if (!rd.basis.empty() && rd.power_dims[rd.index - 2] == 0)
        throw AlgebraError("radical index bookkeeping failed");  // defensive
    radical_ = std::move(rd);
}

const std::vector<Vector>& EndAlgebra::radical_basis() const {
    if (!radical_)
        throw FieldError("radical unavailable: prime field characteristic must exceed the "
                         "algebra dimension");
    return radical_->basis;
}

std::size_t EndAlgebra::radical_index() const {
    radical_basis();  // availability check
    return radical_->index;
}

const std::vector<std::size_t>& EndAlgebra::radical_power_dims() const {
    radical_basis();
    return radical_->power_dims;
}

bool EndAlgebra::is_local() const {
    bool local = dim() == 1 + radical_dim();
    if (local) {
        // exact decomposition: identity span + radical fills the algebra
        std::vector<Vector> span;
        Vector id(dim(), Scalar::zero(field_));
        id[0] = Scalar::one(field_);
        span.push_back(id);
        for (const auto& r : radical_basis()) span.push_back(r);
        if (canonical_span(span, dim(), field_).size() != dim())
            throw AlgebraError("local algebra is not identity plus radical");  // defensive
    }
    return local;
}

EndAlgebra end_algebra(const UnipotentModule& f) {
    if (f.dim() == 0) throw AlgebraError("end algebra of the zero module is not represented");
    return EndAlgebra(f.dim(), f.field(), intertwiner_basis(f, f));
}

bool is_indecomposable(const UnipotentModule& f) {
    if (f.dim() == 0) return false;
    return end_algebra(f).is_local();
}

ElementClass unit_or_nilpotent(const EndAlgebra& a, const Matrix& x) {
    a.coordinates(x);  // membership check
    ElementClass out;
    if (rank(x) == a.matrix_size())
        out = ElementClass::unit;
    else if (is_nilpotent(x))
        out = ElementClass::nilpotent;
    else
        out = ElementClass::neither;
    if (out == ElementClass::neither && a.radical_available() && a.is_local())
        throw AlgebraError("local algebra produced a neither-unit-nor-nilpotent element");
    return out;
}

namespace {

// Coprime split P1 * P2 = m with P1 a full root power, if any root of m lies
// in the base field and does not exhaust m.
std::optional<std::pair<Poly, Poly>> coprime_split(const Poly& m, bool* saw_nonlinear) {
    RootSplit rs = field_roots(m);
    if (poly_deg(rs.residual) >= 2) *saw_nonlinear = true;
    if (rs.roots.empty()) return std::nullopt;
    Poly p1 = poly_constant(Scalar::one(rs.lead.field()));
    for (std::size_t k = 0; k < rs.roots[0].second; ++k)
        p1 = poly_mul(p1, poly_linear(rs.roots[0].first));
    if (poly_deg(p1) == poly_deg(m)) return std::nullopt;  // single root power
    Poly p2 = poly_divmod(poly_monic(m), p1).first;
    return std::make_pair(p1, p2);
}

}  // namespace

IdempotentSearch find_idempotent(const EndAlgebra& a, std::uint64_t seed) {
    if (a.is_local()) return {std::nullopt, true, false, "algebra is local"};
    std::size_t d = a.dim(), n = a.matrix_size();
    const Field& f = a.field();
    Rng rng(seed);
    bool saw_nonlinear = false;
    std::size_t newton_cap = 1;
    for (std::size_t m = a.radical_index(); m > 1; m = (m + 1) / 2) ++newton_cap;
    for (std::size_t trial = 0; trial < 64; ++trial) {
        Matrix x(n, n, f);
        if (trial + 1 < d) {
            x = a.basis()[trial + 1];  // skip the identity
        } else {
            Vector coords(d, Scalar::zero(f));
            for (std::size_t i = 0; i < d; ++i)
                coords[i] = Scalar::from_long(rng.range(-10, 10), f);
            x = a.element(coords);
        }
        Poly m = min_poly(x);
        auto split = coprime_split(m, &saw_nonlinear);
        if (!split) continue;
        auto [p1, p2] = *split;
        auto [g, u, v] = poly_extended_gcd(p1, p2);
        if (poly_deg(g) != 0) continue;  // defensive: factors must be coprime
        // e = (v p2)(x) is 1 on the p1 part, 0 on the p2 part
        Matrix e = poly_eval_matrix(poly_mul(v, p2), x);
        for (std::size_t it = 0; it <= newton_cap && !((e * e) == e); ++it) {
            Matrix e2 = e * e;
            e = e2 * Scalar::from_long(3, f) - e2 * e * Scalar::from_long(2, f);
        }
        if (!((e * e) == e) || e.is_zero() || e.is_identity()) continue;
        a.coordinates(e);  // defensive: the idempotent stays inside the algebra
        return {e, false, false, "split minimal polynomial"};
    }
    std::string note = saw_nonlinear
                           ? "semisimple quotient not split by rational factorization within "
                             "budget: irreducible factors of degree >= 2 encountered"
                           : "no splitting element found within budget";
    return {std::nullopt, false, true, note};
}

namespace {

// Operators restricted to an invariant subspace given by basis columns.
std::vector<Matrix> restrict_ops(const UnipotentModule& f, const Matrix& basis) {
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < f.g(); ++i) {
        Matrix r(basis.cols(), basis.cols(), f.field());
        Matrix img = f.op(i) * basis;
        for (std::size_t c = 0; c < basis.cols(); ++c) {
            Vector col(f.dim(), Scalar::zero(f.field()));
            for (std::size_t k = 0; k < f.dim(); ++k) col[k] = img.at(k, c);
            auto x = solve(basis, col);
            if (!x) throw AlgebraError("subspace is not invariant");  // defensive
            for (std::size_t k = 0; k < basis.cols(); ++k) r.set(k, c, (*x)[k]);
        }
        out.push_back(std::move(r));
    }
    return out;
}

struct RecResult {
    std::vector<UnipotentModule> factors;
    Matrix witness;  // direct sum of factors (recursion order) -> F
    bool non_split = false;
    std::string note;
};

RecResult decompose_rec(const UnipotentModule& f, std::uint64_t seed) {
    EndAlgebra a = end_algebra(f);
    if (a.is_local())
        return {{f}, Matrix::identity(f.dim(), f.field()), false, ""};
    IdempotentSearch s = find_idempotent(a, seed);
    if (!s.idempotent)
        return {{f}, Matrix::identity(f.dim(), f.field()), true, s.note};
    const Matrix& e = *s.idempotent;
    Matrix u = column_space_basis(e);
    Matrix v(f.dim(), 0, f.field());
    for (const auto& kv : kernel_basis(e)) v = v.hcat(Matrix::column(kv, f.field()));
    UnipotentModule fim(f.g(), restrict_ops(f, u));
    UnipotentModule fker(f.g(), restrict_ops(f, v));
    RecResult left = decompose_rec(fim, seed);
    RecResult right = decompose_rec(fker, seed);
    std::vector<UnipotentModule> factors = left.factors;
    factors.insert(factors.end(), right.factors.begin(), right.factors.end());
    return {std::move(factors), u.hcat(v) * direct_sum(left.witness, right.witness),
            left.non_split || right.non_split,
            !left.note.empty() ? left.note : right.note};
}

}  // namespace

Decomposition decompose_module(const UnipotentModule& f, std::uint64_t seed) {
    if (f.dim() == 0) return {{}, Matrix(0, 0, f.field()), false, ""};
    RecResult rec = [&]() -> RecResult {
        if (f.g() != 1) return decompose_rec(f, seed);
        std::vector<UnipotentModule> factors;
        for (std::size_t p : partition_of(f)) factors.push_back(UnipotentModule::jordan(p, f.field()));
        return {std::move(factors), jordan_basis(f), false, ""};
    }();
    // canonical order: dimension decreasing, then operator entries increasing
    std::vector<std::size_t> order(rec.factors.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (rec.factors[x].dim() != rec.factors[y].dim())
            return rec.factors[x].dim() > rec.factors[y].dim();
        return UnipotentModule::compare(rec.factors[x], rec.factors[y]) < 0;
    });
    std::vector<std::size_t> rec_offset(rec.factors.size(), 0);
    for (std::size_t i = 0, off = 0; i < rec.factors.size(); ++i) {
        rec_offset[i] = off;
        off += rec.factors[i].dim();
    }
    Matrix perm(f.dim(), f.dim(), f.field());
    std::vector<UnipotentModule> sorted;
    for (std::size_t s = 0, off = 0; s < order.size(); ++s) {
        const UnipotentModule& fac = rec.factors[order[s]];
        for (std::size_t t = 0; t < fac.dim(); ++t)
            perm.set(rec_offset[order[s]] + t, off + t, Scalar::one(f.field()));
        off += fac.dim();
        sorted.push_back(fac);
    }
    Decomposition out{std::move(sorted), rec.witness * perm, rec.non_split, rec.note};
    // verify the witness exactly
    if (!inverse(out.witness)) throw AlgebraError("decomposition witness is singular");
    for (std::size_t i = 0; i < f.g(); ++i) {
        Matrix sum(0, 0, f.field());
        for (const auto& fac : out.factors) sum = direct_sum(sum, fac.op(i));
        if (out.witness * sum != f.op(i) * out.witness)
            throw AlgebraError("decomposition witness fails to intertwine");
    }
    for (const auto& fac : out.factors)
        if (!out.non_split && !is_indecomposable(fac))
            throw AlgebraError("decomposition emitted a decomposable factor");
    return out;
}

CyclicityCheck is_cyclic_over_end(const UnipotentModule& f, std::uint64_t seed) {
    std::size_t n = f.dim();
    if (n == 0) return {true, std::nullopt, true};
    EndAlgebra a = end_algebra(f);
    auto orbit_full = [&](const Vector& v) {
        Matrix orbit(n, a.dim(), f.field());
        for (std::size_t j = 0; j < a.dim(); ++j) {
            Vector img = a.basis()[j].apply(v);
            for (std::size_t i = 0; i < n; ++i) orbit.set(i, j, img[i]);
        }
        return rank(orbit) == n;
    };
    std::vector<Vector> candidates;
    for (std::size_t i = 0; i < n; ++i) {
        Vector e(n, Scalar::zero(f.field()));
        e[i] = Scalar::one(f.field());
        candidates.push_back(std::move(e));
    }
    Rng rng(seed);
    for (int t = 0; t < 32; ++t) {
        Vector v(n, Scalar::zero(f.field()));
        for (std::size_t i = 0; i < n; ++i)
            v[i] = Scalar::from_long(rng.range(-10, 10), f.field());
        candidates.push_back(std::move(v));
    }
    for (const auto& v : candidates)
        if (orbit_full(v)) return {true, v, a.dim() == n};
    return {false, std::nullopt, false};
}

std::string Fingerprint::str() const {
    std::ostringstream os;
    os << template_name << " [dim " << dim << ", " << (commutative ? "commutative" : "noncommutative")
       << ", radical dim " << radical_dim << ", radical index " << radical_index << "]";
    return os.str();
}

Fingerprint algebra_fingerprint(const EndAlgebra& a) {
    Fingerprint fp;
    fp.dim = a.dim();
    fp.commutative = a.commutative();
    fp.radical_dim = a.radical_dim();
    fp.radical_index = a.radical_index();
    fp.radical_power_dims = a.radical_power_dims();
    std::size_t rad2 = fp.radical_power_dims.size() >= 2 ? fp.radical_power_dims[1] : 0;
    fp.radical_generators = fp.radical_dim - rad2;
    bool local = a.is_local();
    if (local && fp.commutative && fp.radical_generators <= 1 && fp.radical_index == fp.dim) {
        fp.template_name = "TruncatedPoly(" + std::to_string(fp.dim) + ")";
    } else if (local && fp.commutative && fp.radical_dim == 2 && fp.radical_index == 2 &&
               fp.radical_generators == 2) {
        fp.template_name = "TwoVarSquareZero";
    } else if (fp.radical_dim == 0) {
        std::size_t root = 0;
        while ((root + 1) * (root + 1) <= fp.dim) ++root;
        // center: elements commuting with every basis element
        std::size_t d = a.dim();
        Matrix sys(d * d, d, a.field());
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                for (std::size_t i = 0; i < d; ++i)
                    sys.set(j * d + k, i,
                            a.structure_constant(i, j, k) - a.structure_constant(j, i, k));
        std::size_t center_dim = d - rank(sys);
        if (root * root == fp.dim && center_dim == 1)
            fp.template_name = "FullMatrix(" + std::to_string(root) + ")";
        else
            fp.template_name = "Unknown";
    } else {
        fp.template_name = "Unknown";
    }
    return fp;
}

}  // namespace homvb
