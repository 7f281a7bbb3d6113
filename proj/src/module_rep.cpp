#include "homvb/module_rep.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace homvb {

namespace {

// Canonical basis (as columns) of the column space of m: nonzero rows of
// rref(m^T) turned back into columns. Deterministic.
Matrix column_space_basis(const Matrix& m) {
    RrefResult rr = rref(m.transpose());
    Matrix out(m.rows(), rr.rank, m.field());
    for (std::size_t i = 0; i < rr.rank; ++i)
        for (std::size_t j = 0; j < m.rows(); ++j) out.set(j, i, rr.reduced.at(i, j));
    return out;
}

Matrix basis_matrix(const std::vector<Vector>& vecs, std::size_t n, const Field& f) {
    Matrix out(n, vecs.size(), f);
    for (std::size_t j = 0; j < vecs.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) out.set(i, j, vecs[j][i]);
    return out;
}

}  // namespace

UnipotentModule::UnipotentModule(std::size_t g, std::vector<Matrix> operators)
    : g_(g), dim_(0), field_(Field::rationals()), operators_(std::move(operators)) {
    if (g_ < 1) throw ModuleError("g must be at least 1");
    if (operators_.size() != g_)
        throw ModuleError("expected " + std::to_string(g_) + " operators, got " +
                          std::to_string(operators_.size()));
    dim_ = operators_.front().rows();
    field_ = operators_.front().field();
    for (std::size_t i = 0; i < g_; ++i) {
        const Matrix& ni = operators_[i];
        if (!ni.is_square() || ni.rows() != dim_)
            throw ModuleError("operator " + std::to_string(i + 1) + " has inconsistent shape");
        if (ni.field() != field_)
            throw ModuleError("operator " + std::to_string(i + 1) + " uses a different field");
        if (!is_nilpotent(ni))
            throw ModuleError("operator " + std::to_string(i + 1) + " is not nilpotent");
    }
    for (std::size_t i = 0; i < g_; ++i)
        for (std::size_t j = i + 1; j < g_; ++j)
            if (operators_[i] * operators_[j] != operators_[j] * operators_[i])
                throw ModuleError("operators " + std::to_string(i + 1) + " and " +
                                  std::to_string(j + 1) + " do not commute");
}

UnipotentModule UnipotentModule::jordan(std::size_t r, const Field& f) {
    if (r < 1) throw ModuleError("jordan block size must be at least 1");
    Matrix n(r, r, f);
    for (std::size_t i = 0; i + 1 < r; ++i) n.set(i, i + 1, Scalar::one(f));
    return UnipotentModule(1, {std::move(n)});
}

UnipotentModule UnipotentModule::trivial(std::size_t g, std::size_t n, const Field& f) {
    return UnipotentModule(g, std::vector<Matrix>(g, Matrix(n, n, f)));
}

UnipotentModule UnipotentModule::from_monomial_ideal(
    std::size_t g, const std::vector<std::vector<std::size_t>>& generator_exponents, const Field& f) {
    if (g < 1) throw ModuleError("g must be at least 1");
    for (const auto& e : generator_exponents)
        if (e.size() != g) throw ModuleError("generator exponent vector length differs from g");
    // Finite colength: a pure power of every variable must be present.
    std::vector<std::size_t> box(g, 0);
    for (std::size_t v = 0; v < g; ++v) {
        for (const auto& e : generator_exponents) {
            bool pure = e[v] >= 1;
            for (std::size_t w = 0; w < g && pure; ++w)
                if (w != v && e[w] != 0) pure = false;
            if (pure && (box[v] == 0 || e[v] < box[v])) box[v] = e[v];
        }
        if (box[v] == 0)
            throw ModuleError("ideal has infinite colength: no pure power of variable " +
                              std::to_string(v + 1));
    }
    auto in_ideal = [&](const std::vector<std::size_t>& m) {
        for (const auto& e : generator_exponents) {
            bool divides = true;
            for (std::size_t v = 0; v < g && divides; ++v)
                if (m[v] < e[v]) divides = false;
            if (divides) return true;
        }
        return false;
    };
    // Standard monomials live in the box below the pure powers.
    std::vector<std::vector<std::size_t>> standard;
    std::vector<std::size_t> mono(g, 0);
    while (true) {
        if (!in_ideal(mono)) standard.push_back(mono);
        std::size_t v = 0;
        while (v < g) {
            if (++mono[v] < box[v]) break;
            mono[v] = 0;
            ++v;
        }
        if (v == g) break;
    }
    // Graded order: total degree, then lexicographic with variable 1 heaviest.
    std::sort(standard.begin(), standard.end(),
              [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
                  std::size_t da = 0, db = 0;
                  for (std::size_t x : a) da += x;
                  for (std::size_t x : b) db += x;
                  if (da != db) return da < db;
                  return a > b;  // higher power of an earlier variable first
              });
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t i = 0; i < standard.size(); ++i) index[standard[i]] = i;
    std::size_t n = standard.size();
    std::vector<Matrix> ops;
    for (std::size_t v = 0; v < g; ++v) {
        Matrix nv(n, n, f);
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::size_t> up = standard[j];
            ++up[v];
            auto it = index.find(up);
            if (it != index.end()) nv.set(it->second, j, Scalar::one(f));
        }
        ops.push_back(std::move(nv));
    }
    return UnipotentModule(g, std::move(ops));
}

bool UnipotentModule::operator==(const UnipotentModule& other) const {
    return g_ == other.g_ && operators_ == other.operators_;
}

std::string UnipotentModule::serialize() const {
    std::ostringstream os;
    os << field_.describe() << ";g=" << g_ << ";n=" << dim_;
    for (std::size_t k = 0; k < g_; ++k) {
        os << ";N" << (k + 1) << "=[";
        for (std::size_t i = 0; i < dim_; ++i) {
            os << (i ? "," : "") << "[";
            for (std::size_t j = 0; j < dim_; ++j)
                os << (j ? "," : "") << operators_[k].at(i, j).str_plain();
            os << "]";
        }
        os << "]";
    }
    return os.str();
}

int UnipotentModule::compare(const UnipotentModule& a, const UnipotentModule& b) {
    if (a.dim_ != b.dim_) return a.dim_ < b.dim_ ? -1 : 1;
    if (a.g_ != b.g_) return a.g_ < b.g_ ? -1 : 1;
    for (std::size_t k = 0; k < a.g_; ++k) {
        int c = Matrix::compare(a.operators_[k], b.operators_[k]);
        if (c != 0) return c;
    }
    return 0;
}

UnipotentModule direct_sum_mod(const UnipotentModule& a, const UnipotentModule& b) {
    if (a.g() != b.g()) throw ModuleError("direct sum needs equal g");
    std::vector<Matrix> ops;
    for (std::size_t i = 0; i < a.g(); ++i) ops.push_back(direct_sum(a.op(i), b.op(i)));
    return UnipotentModule(a.g(), std::move(ops));
}

UnipotentModule tensor_mod(const UnipotentModule& a, const UnipotentModule& b) {
    if (a.g() != b.g()) throw ModuleError("tensor needs equal g");
    std::vector<Matrix> ops;
    Matrix ia = Matrix::identity(a.dim(), a.field());
    Matrix ib = Matrix::identity(b.dim(), b.field());
    for (std::size_t i = 0; i < a.g(); ++i)
        ops.push_back(kron(a.op(i), ib) + kron(ia, b.op(i)));
    return UnipotentModule(a.g(), std::move(ops));
}

UnipotentModule dual_mod(const UnipotentModule& a) {
    std::vector<Matrix> ops;
    for (std::size_t i = 0; i < a.g(); ++i) ops.push_back(a.op(i).transpose());
    return UnipotentModule(a.g(), std::move(ops));
}

std::size_t global_sections_dim(const UnipotentModule& f) {
    if (f.dim() == 0) return 0;
    Matrix stacked = f.op(0);
    for (std::size_t i = 1; i < f.g(); ++i) stacked = stacked.vcat(f.op(i));
    return f.dim() - rank(stacked);
}

std::size_t cosections_dim(const UnipotentModule& f) {
    if (f.dim() == 0) return 0;
    Matrix images = f.op(0);
    for (std::size_t i = 1; i < f.g(); ++i) images = images.hcat(f.op(i));
    return f.dim() - rank(images);
}

std::vector<Matrix> radical_series(const UnipotentModule& f) {
    std::vector<Matrix> chain;
    Matrix cur = Matrix::identity(f.dim(), f.field());
    chain.push_back(cur);
    while (cur.cols() > 0) {
        Matrix pushed(f.dim(), 0, f.field());
        for (std::size_t i = 0; i < f.g(); ++i) pushed = pushed.hcat(f.op(i) * cur);
        cur = column_space_basis(pushed);
        chain.push_back(cur);
    }
    return chain;
}

std::vector<Matrix> socle_series(const UnipotentModule& f) {
    std::vector<Matrix> chain;
    chain.push_back(Matrix(f.dim(), 0, f.field()));
    Matrix q = Matrix::identity(f.dim(), f.field());  // kernel of q = current term
    while (chain.back().cols() < f.dim()) {
        Matrix stacked(0, f.dim(), f.field());
        for (std::size_t i = 0; i < f.g(); ++i) stacked = stacked.vcat(q * f.op(i));
        Matrix term = basis_matrix(kernel_basis(stacked), f.dim(), f.field());
        chain.push_back(term);
        // next q: rows spanning the annihilator of the new term, so that
        // ker q = span(term) for the following step
        auto dual_rows = kernel_basis(term.transpose());
        Matrix nq(dual_rows.size(), f.dim(), f.field());
        for (std::size_t r = 0; r < dual_rows.size(); ++r)
            for (std::size_t c = 0; c < f.dim(); ++c) nq.set(r, c, dual_rows[r][c]);
        q = std::move(nq);
    }
    return chain;
}

Partition partition_of(const UnipotentModule& f) {
    if (f.g() != 1) throw ModuleError("partition classification requires g = 1");
    std::size_t n = f.dim();
    Partition p;
    if (n == 0) return p;
    const Matrix& nmat = f.op(0);
    std::vector<std::size_t> ranks{n};  // rank of N^0
    Matrix pw = nmat;
    while (true) {
        std::size_t r = rank(pw);
        ranks.push_back(r);
        if (r == 0) break;
        pw = pw * nmat;
    }
    std::vector<std::size_t> blocks_ge;  // blocks of size >= k, k = 1..
    for (std::size_t k = 1; k < ranks.size(); ++k) blocks_ge.push_back(ranks[k - 1] - ranks[k]);
    for (std::size_t j = 1; j <= blocks_ge.front(); ++j) {
        std::size_t parts = 0;
        for (std::size_t c : blocks_ge)
            if (c >= j) ++parts;
        p.push_back(parts);
    }
    // p currently counts, for each j, the number of k with c_k >= j; this is
    // the conjugate of (c_k), i.e. the block sizes in decreasing order.
    return p;
}

std::string partition_str(const Partition& p) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << ")";
    return os.str();
}

Matrix jordan_basis(const UnipotentModule& f) {
    if (f.g() != 1) throw ModuleError("jordan basis requires g = 1");
    std::size_t n = f.dim();
    const Field& fld = f.field();
    const Matrix& nmat = f.op(0);
    if (n == 0) return Matrix(0, 0, fld);
    std::size_t idx = nilpotency_index(nmat);
    // kernel filtration
    std::vector<Matrix> kmat;  // ker N^j for j = 0..idx
    kmat.push_back(Matrix(n, 0, fld));
    for (std::size_t j = 1; j <= idx; ++j)
        kmat.push_back(basis_matrix(kernel_basis(nmat.pow(j)), n, fld));
    struct Chain {
        std::vector<Vector> vecs;  // bottom first
    };
    std::vector<Chain> chains;
    std::vector<Vector> carried;  // level-j vectors of chains longer than j
    for (std::size_t j = idx; j >= 1; --j) {
        Matrix span = kmat[j - 1];
        for (const auto& v : carried) span = span.hcat(Matrix::column(v, fld));
        std::size_t base_rank = rank(span);
        std::vector<Vector> new_heads;
        for (std::size_t c = 0; c < kmat[j].cols(); ++c) {
            Vector cand(n, Scalar::zero(fld));
            for (std::size_t i = 0; i < n; ++i) cand[i] = kmat[j].at(i, c);
            Matrix ext = span.hcat(Matrix::column(cand, fld));
            if (rank(ext) > base_rank) {
                span = std::move(ext);
                ++base_rank;
                new_heads.push_back(std::move(cand));
            }
        }
        for (const auto& h : new_heads) {
            Chain ch;
            Vector v = h;
            ch.vecs.resize(j, Vector(n, Scalar::zero(fld)));
            ch.vecs[j - 1] = v;
            for (std::size_t t = j - 1; t >= 1; --t) {
                v = nmat.apply(v);
                ch.vecs[t - 1] = v;
            }
            chains.push_back(std::move(ch));
        }
        std::vector<Vector> next_carried;
        for (const auto& v : carried) next_carried.push_back(nmat.apply(v));
        for (const auto& h : new_heads) next_carried.push_back(nmat.apply(h));
        carried = std::move(next_carried);
    }
    Matrix p(n, n, fld);
    std::size_t col = 0;
    for (const auto& ch : chains)
        for (const auto& v : ch.vecs) {
            for (std::size_t i = 0; i < n; ++i) p.set(i, col, v[i]);
            ++col;
        }
    if (col != n) throw ModuleError("jordan basis assembly failed");  // defensive
    // canonical operator for the full partition
    Partition part = partition_of(f);
    Matrix j = UnipotentModule::jordan(part.front(), fld).op(0);
    for (std::size_t b = 1; b < part.size(); ++b)
        j = direct_sum(j, UnipotentModule::jordan(part[b], fld).op(0));
    if (!(nmat * p == p * j) || !inverse(p))
        throw ModuleError("jordan basis verification failed");  // defensive
    return p;
}

Matrix intertwiner_system(const UnipotentModule& dom, const UnipotentModule& cod) {
    if (dom.g() != cod.g()) throw ModuleError("intertwiner system needs equal g");
    if (dom.field() != cod.field()) throw ModuleError("intertwiner system needs one field");
    const Field& f = dom.field();
    std::size_t n = dom.dim(), m = cod.dim();
    Matrix im = Matrix::identity(m, f);
    Matrix in = Matrix::identity(n, f);
    Matrix sys(0, m * n, f);
    for (std::size_t i = 0; i < dom.g(); ++i) {
        // row-major vec: vec(T N) = (I (x) N^T) vec T ; vec(N' T) = (N' (x) I) vec T
        sys = sys.vcat(kron(im, dom.op(i).transpose()) - kron(cod.op(i), in));
    }
    return sys;
}

std::vector<Matrix> intertwiner_basis(const UnipotentModule& dom, const UnipotentModule& cod) {
    std::vector<Matrix> out;
    for (const auto& v : kernel_basis(intertwiner_system(dom, cod)))
        out.push_back(Matrix::from_vector(v, cod.dim(), dom.dim(), dom.field()));
    return out;
}

IsoCheck modules_isomorphic(const UnipotentModule& a, const UnipotentModule& b, std::uint64_t seed) {
    if (a.g() != b.g()) throw ModuleError("isomorphism test needs equal g");
    if (a.field() != b.field()) throw ModuleError("isomorphism test needs one field");
    const Field& f = a.field();
    std::size_t n = a.dim();
    if (n != b.dim()) return {IsoCheck::Verdict::no, std::nullopt, "dimension mismatch"};
    if (n == 0) return {IsoCheck::Verdict::yes, Matrix(0, 0, f), "both zero"};
    if (a == b)
        return {IsoCheck::Verdict::yes, Matrix::identity(n, f), "equal modules"};
    if (a.g() == 1) {
        if (partition_of(a) != partition_of(b))
            return {IsoCheck::Verdict::no, std::nullopt, "partitions differ"};
        Matrix pa = jordan_basis(a), pb = jordan_basis(b);
        Matrix t = pb * *inverse(pa);
        return {IsoCheck::Verdict::yes, t, "equal partitions"};
    }
    auto fwd = intertwiner_basis(a, b);
    auto bwd = intertwiner_basis(b, a);
    if (fwd.size() != bwd.size())
        return {IsoCheck::Verdict::no, std::nullopt, "hom dimensions asymmetric"};
    if (fwd.empty())
        return {IsoCheck::Verdict::no, std::nullopt, "no nonzero homomorphisms"};
    for (const auto& t : fwd)
        if (rank(t) == n) return {IsoCheck::Verdict::yes, t, "basis intertwiner invertible"};
    Rng rng(seed);
    for (int trial = 0; trial < 32; ++trial) {
        Matrix t(n, n, f);
        for (const auto& bmat : fwd)
            t = t + bmat * Scalar::from_long(rng.range(-10, 10), f);
        if (rank(t) == n) return {IsoCheck::Verdict::yes, t, "random intertwiner invertible"};
    }
    return {IsoCheck::Verdict::undecided, std::nullopt,
            "no invertible intertwiner found in 32 trials"};
}

}  // namespace homvb
