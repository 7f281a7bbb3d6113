#pragma once

#include <cstdint>

#include "homvb/linalg.hpp"
#include "homvb/rng.hpp"

namespace homvb {

class ModuleError : public std::runtime_error {
public:
    explicit ModuleError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A unipotent bundle in module form: g pairwise-commuting nilpotent
/// operators N_1..N_g on an n-dimensional space. Validated eagerly at
/// construction and immutable afterwards.
class UnipotentModule {
public:
    UnipotentModule(std::size_t g, std::vector<Matrix> operators);

    /// Single strictly upper Jordan block of size r (r >= 1), g = 1.
    static UnipotentModule jordan(std::size_t r, const Field& f);
    /// All-zero operators: the n-fold trivial module.
    static UnipotentModule trivial(std::size_t g, std::size_t n, const Field& f);
    /// Quotient by the monomial ideal generated by the given exponent
    /// vectors (each of length g). Basis = standard monomials in graded
    /// order (degree, then lexicographic with earlier variables first);
    /// operators = multiplication by each variable. The ideal must contain
    /// a pure power of every variable (finite colength).
    static UnipotentModule from_monomial_ideal(std::size_t g,
                                               const std::vector<std::vector<std::size_t>>& generator_exponents,
                                               const Field& f);

    std::size_t g() const { return g_; }
    std::size_t dim() const { return dim_; }
    const Field& field() const { return field_; }
    const Matrix& op(std::size_t i) const { return operators_.at(i); }
    const std::vector<Matrix>& ops() const { return operators_; }

    bool operator==(const UnipotentModule& other) const;
    bool operator!=(const UnipotentModule& other) const { return !(*this == other); }

    /// Canonical one-line text form; equal strings iff equal modules.
    std::string serialize() const;
    /// Order by (dim, g, entrywise operator comparison).
    static int compare(const UnipotentModule& a, const UnipotentModule& b);

private:
    std::size_t g_;
    std::size_t dim_;
    Field field_;
    std::vector<Matrix> operators_;
};

UnipotentModule direct_sum_mod(const UnipotentModule& a, const UnipotentModule& b);
/// Tensor product with Leibniz action N_i(x) I + I (x) N'_i.
UnipotentModule tensor_mod(const UnipotentModule& a, const UnipotentModule& b);
/// Dual with transposed operators.
UnipotentModule dual_mod(const UnipotentModule& a);

/// dim of the common kernel of all operators (= dim Hom(trivial_1, F)).
std::size_t global_sections_dim(const UnipotentModule& f);
/// codim of the sum of all operator images (= dim Hom(F, trivial_1)).
std::size_t cosections_dim(const UnipotentModule& f);

/// Descending chain F >= sum N_i F >= (length-2 products) F >= ... >= 0,
/// one basis matrix (columns = basis) per step, first the whole space and
/// last the zero space. Successive quotients carry zero induced operators.
std::vector<Matrix> radical_series(const UnipotentModule& f);
/// Ascending chain 0 <= soc F <= soc_2 F <= ... <= F, same encoding.
std::vector<Matrix> socle_series(const UnipotentModule& f);

/// Weakly decreasing Jordan block sizes; classifies g = 1 modules exactly.
using Partition = std::vector<std::size_t>;
Partition partition_of(const UnipotentModule& f);  // g = 1 only
std::string partition_str(const Partition& p);

/// g = 1: invertible P with N * P = P * J, J the canonical operator of
/// partition_of(f) (blocks in decreasing size, ones on the superdiagonal).
Matrix jordan_basis(const UnipotentModule& f);

/// Stacked linear system in the n_cod x n_dom entries of T (row-major)
/// whose kernel is { T : T N_i = N'_i T for all i }.
Matrix intertwiner_system(const UnipotentModule& dom, const UnipotentModule& cod);
/// Kernel of the system above, reshaped to matrices (deterministic order).
std::vector<Matrix> intertwiner_basis(const UnipotentModule& dom, const UnipotentModule& cod);

struct IsoCheck {
    enum class Verdict { yes, no, undecided } verdict;
    std::optional<Matrix> witness;  // invertible T with T N_a,i = N_b,i T
    std::string reason;
};

/// Exact for g = 1 (partition comparison); for g >= 2 a dimension precheck,
/// the Hom-dimension symmetry precheck, then a seeded search for an
/// invertible intertwiner. "no" is only ever returned on exact grounds;
/// failure to find a witness yields "undecided".
IsoCheck modules_isomorphic(const UnipotentModule& a, const UnipotentModule& b,
                            std::uint64_t seed = kDefaultSeed);

}  // namespace homvb
