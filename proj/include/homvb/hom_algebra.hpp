#pragma once

#include "homvb/module_rep.hpp"
#include "homvb/poly.hpp"

namespace homvb {

class AlgebraError : public std::runtime_error {
public:
    explicit AlgebraError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Basis of { T : T N_i = N'_i T for all i }, the maps domain -> codomain.
struct HomSpace {
    UnipotentModule domain;
    UnipotentModule codomain;
    std::vector<Matrix> basis;  // each codomain.dim() x domain.dim()

    std::size_t dim() const { return basis.size(); }
};

HomSpace hom_space(const UnipotentModule& f, const UnipotentModule& fp);

/// Unital subalgebra of n x n matrices with an explicit basis (identity
/// first), exact structure constants, and — whenever the characteristic
/// permits — its Jacobson radical. Immutable once built.
///
/// The radical comes from the trace form of the left-regular representation,
/// which characterizes it in characteristic 0 and for prime fields with
/// p > dim; for smaller p the radical accessors throw.
class EndAlgebra {
public:
    /// `span` must be a linearly independent, multiplicatively closed family
    /// whose span contains the identity.
    EndAlgebra(std::size_t n, const Field& f, std::vector<Matrix> span);

    std::size_t dim() const { return basis_.size(); }
    std::size_t matrix_size() const { return n_; }
    const Field& field() const { return field_; }
    /// basis()[0] is the identity matrix.
    const std::vector<Matrix>& basis() const { return basis_; }
    /// c[i][j][k] with basis[i] * basis[j] = sum_k c[i][j][k] basis[k].
    const Scalar& structure_constant(std::size_t i, std::size_t j, std::size_t k) const {
        return sc_[(i * basis_.size() + j) * basis_.size() + k];
    }
    bool commutative() const { return commutative_; }

    /// Coordinates of x in the basis; throws AlgebraError when x is outside.
    Vector coordinates(const Matrix& x) const;
    Matrix element(const Vector& coords) const;
    /// Product in coordinates via the structure constants.
    Vector multiply(const Vector& x, const Vector& y) const;
    /// dim x dim matrix of left multiplication by the given element.
    Matrix left_regular(const Vector& coords) const;

    bool radical_available() const { return radical_.has_value(); }
    /// Coordinate basis of the Jacobson radical (canonical rref rows).
    const std::vector<Vector>& radical_basis() const;
    std::size_t radical_dim() const { return radical_basis().size(); }
    /// Least m with radical^m = 0 (1 when the radical is zero).
    std::size_t radical_index() const;
    /// dims of radical^1, radical^2, ..., radical^index (last entry 0).
    const std::vector<std::size_t>& radical_power_dims() const;
    /// dim == 1 + radical_dim; equivalent to indecomposability of the module
    /// when this is an endomorphism algebra.
    bool is_local() const;

private:
    struct RadicalData {
        std::vector<Vector> basis;
        std::size_t index;
        std::vector<std::size_t> power_dims;
    };
    void compute_structure_constants();
    void verify_associativity() const;
    void compute_radical();

    std::size_t n_;
    Field field_;
    std::vector<Matrix> basis_;
    std::vector<Scalar> sc_;
    bool commutative_ = false;
    std::optional<RadicalData> radical_;
};

/// End algebra of a module: the intertwiner space as an algebra.
EndAlgebra end_algebra(const UnipotentModule& f);

/// Atiyah criterion: the module is indecomposable iff its End algebra is
/// local. Uses radical dimensions only, which are stable under field
/// extension.
bool is_indecomposable(const UnipotentModule& f);

enum class ElementClass { unit, nilpotent, neither };
/// Units are exactly the invertible matrices (the inverse is a polynomial in
/// the element, hence stays in the algebra). In a local algebra the result
/// is never `neither` (asserted).
ElementClass unit_or_nilpotent(const EndAlgebra& a, const Matrix& x);

struct IdempotentSearch {
    std::optional<Matrix> idempotent;  // e with e^2 = e, e not in {0, 1}
    bool local = false;                // no nontrivial idempotent exists
    bool non_split = false;            // not split by rational factorization within budget
    std::string note;
};

/// Searches basis elements, then seeded random elements (64 total): computes
/// the minimal polynomial, splits off roots lying in the base field into a
/// pair of coprime factors, forms the spectral idempotent by Bezout, and
/// polishes with the Newton step e <- 3e^2 - 2e^3 until exactly idempotent.
IdempotentSearch find_idempotent(const EndAlgebra& a, std::uint64_t seed = kDefaultSeed);

struct Decomposition {
    std::vector<UnipotentModule> factors;  // indecomposable, dim decreasing then lexicographic
    Matrix witness;                        // invertible T with T N_sum,i = N_F,i T
    bool non_split = false;                // some factor resisted splitting over the base field
    std::string note;
};

/// Krull-Schmidt decomposition: exact via partitions for g = 1, recursive
/// idempotent splitting for g >= 2. The witness is assembled and verified.
Decomposition decompose_module(const UnipotentModule& f, std::uint64_t seed = kDefaultSeed);

struct CyclicityCheck {
    bool cyclic;                      // some v with End(F) v = whole space
    std::optional<Vector> generator;
    bool matches_fiber_model;         // cyclic and dim End(F) = dim F
};

/// Searched over standard basis vectors, then 32 seeded random vectors.
CyclicityCheck is_cyclic_over_end(const UnipotentModule& f, std::uint64_t seed = kDefaultSeed);

struct Fingerprint {
    std::size_t dim = 0;
    bool commutative = false;
    std::size_t radical_dim = 0;
    std::size_t radical_index = 0;
    std::vector<std::size_t> radical_power_dims;
    std::size_t radical_generators = 0;  // dim radical / radical^2
    std::string template_name;           // TruncatedPoly(r) | TwoVarSquareZero | FullMatrix(n) | Unknown

    std::string str() const;
};

/// Classifies against the small-rank templates:
///   TruncatedPoly(r): local, commutative, radical generated by one element,
///                     dim = radical index = r;
///   TwoVarSquareZero: local, commutative, radical of dim 2 with square zero
///                     and two generators;
///   FullMatrix(n):    radical 0, dim n*n, one-dimensional center.
Fingerprint algebra_fingerprint(const EndAlgebra& a);

}  // namespace homvb
