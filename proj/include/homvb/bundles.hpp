#pragma once

#include "homvb/hom_algebra.hpp"

namespace homvb {

class BundleError : public std::runtime_error {
public:
    explicit BundleError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Ambient data: dimension g of the base abelian variety, the rank m of the
/// free abelian group standing in for the needed fragment of Pic^0, and the
/// scalar field shared by all fiber modules.
struct BaseContext {
    std::size_t g = 1;
    std::size_t label_rank = 0;
    Field field = Field::rationals();

    bool operator==(const BaseContext& o) const {
        return g == o.g && label_rank == o.label_rank && field == o.field;
    }
    bool operator!=(const BaseContext& o) const { return !(*this == o); }
};

/// Degree-zero line bundle written additively as an integer vector; the zero
/// vector is the structure sheaf O.
struct Label {
    std::vector<long> coords;

    bool is_zero() const;
    bool operator==(const Label& o) const { return coords == o.coords; }
    bool operator!=(const Label& o) const { return coords != o.coords; }
    bool operator<(const Label& o) const { return coords < o.coords; }
    Label operator+(const Label& o) const;
    Label operator-() const;
    /// "O" for the zero vector, otherwise "(c1,c2,...)".
    std::string str() const;
};

struct BundleSummand {
    Label label;
    UnipotentModule module;
};

/// Formal sum of label-tagged unipotent modules, normalized so labels are
/// strictly increasing (equal labels merged by direct sum, zero-dimensional
/// modules dropped). Rank 0 (no summands) is legal.
class HomogeneousBundle {
public:
    HomogeneousBundle(BaseContext ctx, std::vector<BundleSummand> summands);

    const BaseContext& context() const { return ctx_; }
    const std::vector<BundleSummand>& summands() const { return summands_; }
    std::size_t rank() const;
    /// One summand whose module has a local endomorphism algebra.
    bool indecomposable() const;

    bool operator==(const HomogeneousBundle& o) const;
    bool operator!=(const HomogeneousBundle& o) const { return !(*this == o); }

private:
    BaseContext ctx_;
    std::vector<BundleSummand> summands_;
};

/// Adds l to every summand label; the fiber modules are untouched.
HomogeneousBundle tensor_line(const HomogeneousBundle& e, const Label& l);

struct HomBlock {
    Label label;
    HomSpace space;
};

/// Label-blocked description of the bundle of homomorphisms: maps exist only
/// between summands with equal labels, one block per shared label. For an
/// endomorphism bundle the fiber algebra is assembled block-diagonally.
struct BundleHomDescription {
    std::vector<HomBlock> blocks;
    std::optional<EndAlgebra> fiber;  // set by end_bundle when rank >= 1

    std::size_t rank() const;
};

BundleHomDescription hom_bundle(const HomogeneousBundle& e, const HomogeneousBundle& ep);
BundleHomDescription end_bundle(const HomogeneousBundle& e);

/// Rank of the nilpotent part of the endomorphism bundle of an indecomposable
/// bundle: the radical dimension of the fiber algebra. Checked against
/// end rank - 1, and against >= 1 when rank >= 2; throws BundleError on
/// decomposable input.
std::size_t nhb_rank(const HomogeneousBundle& e);

/// Whether the canonical extension sequence of an indecomposable bundle
/// splits: exactly when the bundle is a line bundle. Cross-checked against
/// fiber dimension 1 and nhb_rank 0; throws BundleError on decomposable input.
bool sequence_splits(const HomogeneousBundle& e);

/// Single summand with label O and all operators zero; cross-checked against
/// the fiber criterion (End dim = rank^2 with zero radical) whenever the
/// radical is available.
bool is_trivial_bundle(const HomogeneousBundle& e);

/// Fiber End dimension 1; equivalent to rank 1 (a homogeneous line bundle).
bool is_simple(const HomogeneousBundle& e);

struct BundleDecomposition {
    std::vector<HomogeneousBundle> parts;  // single-summand bundles
    bool non_split = false;
    std::string note;
};

/// Per-label Krull-Schmidt decomposition into (label, indecomposable module)
/// line items, labels in bundle order, factors in decomposition order.
BundleDecomposition decompose_bundle(const HomogeneousBundle& e,
                                     std::uint64_t seed = kDefaultSeed);

/// Fixed symbolic record for the kernel of the endomorphism monoid: the zero
/// section, a copy of the base variety, fiber dimension 0.
struct KernelRecord {
    std::string kernel;
    std::string isomorphic_to;
    std::size_t fiber_dim = 0;
};

KernelRecord kernel_description(const HomogeneousBundle& e);

struct CheckResult {
    std::string name;
    std::string statement;
    bool pass = false;
    std::vector<std::pair<std::string, std::string>> witness;
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool all_pass() const;
};

/// Runs the structure-theorem checks applicable to the bundle. `suite` is
/// "all", "ranks" (rank and dimension bookkeeping), or "algebras" (fiber
/// algebra structure); failures are data, never exceptions.
VerifyReport verify_suite(const HomogeneousBundle& e, const std::string& suite = "all",
                          std::uint64_t seed = kDefaultSeed);

}  // namespace homvb
