#pragma once

#include "homvb/hom_algebra.hpp"

namespace homvb {

/// Version tag for the sampling families; printed in classify reports so
/// atlases stay reproducible across releases.
inline constexpr const char* kSamplerVersion = "hvb-sampler-1";

struct CatalogEntry {
    std::size_t g = 1;
    std::size_t rank = 0;
    std::string descriptor;  // partition for enumerated entries, recipe for samples
    Fingerprint fingerprint;
    bool indecomposable = false;
    std::uint64_t seed = 0;  // 0 for enumerated entries
};

/// Partitions of n in reverse-lexicographic order: (n) first, (1,...,1) last.
std::vector<Partition> partitions_of(std::size_t n);

/// One entry per partition of every n <= max_rank, n ascending and partitions
/// in reverse-lexicographic order within each n.
std::vector<CatalogEntry> enumerate_g1(std::size_t max_rank,
                                       const Field& f = Field::rationals());

/// Deterministic module generator. Families: (0) quotient by a random
/// monomial staircase — always cyclic, hence indecomposable; (1) random
/// polynomials without constant term of one random Jordan-partition
/// nilpotent; (2) a unitriangular conjugate of either. Same seed, same
/// module.
UnipotentModule random_module(std::size_t g, std::size_t dim, std::uint64_t seed,
                              const Field& f = Field::rationals());

struct ClassifyCell {
    std::size_t g = 1;
    std::size_t rank = 0;
    std::size_t samples = 0;  // indecomposable modules examined
    std::vector<std::pair<std::string, std::size_t>> template_counts;  // name -> count, sorted
    std::vector<std::pair<std::string, std::string>> witnesses;  // template -> serialized module
};

struct ClassifyReport {
    std::size_t g_max = 1;
    std::size_t samples_per_cell = 0;
    std::uint64_t seed = 0;
    std::string sampler_version;
    std::vector<CatalogEntry> entries;  // every module examined, in report order
    std::vector<ClassifyCell> cells;
    std::vector<std::string> violations;  // fingerprints outside the small-rank lists
    std::string rank3_dim2;  // witness search result for a rank-3 module with End of dim 2

    bool pass() const { return violations.empty(); }
};

/// Rank-2 and rank-3 classification: exhaustive for g = 1, seeded
/// indecomposable samples per cell for 2 <= g <= g_max (each rank-3 cell
/// additionally includes the canonical two-variable square-zero module so its
/// witness is deterministic). Rank-2 fingerprints must all be
/// TruncatedPoly(2); rank-3 fingerprints must lie in {TruncatedPoly(2),
/// TruncatedPoly(3), TwoVarSquareZero}; anything else lands in `violations`.
ClassifyReport classify_small_rank(std::size_t g_max, std::size_t samples_per_cell,
                                   std::uint64_t seed, const Field& f = Field::rationals());

}  // namespace homvb
