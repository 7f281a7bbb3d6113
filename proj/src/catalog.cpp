#include "homvb/catalog.hpp"

#include <algorithm>
#include <map>

namespace homvb {

namespace {

void partitions_rec(std::size_t n, std::size_t max_part, Partition& cur,
                    std::vector<Partition>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (std::size_t p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(n - p, p, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Partition> partitions_of(std::size_t n) {
    std::vector<Partition> out;
    Partition cur;
    partitions_rec(n, n, cur, out);
    return out;
}

std::vector<CatalogEntry> enumerate_g1(std::size_t max_rank, const Field& f) {
    if (max_rank < 1) throw ModuleError("enumeration needs max_rank >= 1");
    std::vector<CatalogEntry> out;
    for (std::size_t n = 1; n <= max_rank; ++n)
        for (const Partition& parts : partitions_of(n)) {
            UnipotentModule m = UnipotentModule::jordan(parts[0], f);
            for (std::size_t i = 1; i < parts.size(); ++i)
                m = direct_sum_mod(m, UnipotentModule::jordan(parts[i], f));
            out.push_back({1, n, partition_str(parts), algebra_fingerprint(end_algebra(m)),
                           parts.size() == 1, 0});
        }
    return out;
}

namespace {

using Exponent = std::vector<std::size_t>;

// Random staircase (order ideal) of the given size: start at 1, repeatedly
// add a monomial all of whose divisors are present.
std::vector<Exponent> random_staircase(Rng& rng, std::size_t g, std::size_t dim) {
    std::vector<Exponent> stairs{Exponent(g, 0)};
    while (stairs.size() < dim) {
        std::vector<Exponent> candidates;
        for (const Exponent& m : stairs)
            for (std::size_t i = 0; i < g; ++i) {
                Exponent up = m;
                ++up[i];
                if (std::find(stairs.begin(), stairs.end(), up) != stairs.end()) continue;
                bool addable = true;
                for (std::size_t j = 0; j < g && addable; ++j) {
                    if (up[j] == 0) continue;
                    Exponent down = up;
                    --down[j];
                    addable = std::find(stairs.begin(), stairs.end(), down) != stairs.end();
                }
                if (addable && std::find(candidates.begin(), candidates.end(), up) == candidates.end())
                    candidates.push_back(up);
            }
        std::sort(candidates.begin(), candidates.end());
        stairs.push_back(candidates[rng.index(candidates.size())]);
    }
    // same basis order as the monomial-ideal constructor: total degree
    // ascending, then exponent vectors descending
    std::sort(stairs.begin(), stairs.end(), [](const Exponent& a, const Exponent& b) {
        std::size_t da = 0, db = 0;
        for (std::size_t x : a) da += x;
        for (std::size_t x : b) db += x;
        if (da != db) return da < db;
        return a > b;
    });
    return stairs;
}

UnipotentModule staircase_module(Rng& rng, std::size_t g, std::size_t dim, const Field& f) {
    std::vector<Exponent> basis = random_staircase(rng, g, dim);
    std::vector<Matrix> ops;
    for (std::size_t i = 0; i < g; ++i) {
        Matrix n(dim, dim, f);
        for (std::size_t c = 0; c < dim; ++c) {
            Exponent up = basis[c];
            ++up[i];
            auto it = std::find(basis.begin(), basis.end(), up);
            if (it != basis.end())
                n.set(static_cast<std::size_t>(it - basis.begin()), c, Scalar::one(f));
        }
        ops.push_back(std::move(n));
    }
    return UnipotentModule(g, std::move(ops));
}

UnipotentModule poly_family_module(Rng& rng, std::size_t g, std::size_t dim, const Field& f) {
    // random partition: draw parts until the dimension is filled
    Partition parts;
    std::size_t left = dim;
    while (left > 0) {
        std::size_t p = 1 + rng.index(left);
        parts.push_back(p);
        left -= p;
    }
    std::sort(parts.rbegin(), parts.rend());
    UnipotentModule base = UnipotentModule::jordan(parts[0], f);
    for (std::size_t i = 1; i < parts.size(); ++i)
        base = direct_sum_mod(base, UnipotentModule::jordan(parts[i], f));
    const Matrix& j = base.op(0);
    std::vector<Matrix> ops;
    for (std::size_t i = 0; i < g; ++i) {
        Matrix n(dim, dim, f);
        Matrix p = j;
        for (std::size_t k = 1; k < dim; ++k) {
            long c = rng.range(-3, 3);
            if (c != 0) n = n + p * Scalar::from_long(c, f);
            p = p * j;
        }
        ops.push_back(std::move(n));
    }
    return UnipotentModule(g, std::move(ops));
}

UnipotentModule conjugate_by_unitriangular(Rng& rng, const UnipotentModule& m) {
    std::size_t n = m.dim();
    const Field& f = m.field();
    Matrix lo = Matrix::identity(n, f), up = Matrix::identity(n, f);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            long v = rng.range(-3, 3);
            if (i > j) lo.set(i, j, Scalar::from_long(v, f));
            if (i < j) up.set(i, j, Scalar::from_long(v, f));
        }
    Matrix p = lo * up;
    Matrix pi = *inverse(p);
    std::vector<Matrix> ops;
    for (std::size_t i = 0; i < m.g(); ++i) ops.push_back(pi * m.op(i) * p);
    return UnipotentModule(m.g(), std::move(ops));
}

}  // namespace

UnipotentModule random_module(std::size_t g, std::size_t dim, std::uint64_t seed, const Field& f) {
    if (g < 1 || dim < 1) throw ModuleError("random modules need g >= 1 and dim >= 1");
    Rng rng(seed);
    switch (rng.index(3)) {
        case 0:
            return staircase_module(rng, g, dim, f);
        case 1:
            return poly_family_module(rng, g, dim, f);
        default: {
            UnipotentModule base = rng.index(2) == 0 ? staircase_module(rng, g, dim, f)
                                                     : poly_family_module(rng, g, dim, f);
            return conjugate_by_unitriangular(rng, base);
        }
    }
}

namespace {

// canonical two-variable square-zero witness, padded by linear generators in
// the remaining variables: basis {1, x1, x2}
UnipotentModule canonical_xy_square(std::size_t g, const Field& f) {
    std::vector<std::vector<std::size_t>> gens;
    for (auto [a, b] : {std::pair<std::size_t, std::size_t>{2, 0}, {1, 1}, {0, 2}}) {
        std::vector<std::size_t> e(g, 0);
        e[0] = a;
        e[1] = b;
        gens.push_back(std::move(e));
    }
    for (std::size_t i = 2; i < g; ++i) {
        std::vector<std::size_t> e(g, 0);
        e[i] = 1;
        gens.push_back(std::move(e));
    }
    return UnipotentModule::from_monomial_ideal(g, gens, f);
}

std::uint64_t cell_seed(std::uint64_t seed, std::size_t g, std::size_t rank,
                        std::size_t attempt) {
    return seed * 1000003ULL + static_cast<std::uint64_t>(g) * 100003ULL +
           static_cast<std::uint64_t>(rank) * 1009ULL + static_cast<std::uint64_t>(attempt);
}

}  // namespace

ClassifyReport classify_small_rank(std::size_t g_max, std::size_t samples_per_cell,
                                   std::uint64_t seed, const Field& f) {
    if (g_max < 1 || samples_per_cell < 1)
        throw ModuleError("classification needs positive parameters");
    ClassifyReport report;
    report.g_max = g_max;
    report.samples_per_cell = samples_per_cell;
    report.seed = seed;
    report.sampler_version = kSamplerVersion;

    std::size_t rank3_examined = 0;
    std::string rank3_dim2_witness;

    auto expected = [](std::size_t rank, const std::string& tmpl) {
        if (rank == 2) return tmpl == "TruncatedPoly(2)";
        return tmpl == "TruncatedPoly(2)" || tmpl == "TruncatedPoly(3)" ||
               tmpl == "TwoVarSquareZero";
    };

    for (std::size_t g = 1; g <= g_max; ++g)
        for (std::size_t rank = 2; rank <= 3; ++rank) {
            ClassifyCell cell;
            cell.g = g;
            cell.rank = rank;
            std::map<std::string, std::size_t> counts;
            std::map<std::string, std::string> witnesses;
            auto take = [&](const UnipotentModule& m, const std::string& descriptor,
                            std::uint64_t s) {
                Fingerprint fp = algebra_fingerprint(end_algebra(m));
                report.entries.push_back({g, rank, descriptor, fp, true, s});
                ++cell.samples;
                ++counts[fp.template_name];
                witnesses.emplace(fp.template_name, m.serialize());
                if (!expected(rank, fp.template_name))
                    report.violations.push_back("g=" + std::to_string(g) +
                                                " rank=" + std::to_string(rank) + " " + descriptor +
                                                " -> " + fp.template_name);
                if (rank == 3) {
                    ++rank3_examined;
                    if (fp.dim == 2 && rank3_dim2_witness.empty())
                        rank3_dim2_witness = m.serialize();
                }
            };

            if (g == 1) {
                // exhaustive: the only indecomposable partition of n is (n)
                for (const Partition& parts : partitions_of(rank))
                    if (parts.size() == 1)
                        take(UnipotentModule::jordan(rank, f), partition_str(parts), 0);
            } else {
                if (rank == 3) take(canonical_xy_square(g, f), "monomial-square-zero", 0);
                std::size_t attempt = 0;
                while (cell.samples < samples_per_cell && attempt < 60 * samples_per_cell) {
                    std::uint64_t s = cell_seed(seed, g, rank, attempt++);
                    UnipotentModule m = random_module(g, rank, s, f);
                    if (!is_indecomposable(m)) continue;
                    take(m, "sample(seed=" + std::to_string(s) + ")", s);
                }
                if (cell.samples < samples_per_cell)
                    report.violations.push_back(
                        "g=" + std::to_string(g) + " rank=" + std::to_string(rank) + " only " +
                        std::to_string(cell.samples) + " of " + std::to_string(samples_per_cell) +
                        " indecomposable samples found");
            }
            for (const auto& [name, count] : counts) cell.template_counts.push_back({name, count});
            for (const auto& [name, w] : witnesses) cell.witnesses.push_back({name, w});
            report.cells.push_back(std::move(cell));
        }

    report.rank3_dim2 =
        rank3_dim2_witness.empty()
            ? "not found in " + std::to_string(rank3_examined) + " rank-3 modules"
            : "witness found: " + rank3_dim2_witness;
    return report;
}

}  // namespace homvb
