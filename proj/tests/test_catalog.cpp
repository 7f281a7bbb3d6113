#include "doctest.h"
#include "homvb/catalog.hpp"

using namespace homvb;

namespace {
const Field Q = Field::rationals();
}

TEST_CASE("partitions come out in reverse-lexicographic order") {
    std::vector<Partition> p4 = partitions_of(4);
    std::vector<Partition> want = {{4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}};
    CHECK(p4 == want);
    CHECK(partitions_of(1) == std::vector<Partition>{{1}});
    CHECK(partitions_of(6).size() == 11);
}

TEST_CASE("g=1 enumeration covers every partition with exact fingerprints") {
    std::vector<CatalogEntry> small = enumerate_g1(2);
    REQUIRE(small.size() == 3);
    CHECK(small[0].descriptor == "(1)");
    CHECK(small[0].fingerprint.template_name == "TruncatedPoly(1)");
    CHECK(small[0].indecomposable);
    CHECK(small[1].descriptor == "(2)");
    CHECK(small[1].fingerprint.template_name == "TruncatedPoly(2)");
    CHECK(small[2].descriptor == "(1,1)");
    CHECK(small[2].fingerprint.template_name == "FullMatrix(2)");
    CHECK(!small[2].indecomposable);

    std::vector<CatalogEntry> four = enumerate_g1(4);
    CHECK(four.size() == 1 + 2 + 3 + 5);
    // the n = 4 block sits at the tail, in reverse-lexicographic order
    CHECK(four[6].descriptor == "(4)");
    CHECK(four[7].descriptor == "(3,1)");
    CHECK(four[8].descriptor == "(2,2)");
    CHECK(four[9].descriptor == "(2,1,1)");
    CHECK(four[10].descriptor == "(1,1,1,1)");
    for (const CatalogEntry& e : four)
        CHECK(e.indecomposable == (e.fingerprint.template_name ==
                                   "TruncatedPoly(" + std::to_string(e.rank) + ")"));
}

TEST_CASE("random modules are valid and reproducible") {
    for (std::uint64_t s = 1; s <= 40; ++s) {
        UnipotentModule m = random_module(2, 4, s);
        CHECK(m.g() == 2);
        CHECK(m.dim() == 4);  // construction validates commutation and nilpotency
        CHECK(random_module(2, 4, s).serialize() == m.serialize());
    }
    UnipotentModule g1 = random_module(1, 3, 99);
    CHECK(partition_str(partition_of(g1)).size() > 0);
    UnipotentModule g3 = random_module(3, 3, 5);
    CHECK(g3.g() == 3);
    CHECK_THROWS_AS(random_module(0, 3, 1), ModuleError);
    CHECK_THROWS_AS(random_module(1, 0, 1), ModuleError);
}

TEST_CASE("small-rank classification matches the expected templates") {
    ClassifyReport r = classify_small_rank(2, 25, kDefaultSeed);
    CHECK(r.pass());
    CHECK(r.sampler_version == kSamplerVersion);
    REQUIRE(r.cells.size() == 4);

    const ClassifyCell& g1r2 = r.cells[0];
    CHECK(g1r2.g == 1);
    CHECK(g1r2.rank == 2);
    CHECK(g1r2.samples == 1);
    REQUIRE(g1r2.template_counts.size() == 1);
    CHECK(g1r2.template_counts[0].first == "TruncatedPoly(2)");

    const ClassifyCell& g1r3 = r.cells[1];
    CHECK(g1r3.samples == 1);
    CHECK(g1r3.template_counts[0].first == "TruncatedPoly(3)");

    const ClassifyCell& g2r2 = r.cells[2];
    CHECK(g2r2.samples == 25);
    REQUIRE(g2r2.template_counts.size() == 1);
    CHECK(g2r2.template_counts[0].first == "TruncatedPoly(2)");
    CHECK(g2r2.template_counts[0].second == 25);

    const ClassifyCell& g2r3 = r.cells[3];
    CHECK(g2r3.samples == 25);
    bool has_tvsz = false;
    for (const auto& [name, w] : g2r3.witnesses) has_tvsz = has_tvsz || name == "TwoVarSquareZero";
    CHECK(has_tvsz);
    for (const auto& [name, count] : g2r3.template_counts)
        CHECK((name == "TruncatedPoly(2)" || name == "TruncatedPoly(3)" ||
               name == "TwoVarSquareZero"));
    CHECK(!r.rank3_dim2.empty());

    // byte-level determinism of the sampled entries
    ClassifyReport r2 = classify_small_rank(2, 25, kDefaultSeed);
    REQUIRE(r2.entries.size() == r.entries.size());
    for (std::size_t i = 0; i < r.entries.size(); ++i) {
        CHECK(r2.entries[i].descriptor == r.entries[i].descriptor);
        CHECK(r2.entries[i].fingerprint.template_name == r.entries[i].fingerprint.template_name);
    }
}
