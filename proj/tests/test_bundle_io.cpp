#include "doctest.h"
#include "homvb/bundle_io.hpp"
#include "homvb/catalog.hpp"

using namespace homvb;

namespace {

const char* kMixed = R"(# two labels, three summands
context g=1 labels=2
label A = (1,0)
label B = (0,-2)
summand O * jordan(2)
summand A * jordan(3)
summand B * matrices { N1=[[0,1],[0,0]] }
)";

HomogeneousBundle mixed() { return parse_bundle(kMixed); }

}  // namespace

TEST_CASE("parse: context, labels, and all three summand forms") {
    HomogeneousBundle e = mixed();
    CHECK(e.context().g == 1);
    CHECK(e.context().label_rank == 2);
    CHECK(e.rank() == 7);
    REQUIRE(e.summands().size() == 3);
    // normalized order sorts labels ascending: (0,-2) < (0,0) < (1,0)
    CHECK(e.summands()[0].label.str() == "(0,-2)");
    CHECK(e.summands()[1].label.is_zero());
    CHECK(e.summands()[2].label.str() == "(1,0)");
    CHECK(e.summands()[1].module.dim() == 2);
    CHECK(e.summands()[2].module.dim() == 3);
}

TEST_CASE("parse: monomial form builds the quotient module") {
    HomogeneousBundle e = parse_bundle(
        "context g=2 labels=0\n"
        "summand O * monomial(2,0;1,1;0,2)\n");
    REQUIRE(e.summands().size() == 1);
    CHECK(e.summands()[0].module == UnipotentModule::from_monomial_ideal(
                                        2, {{2, 0}, {1, 1}, {0, 2}}, Field::rationals()));
}

TEST_CASE("parse: equal labels merge, comments and blank lines ignored") {
    HomogeneousBundle e = parse_bundle(
        "context g=1 labels=1\n"
        "\n"
        "label A = (3)   # a label comment\n"
        "summand A * jordan(2)\n"
        "summand A * jordan(1)\n");
    REQUIRE(e.summands().size() == 1);
    CHECK(e.summands()[0].module.dim() == 3);
}

TEST_CASE("parse: rank-0 bundle is just a context line") {
    HomogeneousBundle e = parse_bundle("context g=2 labels=1\n");
    CHECK(e.rank() == 0);
    CHECK(e.summands().empty());
}

TEST_CASE("parse: prime-field scalars, including fractions") {
    Field f7 = Field::prime(7);
    HomogeneousBundle e = parse_bundle(
        "context g=1 labels=0\n"
        "summand O * matrices { N1=[[0,1/2],[0,0]] }\n",
        f7);
    // 1/2 = 4 mod 7
    CHECK(e.summands()[0].module.op(0).at(0, 1) == Scalar::from_long(4, f7));
}

TEST_CASE("parse errors carry 1-based line and column positions") {
    auto pos = [](const std::string& text) {
        try {
            parse_bundle(text);
        } catch (const BundleParseError& err) {
            return std::pair<std::size_t, std::size_t>{err.line(), err.column()};
        }
        return std::pair<std::size_t, std::size_t>{0, 0};
    };

    CHECK(pos("context g=1 labels=0\nsummand O * jordan(oops)\n") ==
          std::pair<std::size_t, std::size_t>{2, 20});
    CHECK(pos("context g=1 labels=0\nbogus O * jordan(1)\n") ==
          std::pair<std::size_t, std::size_t>{2, 6});
    CHECK_THROWS_WITH_AS(parse_bundle("summand O * jordan(1)\n"),
                         "line 1, column 8: context line must come first", BundleParseError);
    CHECK_THROWS_WITH_AS(parse_bundle(""), "line 1, column 1: missing context line",
                         BundleParseError);
    CHECK_THROWS_AS(parse_bundle("context g=1 labels=0\ncontext g=1 labels=0\n"),
                    BundleParseError);
    CHECK_THROWS_AS(parse_bundle("context g=0 labels=0\n"), BundleParseError);
    CHECK_THROWS_AS(parse_bundle("context g=1 labels=1\nlabel O = (1)\n"), BundleParseError);
    CHECK_THROWS_AS(parse_bundle("context g=1 labels=1\nlabel A = (1)\nlabel A = (2)\n"),
                    BundleParseError);
    CHECK_THROWS_AS(parse_bundle("context g=1 labels=2\nlabel A = (1)\n"), BundleParseError);
    CHECK_THROWS_AS(parse_bundle("context g=1 labels=0\nsummand A * jordan(1)\n"),
                    BundleParseError);
    CHECK_THROWS_AS(parse_bundle("context g=1 labels=0\nsummand O * jordan(1) extra\n"),
                    BundleParseError);
    // bad scalar inside a matrix literal points at the offending token
    CHECK(pos("context g=1 labels=0\nsummand O * matrices { N1=[[0,x],[0,0]] }\n") ==
          std::pair<std::size_t, std::size_t>{2, 31});
}

TEST_CASE("parse: semantic module errors name the summand") {
    CHECK_THROWS_WITH_AS(
        parse_bundle("context g=2 labels=0\nsummand O * matrices { N1=[[0]] }\n"),
        "summand 1: expected 2 operators, found 1", ModuleError);
    CHECK_THROWS_AS(parse_bundle("context g=1 labels=0\nsummand O * jordan(0)\n"), ModuleError);
    // non-commuting operators are rejected by module construction
    CHECK_THROWS_AS(
        parse_bundle("context g=2 labels=0\n"
                     "summand O * matrices { "
                     "N1=[[0,1,0],[0,0,0],[0,0,0]]; N2=[[0,0,0],[0,0,1],[0,0,0]] }\n"),
        ModuleError);
}

TEST_CASE("serialize then parse is the identity") {
    std::vector<HomogeneousBundle> cases;
    cases.push_back(mixed());
    cases.push_back(parse_bundle("context g=2 labels=1\n"));
    cases.push_back(parse_bundle(
        "context g=2 labels=0\nsummand O * monomial(2,0;1,1;0,2)\n"));
    Field f5 = Field::prime(5);
    cases.push_back(parse_bundle(
        "context g=1 labels=1\nlabel A = (-4)\nsummand A * matrices { N1=[[0,3],[0,0]] }\n",
        f5));
    for (std::size_t seed = 1; seed <= 10; ++seed) {
        BaseContext ctx{2, 1, Field::rationals()};
        std::vector<BundleSummand> parts;
        parts.push_back({Label{{static_cast<long>(seed) - 5}},
                         random_module(2, 3, seed, Field::rationals())});
        parts.push_back({Label{{0}}, random_module(2, 2, seed + 100, Field::rationals())});
        cases.push_back(HomogeneousBundle(ctx, parts));
    }
    for (const auto& e : cases) {
        std::string text = serialize_bundle(e);
        CHECK(parse_bundle(text, e.context().field) == e);
        // serialization is canonical: a second round trip reproduces the text
        CHECK(serialize_bundle(parse_bundle(text, e.context().field)) == text);
    }
}

TEST_CASE("serialized form uses matrices blocks and sequential label names") {
    std::string text = serialize_bundle(mixed());
    CHECK(text ==
          "context g=1 labels=2\n"
          "label L1 = (0,-2)\n"
          "label L2 = (1,0)\n"
          "summand L1 * matrices { N1=[[0,1],[0,0]] }\n"
          "summand O * matrices { N1=[[0,1],[0,0]] }\n"
          "summand L2 * matrices { N1=[[0,1,0],[0,0,1],[0,0,0]] }\n");
}

TEST_CASE("bundle_json records context, rank, and operator entries") {
    Json j = bundle_json(mixed());
    CHECK(j["context"]["g"] == 1);
    CHECK(j["context"]["labels"] == 2);
    CHECK(j["context"]["field"] == "Q");
    CHECK(j["rank"] == 7);
    REQUIRE(j["summands"].size() == 3);
    CHECK(j["summands"][1]["label"] == "O");
    CHECK(j["summands"][1]["dim"] == 2);
    CHECK(j["summands"][1]["operators"][0][0][1] == "1");
}

TEST_CASE("end and verify reports serialize with stable shapes") {
    HomogeneousBundle e = parse_bundle("context g=1 labels=0\nsummand O * jordan(3)\n");
    BundleHomDescription end = end_bundle(e);

    Json je = end_report_json(e, end);
    CHECK(je["rank"] == 3);
    CHECK(je["end"]["rank"] == 3);
    CHECK(je["end"]["blocks"][0]["label"] == "O");
    CHECK(je["end"]["fingerprint"]["template"] == "TruncatedPoly(3)");
    CHECK(je["end"]["fingerprint"]["radical_dim"] == 2);

    VerifyReport r = verify_suite(e);
    Json jv = verify_report_json(e, end, r, "all", kDefaultSeed);
    CHECK(jv["suite"] == "all");
    CHECK(jv["seed"] == kDefaultSeed);
    REQUIRE(jv["checks"].size() == 12);
    CHECK(jv["checks"][0]["name"] == "end_fiber");
    for (const auto& c : jv["checks"]) {
        CHECK(c.contains("statement"));
        CHECK(c["statement"].is_string());
        CHECK(!c["statement"].get<std::string>().empty());
        CHECK(c["pass"].is_boolean());
        CHECK(c["witness"].is_object());
    }

    // rank-0 bundle: end has no fiber, fingerprint is null
    HomogeneousBundle zero = parse_bundle("context g=1 labels=0\n");
    Json jz = end_report_json(zero, end_bundle(zero));
    CHECK(jz["end"]["fingerprint"].is_null());
}

TEST_CASE("json output is deterministic") {
    HomogeneousBundle e = mixed();
    Json a = verify_report_json(e, end_bundle(e), verify_suite(e), "all", kDefaultSeed);
    Json b = verify_report_json(e, end_bundle(e), verify_suite(e), "all", kDefaultSeed);
    CHECK(a.dump(2) == b.dump(2));
}

TEST_CASE("decompose report lists factors with serialized modules") {
    HomogeneousBundle e = parse_bundle(
        "context g=1 labels=0\n"
        "summand O * matrices { N1=[[0,0,0],[0,0,1],[0,0,0]] }\n");
    BundleDecomposition dec = decompose_bundle(e);
    Json j = decompose_report_json(e, dec, kDefaultSeed);
    CHECK(j["seed"] == kDefaultSeed);
    CHECK(j["non_split"] == false);
    REQUIRE(j["factors"].size() == 2);
    CHECK(j["factors"][0]["dim"] == 2);
    CHECK(j["factors"][1]["dim"] == 1);
    CHECK(j["factors"][0]["module"].get<std::string>().substr(0, 2) == "Q;");
}

TEST_CASE("catalog csv has the atlas header and quotes embedded commas") {
    std::vector<CatalogEntry> entries = enumerate_g1(3);
    std::string csv = catalog_csv(entries);
    CHECK(csv.substr(0, csv.find('\n')) ==
          "g,rank,descriptor,end_dim,radical_dim,radical_index,template,indecomposable");
    // (2,1) has a comma inside the descriptor, so the field is quoted
    CHECK(csv.find("\"(2,1)\"") != std::string::npos);
    CHECK(csv.find("1,3,(3),3,2,3,TruncatedPoly(3),true") != std::string::npos);
    // one line per entry plus header
    CHECK(std::count(csv.begin(), csv.end(), '\n') == entries.size() + 1);

    ClassifyReport rep = classify_small_rank(2, 3, kDefaultSeed);
    std::string ccsv = classify_csv(rep);
    CHECK(ccsv.substr(0, ccsv.find('\n')) == csv.substr(0, csv.find('\n')));
    CHECK(std::count(ccsv.begin(), ccsv.end(), '\n') == rep.entries.size() + 1);
}

TEST_CASE("text renderers mention the seed and per-check verdicts") {
    HomogeneousBundle e = parse_bundle("context g=1 labels=0\nsummand O * jordan(2)\n");
    std::string tv = text_verify(verify_suite(e), "all", kDefaultSeed);
    CHECK(tv.find("seed: 424242") != std::string::npos);
    CHECK(tv.find("suite: all") != std::string::npos);
    CHECK(tv.find("[PASS] end_fiber") != std::string::npos);
    CHECK(tv.find("[FAIL]") == std::string::npos);
    CHECK(tv.find("result: PASS") != std::string::npos);

    std::string ti = text_info(e);
    CHECK(ti.find("rank: 2") != std::string::npos);
    std::string te = text_end(e, end_bundle(e));
    CHECK(te.find("TruncatedPoly(2)") != std::string::npos);
}
