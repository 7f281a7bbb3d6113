#pragma once

#include "homvb/bundles.hpp"
#include "homvb/catalog.hpp"

#include "json.hpp"

namespace homvb {

/// Syntax error in a bundle description, with 1-based position.
class BundleParseError : public BundleError {
public:
    BundleParseError(std::size_t line, std::size_t column, const std::string& msg)
        : BundleError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                      ": " + msg),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

/// Line-oriented bundle description:
///   context g=<int> labels=<int>        (required first)
///   label <name> = (<int>,...)
///   summand <name|O> * jordan(<r>)
///   summand <name|O> * monomial(<exps>;<exps>;...)
///   summand <name|O> * matrices { N1=[[...],...]; ...; Ng=[...] }
/// Comments start at '#'. Scalars are integers or fractions in the given
/// field. Syntax errors carry line/column; semantic errors carry the summand
/// index.
HomogeneousBundle parse_bundle(const std::string& text, const Field& f = Field::rationals());

/// Canonical text form; parse_bundle(serialize_bundle(e), field) == e.
std::string serialize_bundle(const HomogeneousBundle& e);

using Json = nlohmann::ordered_json;

Json bundle_json(const HomogeneousBundle& e);
Json fingerprint_json(const Fingerprint& fp);
Json hom_report_json(const HomogeneousBundle& dom, const HomogeneousBundle& cod,
                     const BundleHomDescription& d);
Json end_report_json(const HomogeneousBundle& e, const BundleHomDescription& end);
Json decompose_report_json(const HomogeneousBundle& e, const BundleDecomposition& dec,
                           std::uint64_t seed);
Json verify_report_json(const HomogeneousBundle& e, const BundleHomDescription& end,
                        const VerifyReport& r, const std::string& suite, std::uint64_t seed);
Json enumerate_report_json(const std::vector<CatalogEntry>& entries, std::size_t max_rank);
Json classify_report_json(const ClassifyReport& r);

std::string text_info(const HomogeneousBundle& e);
std::string text_hom(const BundleHomDescription& d);
std::string text_end(const HomogeneousBundle& e, const BundleHomDescription& end);
std::string text_decompose(const BundleDecomposition& dec, std::uint64_t seed);
std::string text_verify(const VerifyReport& r, const std::string& suite, std::uint64_t seed);
std::string text_enumerate(const std::vector<CatalogEntry>& entries);
std::string text_classify(const ClassifyReport& r);

/// Atlas rows: g, rank, descriptor, end_dim, radical_dim, radical_index,
/// template, indecomposable.
std::string catalog_csv(const std::vector<CatalogEntry>& entries);
std::string classify_csv(const ClassifyReport& r);

}  // namespace homvb
