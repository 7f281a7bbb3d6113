#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "homvb/bundle_io.hpp"
#include "homvb/catalog.hpp"

using namespace homvb;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BundleError("cannot open file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Field parse_field_flag(const std::string& s) {
    if (s == "q") return Field::rationals();
    if (s.rfind("fp:", 0) == 0) {
        long p = 0;
        try {
            std::size_t used = 0;
            p = std::stol(s.substr(3), &used);
            if (used != s.size() - 3) throw std::invalid_argument(s);
        } catch (const std::exception&) {
            throw FieldError("bad field '" + s + "' (expected q or fp:<p>)");
        }
        return Field::prime(p);
    }
    throw FieldError("bad field '" + s + "' (expected q or fp:<p>)");
}

void require_report_format(const std::string& format) {
    if (format == "csv")
        throw BundleError("csv format is only available for enumerate and classify");
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"homvb: exact models of homogeneous vector bundles over an abelian variety"};
    app.fallthrough();
    app.require_subcommand(1);

    std::string format = "text";
    std::string field_flag = "q";
    std::uint64_t seed = kDefaultSeed;
    app.add_option("--format", format, "Output format (csv: enumerate/classify only)")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--field", field_flag, "Scalar field: q or fp:<p>")->capture_default_str();
    app.add_option("--seed", seed, "Seed for sampling and decomposition")->capture_default_str();

    std::string file_a, file_b;
    std::string suite = "all";
    std::size_t max_rank = 0, gmax = 0, samples = 0;
    bool g1 = false;

    CLI::App* info = app.add_subcommand("info", "Parse a bundle file and summarize it");
    info->add_option("FILE", file_a, "bundle description (.hb)")->required();

    CLI::App* hom = app.add_subcommand("hom", "Homomorphism bundle of two bundle files");
    hom->add_option("FILE1", file_a, "domain bundle")->required();
    hom->add_option("FILE2", file_b, "codomain bundle")->required();

    CLI::App* end_cmd = app.add_subcommand("end", "Endomorphism bundle and fiber fingerprint");
    end_cmd->add_option("FILE", file_a, "bundle description (.hb)")->required();

    CLI::App* dec_cmd = app.add_subcommand("decompose", "Krull-Schmidt decomposition");
    dec_cmd->add_option("FILE", file_a, "bundle description (.hb)")->required();

    CLI::App* ver_cmd = app.add_subcommand("verify", "Run the structure-theorem check suite");
    ver_cmd->add_option("FILE", file_a, "bundle description (.hb)")->required();
    ver_cmd->add_option("--suite", suite, "all, ranks, or algebras")
        ->check(CLI::IsMember({"all", "ranks", "algebras"}))
        ->capture_default_str();

    CLI::App* enum_cmd = app.add_subcommand("enumerate", "Catalog of g=1 bundles by partition");
    enum_cmd->add_flag("--g1", g1, "enumerate over a one-dimensional base")->required();
    enum_cmd->add_option("--max-rank", max_rank, "largest rank to include")->required();

    CLI::App* cls_cmd = app.add_subcommand("classify", "Small-rank endomorphism-algebra atlas");
    cls_cmd->add_option("--gmax", gmax, "largest base dimension")->required();
    cls_cmd->add_option("--samples", samples, "indecomposable samples per (g, rank) cell")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Field fld = parse_field_flag(field_flag);

        if (info->parsed()) {
            require_report_format(format);
            HomogeneousBundle e = parse_bundle(slurp(file_a), fld);
            if (format == "json")
                emit(bundle_json(e));
            else
                std::cout << text_info(e);
            return 0;
        }
        if (hom->parsed()) {
            require_report_format(format);
            HomogeneousBundle a = parse_bundle(slurp(file_a), fld);
            HomogeneousBundle b = parse_bundle(slurp(file_b), fld);
            BundleHomDescription d = hom_bundle(a, b);
            if (format == "json")
                emit(hom_report_json(a, b, d));
            else
                std::cout << text_hom(d);
            return 0;
        }
        if (end_cmd->parsed()) {
            require_report_format(format);
            HomogeneousBundle e = parse_bundle(slurp(file_a), fld);
            BundleHomDescription d = end_bundle(e);
            if (format == "json")
                emit(end_report_json(e, d));
            else
                std::cout << text_end(e, d);
            return 0;
        }
        if (dec_cmd->parsed()) {
            require_report_format(format);
            HomogeneousBundle e = parse_bundle(slurp(file_a), fld);
            BundleDecomposition dec = decompose_bundle(e, seed);
            if (format == "json")
                emit(decompose_report_json(e, dec, seed));
            else
                std::cout << text_decompose(dec, seed);
            return dec.non_split ? 1 : 0;
        }
        if (ver_cmd->parsed()) {
            require_report_format(format);
            HomogeneousBundle e = parse_bundle(slurp(file_a), fld);
            BundleHomDescription d = end_bundle(e);
            VerifyReport r = verify_suite(e, suite, seed);
            if (format == "json")
                emit(verify_report_json(e, d, r, suite, seed));
            else
                std::cout << text_verify(r, suite, seed);
            return r.all_pass() ? 0 : 1;
        }
        if (enum_cmd->parsed()) {
            std::vector<CatalogEntry> entries = enumerate_g1(max_rank, fld);
            if (format == "csv")
                std::cout << catalog_csv(entries);
            else if (format == "json")
                emit(enumerate_report_json(entries, max_rank));
            else
                std::cout << text_enumerate(entries);
            return 0;
        }
        if (cls_cmd->parsed()) {
            ClassifyReport r = classify_small_rank(gmax, samples, seed, fld);
            if (format == "csv")
                std::cout << classify_csv(r);
            else if (format == "json")
                emit(classify_report_json(r));
            else
                std::cout << text_classify(r);
            return r.pass() ? 0 : 1;
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 2;
}
