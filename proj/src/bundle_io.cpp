#include "homvb/bundle_io.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace homvb {

namespace {

// Single-line scanner with 1-based error positions.
class Scan {
public:
    Scan(const std::string& text, std::size_t line) : s_(text), line_(line) {}

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= s_.size();
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw BundleParseError(line_, pos_ + 1, msg);
    }
    void expect(char c) {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        if (pos_ == start) fail("expected a name");
        return s_.substr(start, pos_ - start);
    }
    long integer() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(s_[start]))))
            fail("expected an integer");
        return std::stol(s_.substr(start, pos_ - start));
    }
    // scalar token: characters up to the next ',', ']', ';', or '}'
    std::string scalar_token() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ']' && s_[pos_] != ';' &&
               s_[pos_] != '}' && s_[pos_] != ' ' && s_[pos_] != '\t')
            ++pos_;
        if (pos_ == start) fail("expected a scalar");
        return s_.substr(start, pos_ - start);
    }
    std::size_t line() const { return line_; }
    std::size_t column() const { return pos_ + 1; }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
    std::size_t line_;
};

std::vector<long> parse_int_vector(Scan& sc) {
    sc.expect('(');
    std::vector<long> v;
    if (!sc.accept(')')) {
        v.push_back(sc.integer());
        while (sc.accept(',')) v.push_back(sc.integer());
        sc.expect(')');
    }
    return v;
}

Matrix parse_matrix_literal(Scan& sc, const Field& f) {
    sc.expect('[');
    std::vector<Vector> rows;
    while (true) {
        sc.expect('[');
        Vector row;
        if (!sc.accept(']')) {
            while (true) {
                std::size_t line = sc.line(), col = sc.column();
                std::string tok = sc.scalar_token();
                try {
                    row.push_back(Scalar::parse(tok, f));
                } catch (const FieldError& err) {
                    throw BundleParseError(line, col, err.what());
                }
                if (sc.accept(']')) break;
                sc.expect(',');
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            sc.fail("rows have different lengths");
        rows.push_back(std::move(row));
        if (sc.accept(']')) break;
        sc.expect(',');
    }
    return Matrix::from_rows(rows, f);
}

UnipotentModule parse_module_spec(Scan& sc, std::size_t g, const Field& f,
                                  std::size_t summand_index) {
    std::string kind = sc.ident();
    auto semantic = [&](const std::string& msg) -> ModuleError {
        return ModuleError("summand " + std::to_string(summand_index) + ": " + msg);
    };
    if (kind == "jordan") {
        sc.expect('(');
        long r = sc.integer();
        sc.expect(')');
        if (r < 1) throw semantic("jordan size must be at least 1");
        try {
            return UnipotentModule::jordan(static_cast<std::size_t>(r), f);
        } catch (const ModuleError& err) {
            throw semantic(err.what());
        }
    }
    if (kind == "monomial") {
        sc.expect('(');
        std::vector<std::vector<std::size_t>> gens;
        while (true) {
            std::vector<std::size_t> exps;
            while (true) {
                long e = sc.integer();
                if (e < 0) sc.fail("exponents must be nonnegative");
                exps.push_back(static_cast<std::size_t>(e));
                if (!sc.accept(',')) break;
            }
            gens.push_back(std::move(exps));
            if (!sc.accept(';')) break;
        }
        sc.expect(')');
        try {
            return UnipotentModule::from_monomial_ideal(g, gens, f);
        } catch (const ModuleError& err) {
            throw semantic(err.what());
        }
    }
    if (kind == "matrices") {
        sc.expect('{');
        std::vector<Matrix> ops;
        while (true) {
            std::string key = sc.ident();
            std::string want = "N" + std::to_string(ops.size() + 1);
            if (key != want) sc.fail("expected operator '" + want + "'");
            sc.expect('=');
            ops.push_back(parse_matrix_literal(sc, f));
            if (!sc.accept(';')) break;
        }
        sc.expect('}');
        if (ops.size() != g)
            throw semantic("expected " + std::to_string(g) + " operators, found " +
                           std::to_string(ops.size()));
        try {
            return UnipotentModule(g, std::move(ops));
        } catch (const ModuleError& err) {
            throw semantic(err.what());
        }
    }
    sc.fail("unknown module form '" + kind + "' (expected jordan, monomial, or matrices)");
}

}  // namespace

HomogeneousBundle parse_bundle(const std::string& text, const Field& f) {
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    bool have_context = false;
    BaseContext ctx;
    ctx.field = f;
    std::map<std::string, Label> names;
    std::vector<BundleSummand> summands;

    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        Scan sc(raw, line_no);
        if (sc.at_end()) continue;
        std::string head = sc.ident();
        if (head == "context") {
            if (have_context) sc.fail("duplicate context line");
            if (sc.ident() != "g") sc.fail("expected 'g=<int>'");
            sc.expect('=');
            long g = sc.integer();
            if (g < 1) sc.fail("g must be at least 1");
            if (sc.ident() != "labels") sc.fail("expected 'labels=<int>'");
            sc.expect('=');
            long m = sc.integer();
            if (m < 0) sc.fail("labels must be nonnegative");
            if (!sc.at_end()) sc.fail("unexpected trailing text");
            ctx.g = static_cast<std::size_t>(g);
            ctx.label_rank = static_cast<std::size_t>(m);
            have_context = true;
        } else if (head == "label") {
            if (!have_context) sc.fail("context line must come first");
            std::string name = sc.ident();
            if (name == "O") sc.fail("label name 'O' is reserved for the zero label");
            if (names.count(name)) sc.fail("label '" + name + "' is already defined");
            sc.expect('=');
            std::vector<long> v = parse_int_vector(sc);
            if (!sc.at_end()) sc.fail("unexpected trailing text");
            if (v.size() != ctx.label_rank)
                sc.fail("label has " + std::to_string(v.size()) + " coordinates, context declares " +
                        std::to_string(ctx.label_rank));
            names.emplace(name, Label{std::move(v)});
        } else if (head == "summand") {
            if (!have_context) sc.fail("context line must come first");
            std::string name = sc.ident();
            Label label{std::vector<long>(ctx.label_rank, 0)};
            if (name != "O") {
                auto it = names.find(name);
                if (it == names.end()) sc.fail("unknown label '" + name + "'");
                label = it->second;
            }
            sc.expect('*');
            UnipotentModule m = parse_module_spec(sc, ctx.g, f, summands.size() + 1);
            if (!sc.at_end()) sc.fail("unexpected trailing text");
            summands.push_back({std::move(label), std::move(m)});
        } else {
            sc.fail("unknown directive '" + head + "'");
        }
    }
    if (!have_context) throw BundleParseError(line_no + 1, 1, "missing context line");
    return HomogeneousBundle(std::move(ctx), std::move(summands));
}

namespace {

std::string matrix_text(const Matrix& m) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? "," : "") << "[";
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? "," : "") << m.at(i, j).str_plain();
        os << "]";
    }
    os << "]";
    return os.str();
}

std::vector<std::string> summand_names(const HomogeneousBundle& e) {
    std::vector<std::string> out;
    std::size_t next = 1;
    for (const auto& s : e.summands())
        out.push_back(s.label.is_zero() ? "O" : "L" + std::to_string(next++));
    return out;
}

}  // namespace

std::string serialize_bundle(const HomogeneousBundle& e) {
    std::ostringstream os;
    os << "context g=" << e.context().g << " labels=" << e.context().label_rank << "\n";
    std::vector<std::string> names = summand_names(e);
    for (std::size_t i = 0; i < e.summands().size(); ++i) {
        if (names[i] == "O") continue;
        const Label& l = e.summands()[i].label;
        os << "label " << names[i] << " = (";
        for (std::size_t k = 0; k < l.coords.size(); ++k) os << (k ? "," : "") << l.coords[k];
        os << ")\n";
    }
    for (std::size_t i = 0; i < e.summands().size(); ++i) {
        os << "summand " << names[i] << " * matrices { ";
        const UnipotentModule& m = e.summands()[i].module;
        for (std::size_t k = 0; k < m.g(); ++k)
            os << (k ? "; " : "") << "N" << (k + 1) << "=" << matrix_text(m.op(k));
        os << " }\n";
    }
    return os.str();
}

Json bundle_json(const HomogeneousBundle& e) {
    Json ctx;
    ctx["g"] = e.context().g;
    ctx["labels"] = e.context().label_rank;
    ctx["field"] = e.context().field.describe();
    Json summands = Json::array();
    for (const auto& s : e.summands()) {
        Json js;
        js["label"] = s.label.str();
        js["dim"] = s.module.dim();
        Json ops = Json::array();
        for (std::size_t k = 0; k < s.module.g(); ++k) {
            Json rows = Json::array();
            for (std::size_t i = 0; i < s.module.dim(); ++i) {
                Json row = Json::array();
                for (std::size_t j = 0; j < s.module.dim(); ++j)
                    row.push_back(s.module.op(k).at(i, j).str_plain());
                rows.push_back(std::move(row));
            }
            ops.push_back(std::move(rows));
        }
        js["operators"] = std::move(ops);
        summands.push_back(std::move(js));
    }
    Json out;
    out["context"] = std::move(ctx);
    out["rank"] = e.rank();
    out["summands"] = std::move(summands);
    return out;
}

Json fingerprint_json(const Fingerprint& fp) {
    Json out;
    out["dim"] = fp.dim;
    out["commutative"] = fp.commutative;
    out["radical_dim"] = fp.radical_dim;
    out["radical_index"] = fp.radical_index;
    out["template"] = fp.template_name;
    return out;
}

namespace {

Json blocks_json(const BundleHomDescription& d) {
    Json blocks = Json::array();
    for (const auto& b : d.blocks) {
        Json jb;
        jb["label"] = b.label.str();
        jb["dim"] = b.space.dim();
        blocks.push_back(std::move(jb));
    }
    return blocks;
}

Json end_block_json(const BundleHomDescription& end) {
    Json je;
    je["rank"] = end.rank();
    je["blocks"] = blocks_json(end);
    if (end.fiber)
        je["fingerprint"] = fingerprint_json(algebra_fingerprint(*end.fiber));
    else
        je["fingerprint"] = nullptr;
    return je;
}

}  // namespace

Json hom_report_json(const HomogeneousBundle& dom, const HomogeneousBundle& cod,
                     const BundleHomDescription& d) {
    Json out;
    out["domain"] = bundle_json(dom);
    out["codomain"] = bundle_json(cod);
    out["rank"] = d.rank();
    out["blocks"] = blocks_json(d);
    return out;
}

Json end_report_json(const HomogeneousBundle& e, const BundleHomDescription& end) {
    Json out;
    out["bundle"] = bundle_json(e);
    out["rank"] = e.rank();
    out["end"] = end_block_json(end);
    return out;
}

Json decompose_report_json(const HomogeneousBundle& e, const BundleDecomposition& dec,
                           std::uint64_t seed) {
    Json out;
    out["bundle"] = bundle_json(e);
    out["rank"] = e.rank();
    out["seed"] = seed;
    Json factors = Json::array();
    for (const auto& p : dec.parts) {
        Json jf;
        jf["label"] = p.summands()[0].label.str();
        jf["dim"] = p.rank();
        jf["module"] = p.summands()[0].module.serialize();
        factors.push_back(std::move(jf));
    }
    out["factors"] = std::move(factors);
    out["non_split"] = dec.non_split;
    out["note"] = dec.note;
    return out;
}

Json verify_report_json(const HomogeneousBundle& e, const BundleHomDescription& end,
                        const VerifyReport& r, const std::string& suite, std::uint64_t seed) {
    Json out;
    out["bundle"] = bundle_json(e);
    out["rank"] = e.rank();
    out["seed"] = seed;
    out["suite"] = suite;
    out["end"] = end_block_json(end);
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json jc;
        jc["name"] = c.name;
        jc["statement"] = c.statement;
        jc["pass"] = c.pass;
        Json w;
        for (const auto& [k, v] : c.witness) w[k] = v;
        jc["witness"] = std::move(w);
        checks.push_back(std::move(jc));
    }
    out["checks"] = std::move(checks);
    return out;
}

namespace {

Json entry_json(const CatalogEntry& e) {
    Json je;
    je["g"] = e.g;
    je["rank"] = e.rank;
    je["descriptor"] = e.descriptor;
    je["end_dim"] = e.fingerprint.dim;
    je["radical_dim"] = e.fingerprint.radical_dim;
    je["radical_index"] = e.fingerprint.radical_index;
    je["template"] = e.fingerprint.template_name;
    je["indecomposable"] = e.indecomposable;
    je["seed"] = e.seed;
    return je;
}

}  // namespace

Json enumerate_report_json(const std::vector<CatalogEntry>& entries, std::size_t max_rank) {
    Json out;
    out["max_rank"] = max_rank;
    Json list = Json::array();
    for (const auto& e : entries) list.push_back(entry_json(e));
    out["entries"] = std::move(list);
    return out;
}

Json classify_report_json(const ClassifyReport& r) {
    Json out;
    out["g_max"] = r.g_max;
    out["samples_per_cell"] = r.samples_per_cell;
    out["seed"] = r.seed;
    out["sampler_version"] = r.sampler_version;
    Json cells = Json::array();
    for (const auto& c : r.cells) {
        Json jc;
        jc["g"] = c.g;
        jc["rank"] = c.rank;
        jc["samples"] = c.samples;
        Json counts;
        for (const auto& [name, n] : c.template_counts) counts[name] = n;
        jc["templates"] = std::move(counts);
        Json wits;
        for (const auto& [name, w] : c.witnesses) wits[name] = w;
        jc["witnesses"] = std::move(wits);
        cells.push_back(std::move(jc));
    }
    out["cells"] = std::move(cells);
    out["violations"] = r.violations;
    out["rank3_dim2"] = r.rank3_dim2;
    out["pass"] = r.pass();
    return out;
}

std::string text_info(const HomogeneousBundle& e) {
    std::ostringstream os;
    os << "context: g=" << e.context().g << " labels=" << e.context().label_rank
       << " field=" << e.context().field.describe() << "\n";
    os << "rank: " << e.rank() << "\n";
    os << "summands: " << e.summands().size() << "\n";
    for (const auto& s : e.summands()) os << "  " << s.label.str() << ": dim " << s.module.dim() << "\n";
    return os.str();
}

std::string text_hom(const BundleHomDescription& d) {
    std::ostringstream os;
    os << "hom rank: " << d.rank() << "\n";
    if (d.blocks.empty()) {
        os << "blocks: none (no shared labels)\n";
    } else {
        os << "blocks:\n";
        for (const auto& b : d.blocks) os << "  " << b.label.str() << ": dim " << b.space.dim() << "\n";
    }
    return os.str();
}

std::string text_end(const HomogeneousBundle& e, const BundleHomDescription& end) {
    std::ostringstream os;
    os << "bundle rank: " << e.rank() << "\n";
    os << "end rank: " << end.rank() << "\n";
    if (!end.blocks.empty()) {
        os << "blocks:\n";
        for (const auto& b : end.blocks)
            os << "  " << b.label.str() << ": dim " << b.space.dim() << "\n";
    }
    if (end.fiber) os << "fingerprint: " << algebra_fingerprint(*end.fiber).str() << "\n";
    return os.str();
}

std::string text_decompose(const BundleDecomposition& dec, std::uint64_t seed) {
    std::ostringstream os;
    os << "seed: " << seed << "\n";
    os << "factors: " << dec.parts.size() << "\n";
    for (std::size_t i = 0; i < dec.parts.size(); ++i)
        os << "  " << (i + 1) << ": " << dec.parts[i].summands()[0].label.str() << " dim "
           << dec.parts[i].rank() << "\n";
    os << "non-split: " << (dec.non_split ? "yes" : "no") << "\n";
    if (!dec.note.empty()) os << "note: " << dec.note << "\n";
    return os.str();
}

std::string text_verify(const VerifyReport& r, const std::string& suite, std::uint64_t seed) {
    std::ostringstream os;
    os << "seed: " << seed << "\n";
    os << "suite: " << suite << "\n";
    std::size_t passed = 0;
    for (const auto& c : r.checks) passed += c.pass ? 1 : 0;
    os << "checks: " << r.checks.size() << " (" << passed << " passed)\n";
    for (const auto& c : r.checks) {
        os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << "\n";
        for (const auto& [k, v] : c.witness) os << "      " << k << ": " << v << "\n";
    }
    os << "result: " << (r.all_pass() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::string text_enumerate(const std::vector<CatalogEntry>& entries) {
    std::ostringstream os;
    os << "entries: " << entries.size() << "\n";
    for (const auto& e : entries)
        os << "  g=" << e.g << " rank=" << e.rank << " " << e.descriptor << " -> "
           << e.fingerprint.template_name << " (end dim " << e.fingerprint.dim << ", "
           << (e.indecomposable ? "indecomposable" : "decomposable") << ")\n";
    return os.str();
}

std::string text_classify(const ClassifyReport& r) {
    std::ostringstream os;
    os << "seed: " << r.seed << "\n";
    os << "sampler: " << r.sampler_version << "\n";
    for (const auto& c : r.cells) {
        os << "g=" << c.g << " rank=" << c.rank << ": " << c.samples << " indecomposable modules\n";
        for (const auto& [name, n] : c.template_counts) os << "  " << name << ": " << n << "\n";
    }
    os << "rank-3 modules with end dim 2: " << r.rank3_dim2 << "\n";
    if (!r.violations.empty()) {
        os << "violations:\n";
        for (const auto& v : r.violations) os << "  " << v << "\n";
    }
    os << "result: " << (r.pass() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void csv_entry_row(std::ostringstream& os, const CatalogEntry& e) {
    os << e.g << "," << e.rank << "," << csv_field(e.descriptor) << "," << e.fingerprint.dim << ","
       << e.fingerprint.radical_dim << "," << e.fingerprint.radical_index << ","
       << csv_field(e.fingerprint.template_name) << "," << (e.indecomposable ? "true" : "false")
       << "\n";
}

}  // namespace

std::string catalog_csv(const std::vector<CatalogEntry>& entries) {
    std::ostringstream os;
    os << "g,rank,descriptor,end_dim,radical_dim,radical_index,template,indecomposable\n";
    for (const auto& e : entries) csv_entry_row(os, e);
    return os.str();
}

std::string classify_csv(const ClassifyReport& r) {
    std::ostringstream os;
    os << "g,rank,descriptor,end_dim,radical_dim,radical_index,template,indecomposable\n";
    for (const auto& e : r.entries) csv_entry_row(os, e);
    return os.str();
}

}  // namespace homvb
