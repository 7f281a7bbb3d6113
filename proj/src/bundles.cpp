#include "homvb/bundles.hpp"

#include <algorithm>
#include <sstream>

namespace homvb {

bool Label::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](long c) { return c == 0; });
}

Label Label::operator+(const Label& o) const {
    if (coords.size() != o.coords.size()) throw BundleError("label length mismatch");
    Label out = *this;
    for (std::size_t i = 0; i < coords.size(); ++i) out.coords[i] += o.coords[i];
    return out;
}

Label Label::operator-() const {
    Label out = *this;
    for (long& c : out.coords) c = -c;
    return out;
}

std::string Label::str() const {
    if (is_zero()) return "O";
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << coords[i];
    os << ")";
    return os.str();
}

HomogeneousBundle::HomogeneousBundle(BaseContext ctx, std::vector<BundleSummand> summands)
    : ctx_(std::move(ctx)) {
    if (ctx_.g < 1) throw BundleError("base dimension g must be at least 1");
    for (std::size_t i = 0; i < summands.size(); ++i) {
        const BundleSummand& s = summands[i];
        if (s.label.coords.size() != ctx_.label_rank)
            throw BundleError("summand " + std::to_string(i + 1) + ": label length " +
                              std::to_string(s.label.coords.size()) + " does not match context rank " +
                              std::to_string(ctx_.label_rank));
        if (s.module.g() != ctx_.g)
            throw BundleError("summand " + std::to_string(i + 1) + ": module has g = " +
                              std::to_string(s.module.g()) + ", context has g = " +
                              std::to_string(ctx_.g));
        if (s.module.dim() > 0 && s.module.field() != ctx_.field)
            throw BundleError("summand " + std::to_string(i + 1) +
                              ": module field does not match context field");
    }
    // merge equal labels in input order, drop zero-dimensional modules
    std::stable_sort(summands.begin(), summands.end(),
                     [](const BundleSummand& a, const BundleSummand& b) { return a.label < b.label; });
    for (auto& s : summands) {
        if (s.module.dim() == 0) continue;
        if (!summands_.empty() && summands_.back().label == s.label)
            summands_.back().module = direct_sum_mod(summands_.back().module, s.module);
        else
            summands_.push_back(std::move(s));
    }
}

std::size_t HomogeneousBundle::rank() const {
    std::size_t n = 0;
    for (const auto& s : summands_) n += s.module.dim();
    return n;
}

bool HomogeneousBundle::indecomposable() const {
    return summands_.size() == 1 && is_indecomposable(summands_[0].module);
}

bool HomogeneousBundle::operator==(const HomogeneousBundle& o) const {
    if (ctx_ != o.ctx_ || summands_.size() != o.summands_.size()) return false;
    for (std::size_t i = 0; i < summands_.size(); ++i)
        if (summands_[i].label != o.summands_[i].label ||
            !(summands_[i].module == o.summands_[i].module))
            return false;
    return true;
}

HomogeneousBundle tensor_line(const HomogeneousBundle& e, const Label& l) {
    if (l.coords.size() != e.context().label_rank)
        throw BundleError("twist label length does not match context rank");
    std::vector<BundleSummand> out;
    for (const auto& s : e.summands()) out.push_back({s.label + l, s.module});
    return HomogeneousBundle(e.context(), std::move(out));
}

std::size_t BundleHomDescription::rank() const {
    std::size_t r = 0;
    for (const auto& b : blocks) r += b.space.dim();
    return r;
}

BundleHomDescription hom_bundle(const HomogeneousBundle& e, const HomogeneousBundle& ep) {
    if (e.context() != ep.context()) throw BundleError("bundles live over different contexts");
    BundleHomDescription out;
    std::size_t i = 0, j = 0;
    while (i < e.summands().size() && j < ep.summands().size()) {
        const BundleSummand& a = e.summands()[i];
        const BundleSummand& b = ep.summands()[j];
        if (a.label < b.label) {
            ++i;
        } else if (b.label < a.label) {
            ++j;
        } else {
            out.blocks.push_back({a.label, hom_space(a.module, b.module)});
            ++i, ++j;
        }
    }
    return out;
}

namespace {

Matrix embed_block(const Matrix& t, std::size_t offset, std::size_t n, const Field& f) {
    Matrix out(n, n, f);
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j) out.set(offset + i, offset + j, t.at(i, j));
    return out;
}

}  // namespace

BundleHomDescription end_bundle(const HomogeneousBundle& e) {
    BundleHomDescription out = hom_bundle(e, e);
    std::size_t n = e.rank();
    if (n == 0) return out;
    const Field& f = e.context().field;
    std::vector<Matrix> span;
    std::size_t offset = 0;
    for (std::size_t i = 0; i < e.summands().size(); ++i) {
        for (const Matrix& t : out.blocks[i].space.basis) span.push_back(embed_block(t, offset, n, f));
        offset += e.summands()[i].module.dim();
    }
    out.fiber.emplace(n, f, std::move(span));
    if (out.fiber->dim() != out.rank())
        throw BundleError("fiber algebra dimension disagrees with block ranks");  // defensive
    if (e.summands().size() == 1 && out.fiber->radical_available() && out.fiber->is_local() &&
        n >= 2 && out.fiber->dim() > 1 + n * (n - 1) / 2)
        throw BundleError("endomorphism dimension exceeds the indecomposable bound");  // defensive
    return out;
}

std::size_t nhb_rank(const HomogeneousBundle& e) {
    if (!e.indecomposable()) throw BundleError("nilpotent-part rank needs an indecomposable bundle");
    EndAlgebra a = end_algebra(e.summands()[0].module);
    std::size_t rad = a.radical_dim();
    if (rad != a.dim() - 1)
        throw BundleError("radical does not have corank one in a local algebra");  // defensive
    if (e.rank() >= 2 && rad < 1)
        throw BundleError("rank >= 2 bundle with vanishing nilpotent part");  // defensive
    return rad;
}

bool sequence_splits(const HomogeneousBundle& e) {
    if (!e.indecomposable()) throw BundleError("splitting test needs an indecomposable bundle");
    bool split = e.rank() == 1;
    EndAlgebra a = end_algebra(e.summands()[0].module);
    if ((a.dim() == 1) != split || (nhb_rank(e) == 0) != split)
        throw BundleError("splitting criterion disagrees with fiber dimensions");  // defensive
    return split;
}

bool is_trivial_bundle(const HomogeneousBundle& e) {
    bool direct = e.summands().size() == 1 && e.summands()[0].label.is_zero();
    if (direct)
        for (const Matrix& n : e.summands()[0].module.ops()) direct = direct && n.is_zero();
    if (e.summands().size() == 1 && e.summands()[0].label.is_zero()) {
        // fiber route: full matrix algebra with zero radical
        BundleHomDescription end = end_bundle(e);
        if (end.fiber->radical_available()) {
            bool fiber_route =
                end.fiber->dim() == e.rank() * e.rank() && end.fiber->radical_dim() == 0;
            if (fiber_route != direct)
                throw BundleError("trivial-bundle routes disagree");  // defensive
        }
    }
    return direct;
}

bool is_simple(const HomogeneousBundle& e) {
    bool simple = e.rank() == 1;
    if (e.rank() >= 1) {
        BundleHomDescription end = end_bundle(e);
        if ((end.fiber->dim() == 1) != simple)
            throw BundleError("simplicity disagrees with fiber dimension");  // defensive
    }
    return simple;
}

BundleDecomposition decompose_bundle(const HomogeneousBundle& e, std::uint64_t seed) {
    BundleDecomposition out;
    for (const auto& s : e.summands()) {
        Decomposition d = decompose_module(s.module, seed);
        for (const auto& fac : d.factors)
            out.parts.push_back(HomogeneousBundle(e.context(), {{s.label, fac}}));
        out.non_split = out.non_split || d.non_split;
        if (out.note.empty()) out.note = d.note;
    }
    return out;
}

KernelRecord kernel_description(const HomogeneousBundle&) {
    return {"zero section Theta(E)", "A", 0};
}

bool VerifyReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace {

std::string size_str(std::size_t n) { return std::to_string(n); }

std::string yesno(bool b) { return b ? "yes" : "no"; }

HomogeneousBundle line_bundle(const BaseContext& ctx, const Label& l) {
    return HomogeneousBundle(ctx, {{l, UnipotentModule::trivial(ctx.g, 1, ctx.field)}});
}

}  // namespace

VerifyReport verify_suite(const HomogeneousBundle& e, const std::string& suite,
                          std::uint64_t seed) {
    bool want_ranks = suite == "all" || suite == "ranks";
    bool want_algebras = suite == "all" || suite == "algebras";
    if (!want_ranks && !want_algebras)
        throw BundleError("unknown verification suite '" + suite + "'");

    BundleHomDescription end = end_bundle(e);
    BundleDecomposition dec = decompose_bundle(e, seed);
    std::vector<const HomogeneousBundle*> certified;
    for (const auto& p : dec.parts)
        if (p.indecomposable()) certified.push_back(&p);

    VerifyReport report;
    auto add = [&](bool wanted, CheckResult c) {
        if (wanted) report.checks.push_back(std::move(c));
    };

    {
        CheckResult c{"end_fiber",
                      "the endomorphism bundle is label-blocked with fiber the full endomorphism "
                      "algebra of the module sum",
                      true,
                      {}};
        std::size_t block_sum = 0;
        std::ostringstream blocks;
        for (std::size_t i = 0; i < end.blocks.size(); ++i) {
            block_sum += end.blocks[i].space.dim();
            blocks << (i ? ";" : "") << end.blocks[i].label.str() << ":" << end.blocks[i].space.dim();
            bool found = false;
            for (const auto& s : e.summands()) found = found || s.label == end.blocks[i].label;
            c.pass = c.pass && found;
        }
        c.pass = c.pass && end.rank() == block_sum;
        if (e.rank() >= 1)
            c.pass = c.pass && end.fiber.has_value() && end.fiber->dim() == end.rank() &&
                     end.fiber->basis()[0].is_identity();
        c.witness = {{"end_rank", size_str(end.rank())},
                     {"fiber_dim", size_str(e.rank() >= 1 ? end.fiber->dim() : 0)},
                     {"blocks", blocks.str()}};
        add(want_algebras, std::move(c));
    }

    {
        CheckResult c{"hom_additivity", "hom rank is additive over direct summands", true, {}};
        std::size_t total = 0;
        for (const auto& p : dec.parts)
            for (const auto& q : dec.parts) total += hom_bundle(p, q).rank();
        c.pass = total == end.rank();
        c.witness = {{"pairwise_sum", size_str(total)}, {"end_rank", size_str(end.rank())}};
        add(want_ranks, std::move(c));
    }

    {
        CheckResult c{"tensor_cancellation",
                      "twisting every label by a fixed line bundle preserves hom ranks", true, {}};
        Label probe{std::vector<long>(e.context().label_rank, 1)};
        HomogeneousBundle twisted = tensor_line(e, probe);
        std::size_t twisted_rank = end_bundle(twisted).rank();
        c.pass = twisted_rank == end.rank() && tensor_line(twisted, -probe) == e;
        c.witness = {{"probe", probe.str()},
                     {"twisted_end_rank", size_str(twisted_rank)},
                     {"end_rank", size_str(end.rank())}};
        add(want_ranks, std::move(c));
    }

    {
        CheckResult c{"krull_schmidt",
                      "the bundle splits into indecomposable summands with a certified "
                      "decomposition",
                      !dec.non_split && certified.size() == dec.parts.size(),
                      {}};
        std::ostringstream parts;
        for (std::size_t i = 0; i < dec.parts.size(); ++i)
            parts << (i ? ";" : "") << dec.parts[i].summands()[0].label.str() << ":dim"
                  << dec.parts[i].rank();
        c.witness = {{"factors", dec.parts.empty() ? "none" : parts.str()},
                     {"non_split", yesno(dec.non_split)}};
        if (!dec.note.empty()) c.witness.push_back({"note", dec.note});
        add(want_algebras, std::move(c));
    }

    {
        CheckResult c{"rank_bound",
                      "each indecomposable summand of rank n has endomorphism dimension between 2 "
                      "and 1 + n(n-1)/2 when n >= 2, and exactly 1 when n = 1",
                      true,
                      {}};
        std::ostringstream dims;
        for (std::size_t i = 0; i < certified.size(); ++i) {
            std::size_t n = certified[i]->rank();
            std::size_t d = end_algebra(certified[i]->summands()[0].module).dim();
            bool ok = n == 1 ? d == 1 : (2 <= d && d <= 1 + n * (n - 1) / 2);
            c.pass = c.pass && ok;
            dims << (i ? ";" : "") << "n" << n << ":d" << d;
        }
        c.witness = {{"factor_dims", certified.empty() ? "none" : dims.str()}};
        add(want_ranks, std::move(c));
    }

    {
        CheckResult c{"nhb_formula",
                      "the nilpotent part of the endomorphism bundle of an indecomposable summand "
                      "has rank one less than the endomorphism bundle, and at least 1 for rank >= 2",
                      true,
                      {}};
        std::ostringstream w;
        for (std::size_t i = 0; i < certified.size(); ++i) {
            std::size_t nhb = nhb_rank(*certified[i]);
            std::size_t er = end_bundle(*certified[i]).rank();
            bool ok = nhb == er - 1 && (certified[i]->rank() < 2 || nhb >= 1);
            c.pass = c.pass && ok;
            w << (i ? ";" : "") << "nhb" << nhb << ":end" << er;
        }
        c.witness = {{"factor_ranks", certified.empty() ? "none" : w.str()}};
        add(want_ranks, std::move(c));
    }

    {
        CheckResult c{"splits_iff_line",
                      "the canonical extension sequence of an indecomposable summand splits "
                      "exactly when it is a line bundle",
                      true,
                      {}};
        std::ostringstream w;
        for (std::size_t i = 0; i < certified.size(); ++i) {
            bool split = sequence_splits(*certified[i]);
            c.pass = c.pass && split == (certified[i]->rank() == 1);
            w << (i ? ";" : "") << "rank" << certified[i]->rank() << ":" << (split ? "splits" : "nonsplit");
        }
        c.witness = {{"factors", certified.empty() ? "none" : w.str()}};
        add(want_ranks, std::move(c));
    }

    {
        CheckResult c{"units_nilpotents",
                      "every fiber endomorphism of an indecomposable summand is a unit or "
                      "nilpotent, and the algebra is the span of the identity and its radical",
                      true,
                      {}};
        std::size_t sampled = 0;
        Rng rng(seed);
        for (const HomogeneousBundle* p : certified) {
            EndAlgebra a = end_algebra(p->summands()[0].module);
            c.pass = c.pass && a.is_local() && a.dim() == 1 + a.radical_dim();
            std::vector<Vector> probes;
            for (std::size_t i = 0; i < a.dim(); ++i) {
                Vector v(a.dim(), Scalar::zero(a.field()));
                v[i] = Scalar::one(a.field());
                probes.push_back(std::move(v));
            }
            for (int t = 0; t < 10; ++t) {
                Vector v(a.dim(), Scalar::zero(a.field()));
                for (std::size_t i = 0; i < a.dim(); ++i)
                    v[i] = Scalar::from_long(rng.range(-5, 5), a.field());
                probes.push_back(std::move(v));
            }
            for (const Vector& v : probes) {
                ++sampled;
                c.pass = c.pass && unit_or_nilpotent(a, a.element(v)) != ElementClass::neither;
            }
        }
        c.witness = {{"factors", size_str(certified.size())}, {"elements_sampled", size_str(sampled)}};
        add(want_algebras, std::move(c));
    }

    {
        CheckResult c{"trivial_criterion",
                      "the bundle is trivial exactly when its single label is O and the fiber "
                      "algebra is a full matrix algebra with zero radical",
                      true,
                      {}};
        bool direct = e.summands().size() == 1 && e.summands()[0].label.is_zero();
        if (direct)
            for (const Matrix& n : e.summands()[0].module.ops()) direct = direct && n.is_zero();
        bool fiber_route = e.summands().size() == 1 && e.summands()[0].label.is_zero() &&
                           end.fiber->radical_available() &&
                           end.fiber->dim() == e.rank() * e.rank() && end.fiber->radical_dim() == 0;
        if (e.rank() >= 1 && e.summands()[0].label.is_zero() && e.summands().size() == 1 &&
            !end.fiber->radical_available()) {
            c.witness = {{"skipped", "radical unavailable over this field"}};
        } else {
            c.pass = direct == fiber_route && direct == is_trivial_bundle(e);
            c.witness = {{"is_trivial", yesno(direct)}, {"fiber_route", yesno(fiber_route)}};
        }
        add(want_algebras, std::move(c));
    }

    {
        CheckResult c{"line_sections",
                      "maps from the label's line bundle count global sections of the summand "
                      "module; maps to it count cosections",
                      true,
                      {}};
        std::ostringstream w;
        for (std::size_t i = 0; i < e.summands().size(); ++i) {
            const BundleSummand& s = e.summands()[i];
            HomogeneousBundle line = line_bundle(e.context(), s.label);
            HomogeneousBundle single(e.context(), {{s.label, s.module}});
            std::size_t from_line = hom_bundle(line, single).rank();
            std::size_t to_line = hom_bundle(single, line).rank();
            bool ok = from_line == global_sections_dim(s.module) &&
                      to_line == cosections_dim(s.module);
            c.pass = c.pass && ok;
            w << (i ? ";" : "") << s.label.str() << ":h0=" << from_line << ",h0dual=" << to_line;
        }
        c.witness = {{"sections", e.summands().empty() ? "none" : w.str()}};
        add(want_ranks, std::move(c));
    }

    {
        KernelRecord k = kernel_description(e);
        CheckResult c{"kernel_record",
                      "the kernel of the endomorphism monoid is the zero section, a copy of the "
                      "base variety, with zero-dimensional fiber",
                      k.kernel == "zero section Theta(E)" && k.isomorphic_to == "A" &&
                          k.fiber_dim == 0,
                      {{"kernel", k.kernel},
                       {"isomorphic_to", k.isomorphic_to},
                       {"fiber_dim", size_str(k.fiber_dim)}}};
        add(want_algebras, std::move(c));
    }

    {
        CheckResult c{"fiber_model",
                      "records, per indecomposable summand, cyclicity over the endomorphism "
                      "algebra and whether the algebra dimension equals the rank (informational)",
                      true,
                      {}};
        std::ostringstream w;
        for (std::size_t i = 0; i < certified.size(); ++i) {
            CyclicityCheck cc = is_cyclic_over_end(certified[i]->summands()[0].module, seed);
            w << (i ? ";" : "") << certified[i]->summands()[0].label.str() << ":cyclic="
              << yesno(cc.cyclic) << ",dim_matches_rank=" << yesno(cc.matches_fiber_model);
        }
        c.witness = {{"factors", certified.empty() ? "none" : w.str()}};
        add(want_algebras, std::move(c));
    }

    return report;
}

}  // namespace homvb
