#include "homvb/poly.hpp"

#include <algorithm>
#include <sstream>

namespace homvb {

Poly poly_trim(Poly p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

bool poly_is_zero(const Poly& p) { return poly_trim(p).empty(); }

long poly_deg(const Poly& p) { return static_cast<long>(poly_trim(p).size()) - 1; }

Poly poly_constant(const Scalar& c) { return poly_trim({c}); }

Poly poly_linear(const Scalar& root) { return {-root, Scalar::one(root.field())}; }

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r = a;
    if (b.size() > r.size()) r.resize(b.size(), Scalar::zero(b.front().field()));
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return poly_trim(std::move(r));
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly r = a;
    if (b.size() > r.size()) r.resize(b.size(), Scalar::zero(b.front().field()));
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return poly_trim(std::move(r));
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Scalar::zero(a.front().field()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return poly_trim(std::move(r));
}

Poly poly_scale(const Poly& a, const Scalar& c) {
    Poly r = a;
    for (auto& x : r) x *= c;
    return poly_trim(std::move(r));
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    Poly bb = poly_trim(b);
    if (bb.empty()) throw LinalgError("polynomial division by zero");
    Poly rem = poly_trim(a);
    if (rem.size() < bb.size()) return {{}, rem};
    const Field f = bb.back().field();
    Poly quot(rem.size() - bb.size() + 1, Scalar::zero(f));
    Scalar lead_inv = bb.back().inverse();
    for (std::size_t i = quot.size(); i-- > 0;) {
        if (rem.size() < bb.size() + i || rem[bb.size() - 1 + i].is_zero()) continue;
        Scalar q = rem[bb.size() - 1 + i] * lead_inv;
        quot[i] = q;
        for (std::size_t j = 0; j < bb.size(); ++j) rem[i + j] -= q * bb[j];
    }
    return {poly_trim(std::move(quot)), poly_trim(std::move(rem))};
}

Poly poly_monic(const Poly& a) {
    Poly t = poly_trim(a);
    if (t.empty()) return t;
    return poly_scale(t, t.back().inverse());
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    Poly x = poly_trim(a), y = poly_trim(b);
    while (!y.empty()) {
        Poly r = poly_divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return poly_monic(x);
}

std::tuple<Poly, Poly, Poly> poly_extended_gcd(const Poly& a, const Poly& b) {
    Poly x = poly_trim(a), y = poly_trim(b);
    if (x.empty() && y.empty()) return {{}, {}, {}};
    const Field f = (x.empty() ? y : x).back().field();
    Poly u0 = poly_constant(Scalar::one(f)), v0 = {};
    Poly u1 = {}, v1 = poly_constant(Scalar::one(f));
    while (!y.empty()) {
        auto [q, r] = poly_divmod(x, y);
        Poly u2 = poly_sub(u0, poly_mul(q, u1));
        Poly v2 = poly_sub(v0, poly_mul(q, v1));
        x = std::move(y); y = std::move(r);
        u0 = std::move(u1); u1 = std::move(u2);
        v0 = std::move(v1); v1 = std::move(v2);
    }
    if (x.empty()) return {{}, {}, {}};
    Scalar norm = x.back().inverse();
    return {poly_scale(x, norm), poly_scale(u0, norm), poly_scale(v0, norm)};
}

Scalar poly_eval(const Poly& p, const Scalar& x) {
    Scalar acc = Scalar::zero(x.field());
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

Matrix poly_eval_matrix(const Poly& p, const Matrix& m) {
    if (!m.is_square()) throw LinalgError("polynomial of non-square matrix");
    Matrix acc(m.rows(), m.rows(), m.field());
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = acc * m;
        for (std::size_t d = 0; d < m.rows(); ++d) acc.set(d, d, acc.at(d, d) + p[i]);
    }
    return acc;
}

Poly poly_derivative(const Poly& p) {
    if (p.size() <= 1) return {};
    const Field f = p.front().field();
    Poly r(p.size() - 1, Scalar::zero(f));
    for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * Scalar::from_long(static_cast<long>(i), f);
    return poly_trim(std::move(r));
}

std::string poly_str(const Poly& p, const std::string& var) {
    Poly t = poly_trim(p);
    if (t.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = t.size(); i-- > 0;) {
        if (t[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || !t[i].is_one()) os << t[i].str_plain();
        if (i >= 1) {
            if (!t[i].is_one()) os << "*";
            os << var;
            if (i >= 2) os << "^" << i;
        }
    }
    return os.str();
}

namespace {

// Divisors of |n| by trial division; n must be nonzero and within desk scale.
std::vector<mpz_class> divisors_of(mpz_class n) {
    n = abs(n);
    std::vector<mpz_class> small, large;
    for (mpz_class d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

// Divides out (x - root) as many times as it evenly goes; returns multiplicity.
std::size_t strip_root(Poly& p, const Scalar& root) {
    std::size_t mult = 0;
    while (poly_deg(p) >= 1) {
        auto [q, r] = poly_divmod(p, poly_linear(root));
        if (!poly_is_zero(r)) break;
        p = std::move(q);
        ++mult;
    }
    return mult;
}

std::vector<Scalar> rational_root_candidates(const Poly& p) {
    // Clear denominators to a primitive integer polynomial; rational roots
    // num/den then satisfy num | constant, den | lead.
    mpz_class den_lcm(1);
    for (const auto& c : p) den_lcm = lcm(den_lcm, c.raw().get_den());
    std::vector<mpz_class> ic;
    for (const auto& c : p) {
        mpq_class prod = c.raw() * mpq_class(den_lcm);
        ic.push_back(prod.get_num());  // denominator is 1 by construction
    }
    mpz_class content(0);
    for (const auto& c : ic) content = gcd(content, c);
    if (content != 0)
        for (auto& c : ic) c /= content;
    mpz_class a0 = ic.front(), lead = ic.back();
    std::vector<Scalar> out;
    // Small-integer scan first: cheap and catches the common cases.
    for (long v = -32; v <= 32; ++v) out.push_back(Scalar::rational(v, 1));
    const mpz_class cap("1000000000000");
    if (abs(a0) > cap || abs(lead) > cap) return out;  // scan only; divisor walk too costly
    for (const auto& num : divisors_of(a0))
        for (const auto& den : divisors_of(lead)) {
            Scalar q = Scalar::rational(mpq_class(num, den));
            out.push_back(q);
            out.push_back(-q);
        }
    return out;
}

}  // namespace

RootSplit field_roots(const Poly& p) {
    Poly t = poly_trim(p);
    if (t.empty()) throw LinalgError("root split of the zero polynomial");
    const Field f = t.back().field();
    RootSplit out{{}, {}, t.back()};
    Poly work = poly_monic(t);
    // Root zero first (always detectable from the constant term).
    if (poly_deg(work) >= 1 && work.front().is_zero()) {
        std::size_t m = strip_root(work, Scalar::zero(f));
        out.roots.push_back({Scalar::zero(f), m});
    }
    if (f.is_prime_field()) {
        long pmod = f.modulus();
        if (pmod > 100003) throw FieldError("prime field too large for exhaustive root scan");
        for (long v = 0; v < pmod && poly_deg(work) >= 1; ++v) {
            Scalar cand = Scalar::residue(v, pmod);
            if (!poly_eval(work, cand).is_zero()) continue;
            std::size_t m = strip_root(work, cand);
            out.roots.push_back({cand, m});
        }
    } else {
        while (poly_deg(work) >= 1) {
            if (poly_deg(work) == 1) {  // monic x - c: root immediate
                Scalar root = -work.front();
                std::size_t m = strip_root(work, root);
                out.roots.push_back({root, m});
                continue;
            }
            bool found = false;
            for (const Scalar& cand : rational_root_candidates(work)) {
                if (cand.is_zero() || !poly_eval(work, cand).is_zero()) continue;
                std::size_t m = strip_root(work, cand);
                out.roots.push_back({cand, m});
                found = true;
                break;  // candidates recomputed from the shrunken polynomial
            }
            if (!found) break;
        }
    }
    std::sort(out.roots.begin(), out.roots.end(), [](const auto& a, const auto& b) {
        return cmp(a.first.raw(), b.first.raw()) < 0;
    });
    out.residual = poly_monic(work);
    return out;
}

}  // namespace homvb
