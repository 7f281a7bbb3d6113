#include "doctest.h"
#include "homvb/poly.hpp"

#include <random>

using namespace homvb;

namespace {

const Field Q = Field::rationals();

Poly ipoly(const std::vector<long>& coeffs) {
    Poly p;
    for (long c : coeffs) p.push_back(Scalar::from_long(c, Q));
    return poly_trim(std::move(p));
}

Poly random_poly(std::mt19937_64& rng, std::size_t max_deg) {
    Poly p;
    std::size_t d = rng() % (max_deg + 1);
    for (std::size_t i = 0; i <= d; ++i)
        p.push_back(Scalar::from_long(static_cast<long>(rng() % 11) - 5, Q));
    return poly_trim(std::move(p));
}

}  // namespace

TEST_CASE("polynomial ring basics") {
    Poly a = ipoly({1, 2, 1});   // (x+1)^2
    Poly b = ipoly({-1, 1});     // x-1
    CHECK(poly_deg(a) == 2);
    CHECK(poly_deg(Poly{}) == -1);
    CHECK(poly_mul(b, ipoly({1, 1})) == ipoly({-1, 0, 1}));
    CHECK(poly_add(a, poly_scale(a, Scalar::from_long(-1, Q))).empty());
    CHECK(poly_sub(a, a).empty());
    CHECK(poly_str(ipoly({2, 0, 1})) == "x^2 + 2");
    CHECK(poly_str(ipoly({0, -3, 0, 1})) == "x^3 + -3*x");
    CHECK(poly_str(Poly{}) == "0");
}

TEST_CASE("division, gcd, bezout") {
    Poly a = poly_mul(ipoly({-1, 1}), ipoly({-2, 1}));  // (x-1)(x-2)
    auto [q, r] = poly_divmod(a, ipoly({-1, 1}));
    CHECK(q == ipoly({-2, 1}));
    CHECK(r.empty());

    auto [q2, r2] = poly_divmod(ipoly({1, 0, 1}), ipoly({1, 1}));  // x^2+1 = (x-1)(x+1) + 2
    CHECK(q2 == ipoly({-1, 1}));
    CHECK(r2 == ipoly({2}));

    CHECK(poly_gcd(a, ipoly({-1, 1})) == ipoly({-1, 1}));
    CHECK(poly_gcd(ipoly({1, 0, 1}), ipoly({-1, 1})) == ipoly({1}));

    std::mt19937_64 rng(23);
    for (int t = 0; t < 40; ++t) {
        Poly x = random_poly(rng, 4), y = random_poly(rng, 4);
        if (poly_is_zero(x) && poly_is_zero(y)) continue;
        auto [g, u, v] = poly_extended_gcd(x, y);
        CHECK(poly_add(poly_mul(u, x), poly_mul(v, y)) == g);
        CHECK(g == poly_gcd(x, y));
        if (!poly_is_zero(x)) CHECK(poly_divmod(x, g).second.empty());
        if (!poly_is_zero(y)) CHECK(poly_divmod(y, g).second.empty());
    }
}

TEST_CASE("evaluation at scalars and matrices") {
    Poly p = ipoly({2, -3, 1});  // (x-1)(x-2)
    CHECK(poly_eval(p, Scalar::one(Q)).is_zero());
    CHECK(poly_eval(p, Scalar::from_long(3, Q)) == Scalar::from_long(2, Q));
    CHECK(poly_eval(p, Scalar::rational(1, 2)) == Scalar::rational(3, 4));

    Matrix d(2, 2, Q);
    d.set(0, 0, Scalar::one(Q));
    d.set(1, 1, Scalar::from_long(2, Q));
    CHECK(poly_eval_matrix(p, d).is_zero());
    CHECK(poly_eval_matrix(min_poly(d), d).is_zero());

    CHECK(poly_derivative(p) == ipoly({-3, 2}));
    CHECK(poly_derivative(ipoly({7})).empty());
}

TEST_CASE("field_roots over the rationals") {
    // 2 * x * (x-1)^2 * (x + 3/2)
    Poly p = poly_scale(
        poly_mul(poly_mul(ipoly({0, 1}), poly_mul(ipoly({-1, 1}), ipoly({-1, 1}))),
                 Poly{Scalar::rational(3, 2), Scalar::one(Q)}),
        Scalar::from_long(2, Q));
    RootSplit rs = field_roots(p);
    CHECK(rs.lead == Scalar::from_long(2, Q));
    REQUIRE(rs.roots.size() == 3);
    CHECK(rs.roots[0].first == Scalar::rational(-3, 2));
    CHECK(rs.roots[0].second == 1);
    CHECK(rs.roots[1].first.is_zero());
    CHECK(rs.roots[1].second == 1);
    CHECK(rs.roots[2].first.is_one());
    CHECK(rs.roots[2].second == 2);
    CHECK(poly_is_zero(poly_sub(rs.residual, ipoly({1}))));

    // irreducible quadratic left as residual
    RootSplit rs2 = field_roots(poly_mul(ipoly({1, 0, 1}), ipoly({-2, 1})));
    REQUIRE(rs2.roots.size() == 1);
    CHECK(rs2.roots[0].first == Scalar::from_long(2, Q));
    CHECK(rs2.residual == ipoly({1, 0, 1}));

    // large root via the degree-1 fallback
    RootSplit rs3 = field_roots(ipoly({-1000003, 1}));
    REQUIRE(rs3.roots.size() == 1);
    CHECK(rs3.roots[0].first == Scalar::from_long(1000003, Q));
}

TEST_CASE("field_roots over a prime field") {
    Field F7 = Field::prime(7);
    // x^2 - 2 has roots 3 and 4 mod 7
    Poly p = {Scalar::residue(-2, 7), Scalar::zero(F7), Scalar::one(F7)};
    RootSplit rs = field_roots(p);
    REQUIRE(rs.roots.size() == 2);
    CHECK(rs.roots[0].first == Scalar::residue(3, 7));
    CHECK(rs.roots[1].first == Scalar::residue(4, 7));
    CHECK(poly_deg(rs.residual) == 0);
}
