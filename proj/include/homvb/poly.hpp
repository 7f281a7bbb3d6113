#pragma once

#include "homvb/linalg.hpp"

namespace homvb {

/// Univariate polynomial with coefficients low degree first and no trailing
/// zeros; the zero polynomial is the empty vector. All coefficients share one
/// field.
using Poly = std::vector<Scalar>;

Poly poly_trim(Poly p);
bool poly_is_zero(const Poly& p);
/// Degree; the zero polynomial reports -1.
long poly_deg(const Poly& p);
Poly poly_constant(const Scalar& c);
/// x - root
Poly poly_linear(const Scalar& root);

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Scalar& c);
/// Quotient and remainder with deg(rem) < deg(b); b must be nonzero.
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
Poly poly_monic(const Poly& a);
/// Monic gcd (zero for gcd(0,0)).
Poly poly_gcd(const Poly& a, const Poly& b);
/// (g, u, v) with u*a + v*b = g and g = poly_gcd(a, b).
std::tuple<Poly, Poly, Poly> poly_extended_gcd(const Poly& a, const Poly& b);

Scalar poly_eval(const Poly& p, const Scalar& x);
Matrix poly_eval_matrix(const Poly& p, const Matrix& m);
Poly poly_derivative(const Poly& p);
std::string poly_str(const Poly& p, const std::string& var = "x");

/// Roots of p lying in its coefficient field, each with multiplicity, plus
/// the rootless cofactor: p = lead * prod (x - root_i)^mult_i * residual.
/// Over the rationals the search combines a small-integer scan with the
/// rational root theorem (divisor enumeration of the primitive form); over
/// F_p all residues are scanned (p capped to keep the scan cheap).
struct RootSplit {
    std::vector<std::pair<Scalar, std::size_t>> roots;  // (root, multiplicity)
    Poly residual;                                      // monic, no roots in the field
    Scalar lead;
};
RootSplit field_roots(const Poly& p);

}  // namespace homvb
