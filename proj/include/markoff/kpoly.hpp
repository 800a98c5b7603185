#ifndef MARKOFF_KPOLY_HPP
#define MARKOFF_KPOLY_HPP

#include <markoff/upoly.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace markoff {

// Polynomials over the rationals.  The variable is usually the Markoff
// parameter k, but the same type carries polynomials in x or in an
// abstract variable t.
using KPoly = UPoly<Rational>;

inline KPoly kappa() { return KPoly::var(); }

// Quotient and remainder over Q.  Throws on a zero divisor.
std::pair<KPoly, KPoly> divmod(const KPoly& a, const KPoly& b);

// a / b, throwing unless the division is exact.
KPoly exact_div(const KPoly& a, const KPoly& b);

bool divides(const KPoly& d, const KPoly& a);

bool is_integral(const KPoly& a);

// Least common multiple of coefficient denominators (1 for the zero polynomial).
Integer denominator_lcm(const KPoly& a);

// gcd of the numerators once a is scaled to integer coefficients; for an
// integral polynomial this is the usual content.
Integer integer_content(const KPoly& a);

// Integral, content 1, positive leading coefficient.  Zero stays zero.
KPoly primitive_part(const KPoly& a);

// Monic gcd over Q; gcd(0,0) = 0.
KPoly gcd(const KPoly& a, const KPoly& b);

struct XgcdResult {
  KPoly g;
  KPoly h1;
  KPoly h2;
  Integer clear;
};

// clear*g = h1*a + h2*b with g primitive (positive leading coefficient)
// generating (a,b) over Q, h1 and h2 integral, and gcd(h1, h2, clear) = 1.
XgcdResult kpoly_xgcd(const KPoly& a, const KPoly& b);

std::uint64_t eval_mod(const KPoly& a, std::uint64_t t, std::uint64_t p);

// Largest b with (t - r)^b | a, where a != 0.
int root_multiplicity(const KPoly& a, const Rational& r);

std::string to_string(const KPoly& a, const std::string& var = "k");

KPoly power(const KPoly& a, unsigned e);

Integer binomial(long n, long k);

}  // namespace markoff

#endif
