#ifndef MARKOFF_CYCLO_HPP
#define MARKOFF_CYCLO_HPP

#include <markoff/kpoly.hpp>

#include <string>
#include <vector>

namespace markoff {

// Euler's totient.
long euler_phi(long m);

std::vector<long> divisors(long m);

// The m-th cyclotomic polynomial, computed by exact division of t^m - 1
// by the cyclotomic polynomials of the proper divisors of m.
KPoly cyclotomic_poly(long m);

// Minimal polynomial of 2cos(2*pi/o), i.e. of zeta + 1/zeta for zeta of
// exact multiplicative order o.  Degree phi(o)/2 for o >= 3.
KPoly trace_order_poly(long o);

/*
 * Element of Q(zeta_m), stored as a residue modulo the m-th cyclotomic
 * polynomial.  Coordinate i multiplies zeta^i.
 */
class CycloElem {
 public:
  CycloElem() : c_(1) {}
  CycloElem(long c) : c_(1, Rational(c)) {}  // untyped scalar
  CycloElem(long m, const Rational& c);
  CycloElem(long m, std::vector<Rational> coords);

  // zeta^k for the fixed primitive m-th root zeta.
  static CycloElem zeta(long m, long k);

  long conductor() const { return m_; }
  const std::vector<Rational>& coords() const { return c_; }
  bool zero() const;

  CycloElem& operator+=(const CycloElem& o);
  CycloElem& operator-=(const CycloElem& o);
  friend CycloElem operator+(CycloElem a, const CycloElem& b) { return a += b; }
  friend CycloElem operator-(CycloElem a, const CycloElem& b) { return a -= b; }
  friend CycloElem operator-(const CycloElem& a);
  friend CycloElem operator*(const CycloElem& a, const CycloElem& b);
  friend CycloElem operator*(const CycloElem& a, const Rational& s);
  friend bool operator==(const CycloElem& a, const CycloElem& b);
  friend bool operator!=(const CycloElem& a, const CycloElem& b) { return !(a == b); }

  CycloElem pow(unsigned e) const;
  // Inverse via the extended Euclidean algorithm against the modulus.
  CycloElem inv() const;
  std::string to_string() const;

 private:
  void reduce(std::vector<Rational> raw);
  long m_ = 0;
  std::vector<Rational> c_;
};

inline bool is_zero(const CycloElem& z) { return z.zero(); }
inline CycloElem div_small(const CycloElem& z, long k) { return z * (Rational(1) / k); }

// Evaluates a rational polynomial at a cyclotomic element.
CycloElem eval_at(const KPoly& f, const CycloElem& z);

}  // namespace markoff

#endif
