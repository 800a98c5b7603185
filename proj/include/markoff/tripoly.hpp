#ifndef MARKOFF_TRIPOLY_HPP
#define MARKOFF_TRIPOLY_HPP

#include <markoff/ffield.hpp>
#include <markoff/kpoly.hpp>

#include <array>
#include <map>
#include <string>
#include <utility>

namespace markoff {

using Exponent = std::array<int, 3>;

// Graded lexicographic order on exponent triples: total degree first.
struct GradedLex {
  bool operator()(const Exponent& a, const Exponent& b) const {
    int da = a[0] + a[1] + a[2], db = b[0] + b[1] + b[2];
    if (da != db) return da < db;
    return a < b;
  }
};

/*
 * Sparse polynomial in x, y, z.  The coefficient ring is a template
 * parameter: KPoly for a symbolic Markoff parameter, Fp for a fixed one,
 * Integer for integral symbolic work via UPoly<Integer>, and so on.
 */
template <class C>
class TriPoly {
 public:
  using Terms = std::map<Exponent, C, GradedLex>;

  TriPoly() = default;
  TriPoly(const C& c) { add_term(c, 0, 0, 0); }

  static TriPoly monomial(const C& c, int a, int b, int d) {
    TriPoly r;
    r.add_term(c, a, b, d);
    return r;
  }
  static TriPoly x() { return monomial(C(1), 1, 0, 0); }
  static TriPoly y() { return monomial(C(1), 0, 1, 0); }
  static TriPoly z() { return monomial(C(1), 0, 0, 1); }

  void add_term(const C& c, int a, int b, int d) {
    if (is_zero(c)) return;
    Exponent e{a, b, d};
    auto it = t_.find(e);
    if (it == t_.end()) {
      t_.emplace(e, c);
      return;
    }
    it->second += c;
    if (is_zero(it->second)) t_.erase(it);
  }

  const Terms& terms() const { return t_; }
  bool zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }

  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : t_) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
  }

  TriPoly& operator+=(const TriPoly& o) {
    for (const auto& [e, c] : o.t_) add_term(c, e[0], e[1], e[2]);
    return *this;
  }
  TriPoly& operator-=(const TriPoly& o) {
    for (const auto& [e, c] : o.t_) add_term(-c, e[0], e[1], e[2]);
    return *this;
  }
  friend TriPoly operator+(TriPoly a, const TriPoly& b) { return a += b; }
  friend TriPoly operator-(TriPoly a, const TriPoly& b) { return a -= b; }
  friend TriPoly operator-(const TriPoly& a) {
    TriPoly r;
    for (const auto& [e, c] : a.t_) r.t_.emplace(e, -c);
    return r;
  }
  friend TriPoly operator*(const TriPoly& a, const TriPoly& b) {
    TriPoly r;
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) r.add_term(ca * cb, ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]);
    return r;
  }
  friend TriPoly operator*(const TriPoly& a, const C& s) {
    TriPoly r;
    if (is_zero(s)) return r;
    for (const auto& [e, c] : a.t_) r.add_term(c * s, e[0], e[1], e[2]);
    return r;
  }
  friend bool operator==(const TriPoly& a, const TriPoly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const TriPoly& a, const TriPoly& b) { return !(a == b); }

  TriPoly pow(unsigned e) const {
    TriPoly r(C(1)), base = *this;
    while (e) {
      if (e & 1u) r = r * base;
      e >>= 1u;
      if (e) base = base * base;
    }
    return r;
  }

  // Every exponent even.
  bool is_even() const {
    for (const auto& [e, c] : t_)
      if (e[0] % 2 || e[1] % 2 || e[2] % 2) return false;
    return true;
  }

  template <class F>
  auto map(F&& f) const {
    using D = decltype(f(std::declval<const C&>()));
    TriPoly<D> r;
    for (const auto& [e, c] : t_) r.add_term(f(c), e[0], e[1], e[2]);
    return r;
  }

  // Evaluation at a point of any algebra D that accepts C.
  template <class D>
  D eval(const D& x, const D& y, const D& z) const {
    D acc{};
    for (const auto& [e, c] : t_) {
      D term = D(c);
      for (int i = 0; i < e[0]; ++i) term = term * x;
      for (int i = 0; i < e[1]; ++i) term = term * y;
      for (int i = 0; i < e[2]; ++i) term = term * z;
      acc = acc + term;
    }
    return acc;
  }

  // Embeds a univariate polynomial in x.
  static TriPoly from_x(const UPoly<C>& u) {
    TriPoly r;
    for (int i = 0; i <= u.degree(); ++i) r.add_term(u[i], i, 0, 0);
    return r;
  }
  // Embeds g(x^2) given the coefficients of g.
  static TriPoly from_x2(const UPoly<C>& u) {
    TriPoly r;
    for (int i = 0; i <= u.degree(); ++i) r.add_term(u[i], 2 * i, 0, 0);
    return r;
  }

 private:
  Terms t_;
};

template <class C>
bool is_zero(const TriPoly<C>& f) {
  return f.zero();
}

using SymPoly = TriPoly<KPoly>;   // coefficients in Q[k]
using ModPoly = TriPoly<Fp>;      // coefficients in F_p, k fixed
using ZPoly = UPoly<Integer>;     // integral polynomials in k

// Parses terms like "c*x^a*y^b*z^c" joined by + and -, where c is an integer
// or a fraction and the letter k denotes the Markoff parameter.
SymPoly parse_poly(const std::string& text);

// "x^4 - 3*x^2", "2*x^4 + (24 - 2*k)*x^2 - 8*k".
std::string to_string(const UPoly<KPoly>& f, const std::string& var = "x");
std::string to_string(const SymPoly& f);
std::string to_string(const UPoly<Fp>& f, const std::string& var = "x");

// Specialises k to a rational value, keeping KPoly coefficients.
SymPoly specialize(const SymPoly& f, const Rational& k);
UPoly<KPoly> specialize(const UPoly<KPoly>& f, const Rational& k);

// Reduction mod p with k fixed.  Denominators must be prime to p.
ModPoly reduce_mod(const SymPoly& f, std::uint64_t p, std::uint64_t k);
UPoly<Fp> reduce_mod(const UPoly<KPoly>& f, std::uint64_t p, std::uint64_t k);

// Integral version: multiplies by the common denominator, which is returned.
std::pair<TriPoly<ZPoly>, Integer> integralize(const SymPoly& f);
KPoly to_kpoly(const ZPoly& z);
ZPoly to_zpoly(const KPoly& q);  // requires integral input

}  // namespace markoff

#endif
