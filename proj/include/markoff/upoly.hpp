#ifndef MARKOFF_UPOLY_HPP
#define MARKOFF_UPOLY_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace markoff {

using Integer = mpz_class;
using Rational = mpq_class;

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const Integer& z) { return sgn(z) == 0; }

inline Rational div_small(const Rational& q, long k) { return q / Rational(k); }

/*
 * Dense univariate polynomial over a coefficient type C.
 *
 * C must be default constructible as zero, constructible from long,
 * closed under + - *, comparable with ==, and have an is_zero()
 * overload found by argument-dependent lookup.
 *
 * Coefficient i multiplies t^i.  Trailing zeros are always trimmed,
 * so the zero polynomial has an empty coefficient vector and degree -1.
 */
template <class C>
class UPoly {
 public:
  using coeff_type = C;

  UPoly() = default;
  UPoly(long c) {
    C v(c);
    if (!is_zero(v)) c_.push_back(std::move(v));
  }
  UPoly(const C& c) {
    if (!is_zero(c)) c_.push_back(c);
  }
  explicit UPoly(std::vector<C> cs) : c_(std::move(cs)) { trim(); }

  static UPoly monomial(const C& c, int k) {
    if (is_zero(c)) return UPoly();
    std::vector<C> v(static_cast<std::size_t>(k) + 1);
    v[k] = c;
    return UPoly(std::move(v));
  }
  static UPoly var() { return monomial(C(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }

  C coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return C();
    return c_[i];
  }
  const C& operator[](std::size_t i) const { return c_[i]; }
  const std::vector<C>& coeffs() const { return c_; }
  const C& lead() const {
    if (c_.empty()) throw DomainError("leading coefficient of zero polynomial");
    return c_.back();
  }

  // Adds c*t^k in place.
  void add_term(const C& c, int k) {
    if (is_zero(c)) return;
    if (static_cast<int>(c_.size()) <= k) c_.resize(k + 1);
    c_[k] += c;
    trim();
  }

  UPoly& operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator*=(const UPoly& o) {
    *this = *this * o;
    return *this;
  }
  UPoly& operator*=(const C& s) {
    if (is_zero(s)) {
      c_.clear();
      return *this;
    }
    for (auto& x : c_) x *= s;
    trim();
    return *this;
  }

  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator-(UPoly a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.zero() || b.zero()) return UPoly();
    std::vector<C> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(r));
  }
  friend UPoly operator*(UPoly a, const C& s) { return a *= s; }
  friend UPoly operator*(const C& s, UPoly a) { return a *= s; }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  // Horner evaluation at a point of any algebra D that accepts C.
  template <class D>
  D eval(const D& t) const {
    D acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + D(*it);
    return acc;
  }

  UPoly pow(unsigned e) const {
    UPoly base = *this, r(1L);
    while (e) {
      if (e & 1u) r *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return r;
  }

  // p(t) -> p(t^k)
  UPoly inflate(int k) const {
    if (zero()) return UPoly();
    std::vector<C> v(static_cast<std::size_t>(degree()) * k + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) v[i * k] = c_[i];
    return UPoly(std::move(v));
  }

  // Inverse of inflate; throws when some exponent is not a multiple of k.
  UPoly deflate(int k) const {
    std::vector<C> v(c_.size() / k + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (is_zero(c_[i])) continue;
      if (i % k != 0) throw DomainError("polynomial is not a polynomial in t^k");
      v[i / k] = c_[i];
    }
    return UPoly(std::move(v));
  }

  template <class F>
  auto map(F&& f) const {
    using D = decltype(f(std::declval<const C&>()));
    std::vector<D> v;
    v.reserve(c_.size());
    for (const auto& x : c_) v.push_back(f(x));
    return UPoly<D>(std::move(v));
  }

 private:
  void trim() {
    while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
  }
  std::vector<C> c_;
};

template <class C>
bool is_zero(const UPoly<C>& p) {
  return p.zero();
}

template <class C>
UPoly<C> div_small(const UPoly<C>& p, long k) {
  return p.map([k](const C& c) { return div_small(c, k); });
}

}  // namespace markoff

#endif
