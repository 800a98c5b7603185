#ifndef MARKOFF_REDUCE_HPP
#define MARKOFF_REDUCE_HPP

#include <markoff/tripoly.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

namespace markoff {

namespace detail {

inline std::uint64_t pack(int a, int b, int c) {
  return (static_cast<std::uint64_t>(a) << 42) | (static_cast<std::uint64_t>(b) << 21) | static_cast<std::uint64_t>(c);
}
inline Exponent unpack(std::uint64_t k) {
  constexpr std::uint64_t mask = (1ull << 21) - 1;
  return {static_cast<int>(k >> 42), static_cast<int>((k >> 21) & mask), static_cast<int>(k & mask)};
}

inline Exponent sorted_desc(int a, int b, int c) {
  if (a < b) std::swap(a, b);
  if (b < c) std::swap(b, c);
  if (a < b) std::swap(a, b);
  return {a, b, c};
}

// Terms bucketed by total degree, processed from the top down.  Every
// rewriting step strictly lowers the total degree, so one sweep suffices.
template <class C>
class Worklist {
 public:
  void add(const C& c, const Exponent& e) {
    if (is_zero(c)) return;
    const int d = e[0] + e[1] + e[2];
    if (d >= static_cast<int>(buckets_.size())) buckets_.resize(d + 1);
    auto& slot = buckets_[d][pack(e[0], e[1], e[2])];
    slot += c;
  }
  int top() const { return static_cast<int>(buckets_.size()) - 1; }

  // Removes and returns the bucket of total degree d in a fixed order.
  std::vector<std::pair<Exponent, C>> take(int d) {
    std::vector<std::pair<std::uint64_t, C>> raw;
    raw.reserve(buckets_[d].size());
    for (auto& kv : buckets_[d])
      if (!is_zero(kv.second)) raw.emplace_back(kv.first, std::move(kv.second));
    buckets_[d].clear();
    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<std::pair<Exponent, C>> out;
    out.reserve(raw.size());
    for (auto& [k, c] : raw) out.emplace_back(unpack(k), std::move(c));
    return out;
  }

 private:
  std::vector<std::unordered_map<std::uint64_t, C>> buckets_;
};

}  // namespace detail

/*
 * The reduction Phi.  Each monomial x^l y^m z^n is rewritten by the single
 * operation prescribed for it:
 *   l, m, n > 0            rho:   x^{l-1}y^{m-1}z^{n-1}(x^2+y^2+z^2-k)
 *   exactly two positive   sigma: replace the pair by 2*(...)*w for the absent w
 *   one variable           tau:   rename to x
 * Phi commutes with coordinate permutations, so terms are tracked by their
 * sorted exponent triple.
 */
template <class C>
UPoly<C> phi(const TriPoly<C>& f, const C& kappa) {
  detail::Worklist<C> wl;
  for (const auto& [e, c] : f.terms()) wl.add(c, detail::sorted_desc(e[0], e[1], e[2]));
  std::vector<C> out;
  const C two(2);
  for (int d = wl.top(); d >= 0; --d) {
    for (auto& [e, c] : wl.take(d)) {
      const int a = e[0], b = e[1], cc = e[2];
      if (b == 0) {
        if (static_cast<int>(out.size()) <= a) out.resize(a + 1);
        out[a] += c;
      } else if (cc == 0) {
        wl.add(c * two, detail::sorted_desc(a - 1, b - 1, 1));
      } else {
        wl.add(c, detail::sorted_desc(a + 1, b - 1, cc - 1));
        wl.add(c, detail::sorted_desc(a - 1, b + 1, cc - 1));
        wl.add(c, detail::sorted_desc(a - 1, b - 1, cc + 1));
        wl.add(-(c * kappa), detail::sorted_desc(a - 1, b - 1, cc - 1));
      }
    }
  }
  return UPoly<C>(std::move(out));
}

template <class C>
struct PhiXResult {
  UPoly<C> xpart;
  TriPoly<C> yzpart;
};

/*
 * The first-coordinate reduction Phi_x, restricted to rho, sigma_y, sigma_z
 * and the y<->z swap.  Pure y,z monomials are kept with y-degree >= z-degree;
 * pure powers of x (including constants) go to xpart.
 */
template <class C>
PhiXResult<C> phi_x(const TriPoly<C>& f, const C& kappa) {
  auto canon = [](int l, int m, int n) { return Exponent{l, std::max(m, n), std::min(m, n)}; };
  detail::Worklist<C> wl;
  for (const auto& [e, c] : f.terms()) wl.add(c, canon(e[0], e[1], e[2]));
  PhiXResult<C> r;
  std::vector<C> xs;
  const C two(2);
  for (int d = wl.top(); d >= 0; --d) {
    for (auto& [e, c] : wl.take(d)) {
      const int l = e[0], m = e[1], n = e[2];
      if (m == 0) {
        if (static_cast<int>(xs.size()) <= l) xs.resize(l + 1);
        xs[l] += c;
      } else if (l == 0) {
        r.yzpart.add_term(c, 0, m, n);
      } else if (n == 0) {
        wl.add(c * two, canon(l - 1, m - 1, 1));
      } else {
        wl.add(c, canon(l + 1, m - 1, n - 1));
        wl.add(c, canon(l - 1, m + 1, n - 1));
        wl.add(c, canon(l - 1, m - 1, n + 1));
        wl.add(-(c * kappa), canon(l - 1, m - 1, n - 1));
      }
    }
  }
  r.xpart = UPoly<C>(std::move(xs));
  return r;
}

template <class C>
TriPoly<C> to_tripoly(const PhiXResult<C>& r) {
  return TriPoly<C>::from_x(r.xpart) + r.yzpart;
}

/*
 * Canonical form f* = (f(x,y,z) + f(x,y,xy-z))/2.  Powers of z are first
 * folded with z^2 = xyz - x^2 - y^2 + k into P(x,y) + Q(x,y) z, after which
 * the average is P + xyQ/2.
 */
template <class C>
TriPoly<C> canonical_form(const TriPoly<C>& f, const C& kappa) {
  using T = TriPoly<C>;
  int top = 0;
  for (const auto& [e, c] : f.terms()) top = std::max(top, e[2]);
  const T z2_const = T::monomial(C(-1), 2, 0, 0) + T::monomial(C(-1), 0, 2, 0) + T(kappa);
  const T xy = T::monomial(C(1), 1, 1, 0);
  std::vector<T> P(top + 1), Q(top + 1);
  P[0] = T(C(1));
  if (top >= 1) Q[1] = T(C(1));
  for (int i = 1; i < top; ++i) {
    // z^{i+1} = P z + Q z^2 = Q*(k - x^2 - y^2) + (P + xy Q) z
    P[i + 1] = Q[i] * z2_const;
    Q[i + 1] = P[i] + xy * Q[i];
  }
  const C half = div_small(C(1) + (kappa - kappa), 2);
  T out;
  for (const auto& [e, c] : f.terms()) {
    T head = T::monomial(c, e[0], e[1], 0);
    out += head * P[e[2]];
    if (!Q[e[2]].zero()) out += head * xy * Q[e[2]] * half;
  }
  return out;
}

// Inverse in the coefficient ring, for the few places that divide.
inline Rational ring_inverse(const Rational& q) { return 1 / q; }
inline Fp ring_inverse(const Fp& a) { return a.inv(); }
inline KPoly ring_inverse(const KPoly& a) {
  if (a.degree() != 0) throw DomainError("only constants are invertible in Q[k]");
  return KPoly(Rational(1 / a[0]));
}

/*
 * c_{lambda,n}(f) from the canonical form f* = sum_j f_j(x^2) y^{2j}:
 *   c_n = sum_{j>=n} binom(2j, j-n) ((L-k)/(L-4))^{j-n} f_j(L)   (L != k)
 *   c_n = f_n(L)                                                  (L == k)
 * with L = lambda^2, returning c_0 for n = 0 and n*c_n for n > 0.
 */
template <class C>
C c_coeff(const TriPoly<C>& f, const C& lambda_sq, int n, const C& kappa) {
  if (!f.is_even()) throw DomainError("c_coeff needs an even polynomial");
  TriPoly<C> fs = canonical_form(f, kappa);
  std::map<int, UPoly<C>> parts;  // j -> f_j in the variable x^2
  for (const auto& [e, c] : fs.terms()) {
    if (e[0] % 2 || e[1] % 2) throw DomainError("canonical form is not even");
    parts[e[1] / 2].add_term(c, e[0] / 2);
  }
  C cn{};
  if (lambda_sq == kappa) {
    auto it = parts.find(n);
    if (it != parts.end()) cn = it->second.eval(lambda_sq);
  } else {
    const C ratio = (lambda_sq - kappa) * ring_inverse(C(lambda_sq - C(4)));
    for (const auto& [j, fj] : parts) {
      if (j < n) continue;
      C w = C(binomial(2 * j, j - n).get_si());
      for (int i = 0; i < j - n; ++i) w = w * ratio;
      cn += w * fj.eval(lambda_sq);
    }
  }
  return n == 0 ? cn : cn * C(n);
}

// Table of Phi(x^{2m} y^{2n}) over Z[k], safe for concurrent readers.
class ReductionCache {
 public:
  static constexpr int kVersion = 1;

  void build(int m_max, int n_max);
  // Looks up or computes (and stores) Phi(x^{2m}y^{2n}).
  UPoly<ZPoly> get(int m, int n);
  bool contains(int m, int n) const;
  void insert(int m, int n, UPoly<ZPoly> v);
  std::size_t size() const;
  std::map<std::pair<int, int>, UPoly<ZPoly>> snapshot() const;

  // Phi of an even polynomial in x and y via the table; other monomials are
  // reduced directly.
  UPoly<KPoly> phi(const SymPoly& f);

 private:
  mutable std::shared_mutex mu_;
  std::map<std::pair<int, int>, UPoly<ZPoly>> table_;
};

UPoly<ZPoly> phi_monomial_z(int a, int b, int c);

}  // namespace markoff

#endif
