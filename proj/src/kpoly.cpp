#include <markoff/kpoly.hpp>

#include <sstream>

namespace markoff {

std::pair<KPoly, KPoly> divmod(const KPoly& a, const KPoly& b) {
  if (b.zero()) throw DomainError("division by zero polynomial");
  if (a.degree() < b.degree()) return {KPoly(), a};
  std::vector<Rational> r = a.coeffs();
  const int db = b.degree();
  const Rational inv_lead = 1 / b.lead();
  std::vector<Rational> q(a.degree() - db + 1);
  for (int i = a.degree(); i >= db; --i) {
    if (is_zero(r[i])) continue;
    Rational c = r[i] * inv_lead;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= c * b[j];
    q[i - db] = c;
  }
  r.resize(db);
  return {KPoly(std::move(q)), KPoly(std::move(r))};
}

KPoly exact_div(const KPoly& a, const KPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.zero()) throw DomainError("polynomial division is not exact");
  return q;
}

bool divides(const KPoly& d, const KPoly& a) {
  if (d.zero()) return a.zero();
  return divmod(a, d).second.zero();
}

bool is_integral(const KPoly& a) {
  for (const auto& c : a.coeffs())
    if (c.get_den() != 1) return false;
  return true;
}

Integer denominator_lcm(const KPoly& a) {
  Integer l = 1;
  for (const auto& c : a.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  return l;
}

Integer integer_content(const KPoly& a) {
  Integer den = denominator_lcm(a), g = 0;
  for (const auto& c : a.coeffs()) {
    Integer v = c.get_num() * (den / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  return g;
}

KPoly primitive_part(const KPoly& a) {
  if (a.zero()) return a;
  Integer den = denominator_lcm(a);
  KPoly s = a * Rational(den);
  Integer g = integer_content(s);
  if (sgn(a.lead()) < 0) g = -g;
  Rational inv(Integer(1), g);
  inv.canonicalize();
  return s * inv;
}

KPoly gcd(const KPoly& a, const KPoly& b) {
  KPoly x = a, y = b;
  while (!y.zero()) {
    KPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.zero()) return x;
  return x * Rational(1 / x.lead());
}

namespace {

Integer content_gcd(Integer g, const KPoly& f) {
  for (int i = 0; i <= f.degree() && g != 1; ++i)
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), f[i].get_num_mpz_t());
  return g;
}

// One extended Euclid run, normalised to clear*g = h1*a + h2*b.
// Works over Z[k] with pseudo-division so no rational arithmetic happens in
// the loop; each step divides out the integer content shared by r, s and t.
XgcdResult euclid(const KPoly& a, const KPoly& b) {
  const Integer da = denominator_lcm(a), db = denominator_lcm(b);
  // Invariants: r0 = s0*A + t0*B, r1 = s1*A + t1*B with A = da*a, B = db*b.
  KPoly r0 = a * Rational(da), r1 = b * Rational(db), s0(1L), s1, t0, t1(1L);
  while (!r1.zero()) {
    const Rational lc = r1.lead();
    const int delta = r0.degree() - r1.degree();
    KPoly r, q;
    if (delta < 0) {
      r = r0;
    } else {
      Integer mult = 1;
      mpz_pow_ui(mult.get_mpz_t(), lc.get_num_mpz_t(), static_cast<unsigned long>(delta + 1));
      auto qr = divmod(r0 * Rational(mult), r1);
      q = std::move(qr.first);
      r = std::move(qr.second);
      s0 *= Rational(mult);
      t0 *= Rational(mult);
    }
    KPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    Integer c = content_gcd(content_gcd(content_gcd(0, r), s2), t2);
    if (c > 1) {
      Rational inv(Integer(1), c);
      r *= inv;
      s2 *= inv;
      t2 *= inv;
    }
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  Integer clear = integer_content(r0);
  KPoly h1 = s0 * Rational(da), h2 = t0 * Rational(db);
  if (sgn(r0.lead()) < 0) {
    r0 = -r0;
    h1 = -h1;
    h2 = -h2;
  }
  Rational inv(Integer(1), clear);
  inv.canonicalize();
  return {r0 * inv, h1, h2, clear};
}

void remove_common_factor(XgcdResult& r) {
  Integer common = r.clear;
  Integer c1 = integer_content(r.h1), c2 = integer_content(r.h2);
  mpz_gcd(common.get_mpz_t(), common.get_mpz_t(), c1.get_mpz_t());
  mpz_gcd(common.get_mpz_t(), common.get_mpz_t(), c2.get_mpz_t());
  if (common == 1) return;
  Rational inv(Integer(1), common);
  r.h1 *= inv;
  r.h2 *= inv;
  r.clear /= common;
}

}  // namespace

XgcdResult kpoly_xgcd(const KPoly& a, const KPoly& b) {
  if (a.zero() && b.zero()) throw DomainError("xgcd of two zero polynomials");
  XgcdResult r = euclid(a, b);
  remove_common_factor(r);
  if (r.clear == 1 || a.zero() || b.zero()) return r;
  // The reversed remainder sequence can reach a smaller multiple of g;
  // merge the two identities with an integer Bezout step.
  XgcdResult s = euclid(b, a);
  std::swap(s.h1, s.h2);
  remove_common_factor(s);
  Integer g, u, v;
  mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), r.clear.get_mpz_t(), s.clear.get_mpz_t());
  if (g == r.clear) return r;
  XgcdResult m{r.g, r.h1 * Rational(u) + s.h1 * Rational(v), r.h2 * Rational(u) + s.h2 * Rational(v), g};
  remove_common_factor(m);
  return m;
}

std::uint64_t eval_mod(const KPoly& a, std::uint64_t t, std::uint64_t p) {
  Integer acc = 0, P = static_cast<unsigned long>(p), T = static_cast<unsigned long>(t);
  for (int i = a.degree(); i >= 0; --i) {
    Integer num = a[i].get_num() % P, den = a[i].get_den() % P;
    if (den == 0) throw DomainError("coefficient denominator vanishes mod p");
    Integer inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t());
    acc = (acc * T + num * inv) % P;
  }
  if (acc < 0) acc += P;
  return acc.get_ui();
}

int root_multiplicity(const KPoly& a, const Rational& r) {
  if (a.zero()) throw DomainError("root multiplicity of zero polynomial");
  KPoly lin(std::vector<Rational>{-r, Rational(1)});
  KPoly cur = a;
  int b = 0;
  for (;;) {
    auto [q, rem] = divmod(cur, lin);
    if (!rem.zero()) return b;
    cur = std::move(q);
    ++b;
  }
}

std::string to_string(const KPoly& a, const std::string& var) {
  if (a.zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = a.degree(); i >= 0; --i) {
    const Rational& c = a[i];
    if (is_zero(c)) continue;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = (mag == 1);
    if (i == 0) {
      os << mag.get_str();
      continue;
    }
    if (!unit) os << mag.get_str() << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

KPoly power(const KPoly& a, unsigned e) { return a.pow(e); }

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace markoff
