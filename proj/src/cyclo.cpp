#include <markoff/cyclo.hpp>

#include <map>
#include <mutex>
#include <sstream>

namespace markoff {

long euler_phi(long m) {
  long r = m;
  for (long q = 2; q * q <= m; ++q) {
    if (m % q) continue;
    while (m % q == 0) m /= q;
    r -= r / q;
  }
  if (m > 1) r -= r / m;
  return r;
}

std::vector<long> divisors(long m) {
  std::vector<long> lo, hi;
  for (long d = 1; d * d <= m; ++d) {
    if (m % d) continue;
    lo.push_back(d);
    if (d != m / d) hi.push_back(m / d);
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

KPoly cyclotomic_poly(long m) {
  if (m < 1) throw DomainError("cyclotomic polynomial needs m >= 1");
  static std::mutex mu;
  static std::map<long, KPoly> cache;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  KPoly num = KPoly::monomial(Rational(1), static_cast<int>(m)) - KPoly(1L);
  for (long d : divisors(m))
    if (d != m) num = exact_div(num, cyclotomic_poly(d));
  std::lock_guard<std::mutex> lk(mu);
  cache.emplace(m, num);
  return num;
}

KPoly trace_order_poly(long o) {
  if (o < 1) throw DomainError("order must be positive");
  if (o == 1) return KPoly(std::vector<Rational>{-2, 1});
  if (o == 2) return KPoly(std::vector<Rational>{2, 1});
  KPoly cyc = cyclotomic_poly(o);
  const int k = cyc.degree() / 2;
  // Laurent coefficients of t^{-k} * cyc, indexed by exponent + k.
  std::vector<Rational> lau = cyc.coeffs();
  std::vector<Rational> out(k + 1);
  for (int j = k; j >= 0; --j) {
    Rational a = lau[j + k];
    out[j] = a;
    if (is_zero(a)) continue;
    // subtract a*(t + 1/t)^j
    for (int i = 0; i <= j; ++i) lau[k + j - 2 * i] -= a * Rational(binomial(j, i));
  }
  return KPoly(std::move(out));
}

namespace {

const KPoly& modulus_for(long m) {
  static std::mutex mu;
  static std::map<long, KPoly> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, cyclotomic_poly(m)).first;
  return it->second;
}

long unify(long a, long b) {
  if (a == 0) return b;
  if (b == 0 || a == b) return a;
  throw DomainError("mixed cyclotomic conductors");
}

}  // namespace

CycloElem::CycloElem(long m, const Rational& c) : m_(m) {
  c_.assign(m > 0 ? euler_phi(m) : 1, Rational(0));
  c_[0] = c;
}

CycloElem::CycloElem(long m, std::vector<Rational> coords) : m_(m) { reduce(std::move(coords)); }

CycloElem CycloElem::zeta(long m, long k) {
  k %= m;
  if (k < 0) k += m;
  std::vector<Rational> raw(k + 1);
  raw[k] = 1;
  return CycloElem(m, std::move(raw));
}

bool CycloElem::zero() const {
  for (const auto& c : c_)
    if (!is_zero(c)) return false;
  return true;
}

void CycloElem::reduce(std::vector<Rational> raw) {
  if (m_ == 0) {
    c_.assign(1, raw.empty() ? Rational(0) : raw[0]);
    return;
  }
  const KPoly& mod = modulus_for(m_);
  const int n = mod.degree();
  for (int i = static_cast<int>(raw.size()) - 1; i >= n; --i) {
    if (is_zero(raw[i])) continue;
    Rational c = raw[i];
    for (int j = 0; j <= n; ++j) raw[i - n + j] -= c * mod[j];
  }
  raw.resize(n);
  c_ = std::move(raw);
}

CycloElem& CycloElem::operator+=(const CycloElem& o) {
  long m = unify(m_, o.m_);
  if (m != m_) *this = CycloElem(m, c_.empty() ? Rational(0) : c_[0]);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycloElem& CycloElem::operator-=(const CycloElem& o) {
  long m = unify(m_, o.m_);
  if (m != m_) *this = CycloElem(m, c_.empty() ? Rational(0) : c_[0]);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CycloElem operator-(const CycloElem& a) {
  CycloElem r = a;
  for (auto& c : r.c_) c = -c;
  return r;
}

CycloElem operator*(const CycloElem& a, const CycloElem& b) {
  long m = unify(a.m_, b.m_);
  if (a.c_.empty() || b.c_.empty()) return CycloElem(m, Rational(0));
  std::vector<Rational> raw(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (is_zero(a.c_[i])) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) raw[i + j] += a.c_[i] * b.c_[j];
  }
  return CycloElem(m, std::move(raw));
}

CycloElem operator*(const CycloElem& a, const Rational& s) {
  CycloElem r = a;
  for (auto& c : r.c_) c *= s;
  return r;
}

bool operator==(const CycloElem& a, const CycloElem& b) { return (a - b).zero(); }

CycloElem CycloElem::pow(unsigned e) const {
  CycloElem base = *this, r(m_, Rational(1));
  while (e) {
    if (e & 1u) r = r * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return r;
}

CycloElem CycloElem::inv() const {
  if (zero()) throw DomainError("inverse of zero");
  if (m_ == 0) return CycloElem(0, Rational(1 / c_[0]));
  // r0 = s0*a mod Phi, r1 = s1*a mod Phi; run Euclid until the remainder is constant.
  KPoly r0 = modulus_for(m_), r1(c_), s0, s1(1L);
  while (r1.degree() > 0) {
    auto [q, r] = divmod(r0, r1);
    KPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r1.zero()) throw DomainError("element is not invertible");
  return CycloElem(m_, (s1 * Rational(1 / r1[0])).coeffs());
}

std::string CycloElem::to_string() const {
  return markoff::to_string(KPoly(c_), "z");
}

CycloElem eval_at(const KPoly& f, const CycloElem& z) {
  CycloElem acc(z.conductor(), Rational(0));
  for (int i = f.degree(); i >= 0; --i) acc = acc * z + CycloElem(z.conductor(), f[i]);
  return acc;
}

}  // namespace markoff
