#include <markoff/spectral.hpp>

#include <markoff/chebyshev.hpp>

#include <map>
#include <mutex>
#include <numeric>

namespace markoff {

namespace {

Rational binom_q(long n, long k) { return Rational(binomial(n, k)); }

// binom(a, 0) = 1 for every a, otherwise the usual convention.
Rational binom_tail(long top, long k) { return k == 0 ? Rational(1) : binom_q(top, k); }

Rational frac(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

Rational pow2(long e) {
  Rational r(1);
  mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e < 0 ? 0 : e));
  mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(e < 0 ? -e : 0));
  return r;
}

KPoly lin(const Rational& c0, const Rational& c1) { return KPoly(std::vector<Rational>{c0, c1}); }

// X - k as a polynomial in X with coefficients in Q[k].
UPoly<KPoly> x_minus_kappa() { return UPoly<KPoly>(std::vector<KPoly>{-kappa(), KPoly(1L)}); }
UPoly<KPoly> x_minus(long c) { return UPoly<KPoly>(std::vector<KPoly>{KPoly(-c), KPoly(1L)}); }

Fp fp_of(const Rational& q, std::uint64_t p) {
  const Integer P = static_cast<unsigned long>(p);
  Integer num = q.get_num() % P, den = q.get_den() % P;
  if (num < 0) num += P;
  if (den < 0) den += P;
  if (den == 0) throw DomainError("denominator vanishes mod p");
  return Fp(p, static_cast<long long>(num.get_ui())) * Fp(p, static_cast<long long>(den.get_ui())).inv();
}

void check_odd_prime(std::uint64_t p) {
  if (p < 3 || !is_prime(p)) throw DomainError("p must be an odd prime");
}

// Unique solution of A x = b over Q, or throws.
std::vector<Rational> solve_unique(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && is_zero(a[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::swap(b[piv], b[r]);
    const Rational inv = 1 / a[r][c];
    for (auto& v : a[r]) v *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(a[i][c])) continue;
      const Rational f = a[i][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!is_zero(b[i])) throw DomainError("inconsistent linear system");
  if (r != cols) throw DomainError("linear system has no unique solution");
  std::vector<Rational> x(cols);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
  return x;
}

}  // namespace

// ---------------------------------------------------------------------------

BnBasis::BnBasis(int n) : n_(n) {
  if (n < 0) throw DomainError("basis index must be nonnegative");
  for (int i = n; i >= 0; --i)
    for (int c = 0; c <= i; ++c) elems_.push_back({i, 2 * i - c, c});
}

std::size_t BnBasis::block_offset(int i) const {
  if (i < 0 || i > n_) throw DomainError("block index out of range");
  std::size_t off = 0;
  for (int k = n_; k > i; --k) off += static_cast<std::size_t>(k) + 1;
  return off;
}

IntMatrix an_matrix(int n) {
  if (n < 0) throw DomainError("A_n needs n >= 0");
  IntMatrix a(n + 1, std::vector<long>(n + 1, 0));
  if (n == 0) {
    a[0][0] = 2;
    return a;
  }
  a[1][0] = 2;
  a[n - 1][n] = 2;
  for (int k = 1; k < n; ++k) {
    a[k - 1][k] = 1;
    a[k + 1][k] = 1;
  }
  return a;
}

IntMatrix bn_matrix(int n) {
  IntMatrix b(n, std::vector<long>(n + 1, 0));
  for (int k = 1; k <= n; ++k) b[k - 1][k] = 1;
  return b;
}

IntMatrix mn_matrix(int n) {
  BnBasis basis(n);
  const std::size_t N = basis.size();
  IntMatrix m(N, std::vector<long>(N, 0));
  for (int i = n; i >= 0; --i) {
    const std::size_t off = basis.block_offset(i);
    const IntMatrix a = an_matrix(i);
    for (int r = 0; r <= i; ++r)
      for (int c = 0; c <= i; ++c) m[off + r][off + c] = a[r][c];
    if (i == 0) continue;
    const std::size_t below = basis.block_offset(i - 1);
    for (int k = 1; k <= i; ++k) m[below + k - 1][off + k] = 1;
  }
  return m;
}

PolyMatrix build_Mn(int n) {
  const IntMatrix m = mn_matrix(n);
  PolyMatrix out(static_cast<int>(m.size()), static_cast<int>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[i][j]) out.at(static_cast<int>(i), static_cast<int>(j)) = KPoly(m[i][j]);
  return out;
}

std::vector<CycloElem> an_eigenvector(int n, const CycloElem& zeta) {
  const CycloElem inv = zeta.pow(static_cast<unsigned>(2 * n > 0 ? 2 * n - 1 : 0));
  std::vector<CycloElem> v;
  CycloElem up(zeta.conductor(), Rational(1)), down = up;
  for (int k = 0; k <= n; ++k) {
    if (k == 0)
      v.push_back(up);
    else if (k == n)
      v.push_back(up);
    else
      v.push_back(up + down);
    up = up * zeta;
    down = down * inv;
  }
  return v;
}

bool verify_An_eigen(int n, const CycloElem& zeta) {
  if (n < 0) throw DomainError("A_n needs n >= 0");
  const CycloElem one(zeta.conductor(), Rational(1));
  if (zeta.pow(static_cast<unsigned>(2 * n)) != one) throw DomainError("zeta is not a 2n-th root of unity");
  if (n == 0) return true;
  const CycloElem lambda = zeta + zeta.pow(static_cast<unsigned>(2 * n - 1));
  const auto v = an_eigenvector(n, zeta);
  const auto av = apply_matrix(an_matrix(n), v);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (av[i] != lambda * v[i]) return false;
  return true;
}

bool check_matrix_step(int n, const std::vector<Rational>& v) {
  BnBasis basis(n);
  if (v.size() != basis.size()) throw DomainError("coefficient vector has the wrong length");
  auto lift = [](const std::vector<Rational>& w) {
    std::vector<KPoly> out;
    for (const auto& q : w) out.emplace_back(q);
    return out;
  };
  const KPoly k = kappa();
  const SymPoly f = basis.polynomial(lift(v), k);
  const auto lhs = phi_x(SymPoly::x() * f, k);
  const SymPoly g = basis.polynomial(lift(apply_matrix(mn_matrix(n), v)), k);
  const SymPoly x_minus_two = SymPoly::x() - SymPoly(KPoly(2L));
  const SymPoly tail = x_minus_two * SymPoly::from_x2(UPoly<KPoly>(std::vector<KPoly>{-k, KPoly(1L)})).pow(n) *
                       KPoly(v.back());
  const auto rhs = phi_x(g + tail, k);
  return lhs.xpart == rhs.xpart && lhs.yzpart == rhs.yzpart;
}

// ---------------------------------------------------------------------------

std::vector<CycloElem> eigen_extension(int n, long j) {
  if (n < 1 || n > 12) throw DomainError("eigen-polynomials are built for 1 <= n <= 12");
  const long m = 2L * n;
  long jj = ((j % m) + m) % m;
  if (jj == 0 || jj == n) throw DomainError("lambda = +-2 has no eigen-polynomial");
  const CycloElem zeta = CycloElem::zeta(m, jj);
  const CycloElem lambda = zeta + CycloElem::zeta(m, -jj);
  const auto head = an_eigenvector(n, zeta);
  const IntMatrix M = mn_matrix(n);
  const std::size_t N = M.size(), H = head.size(), U = N - H;

  // (M - lambda) v = 0 with v[0..H) = head; unknowns v[H..N).
  std::vector<std::vector<CycloElem>> a(N, std::vector<CycloElem>(U, CycloElem(m, Rational(0))));
  std::vector<CycloElem> b(N, CycloElem(m, Rational(0)));
  for (std::size_t r = 0; r < N; ++r) {
    for (std::size_t c = 0; c < N; ++c) {
      CycloElem e(m, Rational(M[r][c]));
      if (r == c) e = e - lambda;
      if (e.zero()) continue;
      if (c < H)
        b[r] = b[r] - e * head[c];
      else
        a[r][c - H] = e;
    }
  }
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < U && row < N; ++c) {
    std::size_t piv = row;
    while (piv < N && a[piv][c].zero()) ++piv;
    if (piv == N) continue;
    std::swap(a[piv], a[row]);
    std::swap(b[piv], b[row]);
    const CycloElem inv = a[row][c].inv();
    for (std::size_t k = c; k < U; ++k)
      if (!a[row][k].zero()) a[row][k] = a[row][k] * inv;
    b[row] = b[row] * inv;
    for (std::size_t i = 0; i < N; ++i) {
      if (i == row || a[i][c].zero()) continue;
      const CycloElem f = a[i][c];
      for (std::size_t k = c; k < U; ++k)
        if (!a[row][k].zero()) a[i][k] = a[i][k] - f * a[row][k];
      b[i] = b[i] - f * b[row];
    }
    pivots.push_back(c);
    ++row;
  }
  for (std::size_t i = row; i < N; ++i)
    if (!b[i].zero()) throw DomainError("the eigenvector head does not extend");
  std::vector<CycloElem> v = head;
  v.resize(N, CycloElem(m, Rational(0)));
  for (std::size_t i = 0; i < pivots.size(); ++i) v[H + pivots[i]] = b[i];
  return v;
}

TriPoly<CycloElem> eigen_poly_plus(int n, long j, const Rational& k) {
  BnBasis basis(n);
  const CycloElem kap(2L * n, k);
  const auto plus = basis.polynomial(eigen_extension(n, j), kap);
  const auto minus = basis.polynomial(eigen_extension(n, j + n), kap);
  return (plus + minus) * CycloElem(2L * n, Rational(1, 2));
}

KPoly b_poly(int n) {
  if (n < 0) throw DomainError("b_n needs n >= 0");
  std::vector<Rational> c(n + 1);
  for (int i = 0; i <= n; ++i) c[n - i] = binom_q(2 * i, i) / Rational(1 - 2 * i);
  return KPoly(std::move(c));
}

SymPoly fn_poly(int n) {
  if (n < 1) throw DomainError("f_n needs n >= 1");
  const UPoly<KPoly> xk = x_minus_kappa(), x4 = x_minus(4);
  SymPoly f;
  for (int i = 0; i <= n; ++i) {
    Rational c = frac(n, n + i) * binom_q(n + i, 2 * i);
    if (i % 2) c = -c;
    const UPoly<KPoly> part = x4.pow(i) * xk.pow(n - i) * KPoly(c);
    f += SymPoly::from_x2(part) * SymPoly::monomial(KPoly(1L), 0, 2 * i, 0);
  }
  return f;
}

UPoly<KPoly> c_numerator(const SymPoly& f) {
  const SymPoly fs = canonical_form(f, kappa());
  std::map<int, UPoly<KPoly>> parts;
  int top = 0;
  for (const auto& [e, c] : fs.terms()) {
    if (e[0] % 2 || e[1] % 2 || e[2]) throw DomainError("canonical form is not even in x and y");
    parts[e[1] / 2].add_term(c, e[0] / 2);
    top = std::max(top, e[1] / 2);
  }
  const UPoly<KPoly> xk = x_minus_kappa(), x4 = x_minus(4);
  UPoly<KPoly> out;
  for (const auto& [i, fi] : parts) out += xk.pow(i) * x4.pow(top - i) * fi * KPoly(binom_q(2 * i, i));
  return out;
}

std::vector<Rational> lambda_sq_power_sums(int n, int lo, int hi, int emax) {
  if (n < 1) throw DomainError("power sums need n >= 1");
  const long m = 2L * n;
  std::vector<CycloElem> acc(emax + 1, CycloElem(m, Rational(0)));
  for (int j = lo; j <= hi; ++j) {
    const CycloElem lam = CycloElem::zeta(m, j) + CycloElem::zeta(m, -j);
    const CycloElem L = lam * lam;
    CycloElem pw(m, Rational(1));
    for (int e = 0; e <= emax; ++e) {
      acc[e] += pw;
      pw = pw * L;
    }
  }
  std::vector<Rational> out;
  for (const auto& s : acc) {
    for (std::size_t i = 1; i < s.coords().size(); ++i)
      if (!is_zero(s.coords()[i])) throw DomainError("power sum is not rational");
    out.push_back(s.coords()[0]);
  }
  return out;
}

KPoly lambda_sum(const UPoly<KPoly>& P, const std::vector<Rational>& sums) {
  if (P.degree() >= static_cast<int>(sums.size())) throw DomainError("not enough power sums");
  KPoly out;
  for (int e = 0; e <= P.degree(); ++e) out += P[e] * sums[e];
  return out;
}

// ---------------------------------------------------------------------------

long printed_m(int d, int n) {
  if (d < 1 || n % d) return 0;
  long s = 0;
  for (long e : divisors(n / d)) s += euler_phi(2L * n / e);
  return (s + 3) / 4;
}

LambdaClassReport lambda_classes(int d, int n) {
  if (d < 1 || n < 1) throw DomainError("lambda classes need d, n >= 1");
  LambdaClassReport rep;
  rep.d = d;
  rep.n = n;
  for (long j = 1; j <= n / 2; ++j) {
    LambdaClass c;
    c.j = j;
    c.order = 2L * n / std::gcd(2L * n, j);
    c.rotation = rotation_of_order(c.order);
    c.minpoly = trace_order_poly(c.order);
    rep.all.push_back(c);
    if (c.rotation % (2L * d) == 0) rep.good.push_back(c);
  }
  rep.printed_m = printed_m(d, n);
  return rep;
}

KPoly g_dn_poly(int d, int n) {
  if (d < 2 || n < 1) throw DomainError("g_{d,n} needs d >= 2 and n >= 1");
  KPoly g(1L);
  for (long o : divisors(2L * n))
    if (o >= 3 && rotation_of_order(o) % (2L * d) != 0) g *= trace_order_poly(o);
  if (!g.zero() && g.degree() % 2) g *= KPoly::var();
  return g;
}

KPoly g_dn_chebyshev(int d, int n) {
  if (d < 2 || n < 1) throw DomainError("g_{d,n} needs d >= 2 and n >= 1");
  long q = 0;
  for (long t = 2; t <= d; ++t)
    if (d % t == 0) {
      q = t;
      break;
    }
  long a = 0, rest = d;
  while (rest % q == 0) {
    rest /= q;
    ++a;
  }
  if (rest != 1) throw DomainError("the Chebyshev form needs a prime power d");
  long m = 2L * n;
  while (m % q == 0) m /= q;
  long idx = m;
  for (long i = 1; i < a; ++i) idx *= q;
  return chebyshev_u(idx);
}

GdnCheck check_g_dn(int d, int n) {
  GdnCheck r;
  r.root_product = g_dn_poly(d, n);
  r.chebyshev = g_dn_chebyshev(d, n);
  const auto rep = lambda_classes(d, n);
  for (const auto& c : rep.all) {
    const bool good = c.rotation % (2L * d) == 0;
    for (const KPoly* g : {&r.root_product, &r.chebyshev}) {
      const bool root = divides(c.minpoly, *g);
      if (good && root) r.spares_good = false;
      if (!good && !root) r.kills_bad = false;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

GenEigenSet gen_eigen_lambda2(int n) {
  if (n < 0) throw DomainError("generalized eigenvectors need n >= 0");
  BnBasis basis(n);
  const IntMatrix M = mn_matrix(n);
  const std::size_t N = M.size();
  GenEigenSet set;
  set.n = n;
  std::vector<Rational> p0(N);
  p0.back() = 1;
  set.p.push_back(p0);
  set.scale.push_back(1);
  for (int i = 1; i <= n; ++i) {
    // (M - 2I) x = p_{i-1} together with x_last = 0.
    std::vector<std::vector<Rational>> a(N + 1, std::vector<Rational>(N));
    std::vector<Rational> b(N + 1);
    for (std::size_t r = 0; r < N; ++r) {
      for (std::size_t c = 0; c < N; ++c) a[r][c] = M[r][c] - (r == c ? 2 : 0);
      b[r] = set.p.back()[r];
    }
    a[N][N - 1] = 1;
    set.p.push_back(solve_unique(std::move(a), std::move(b)));
    set.scale.push_back(set.p.back()[basis.block_offset(i)]);
  }
  return set;
}

SymPoly gen_eigen_poly(int n) {
  static std::mutex mu;
  static std::map<int, SymPoly> cache;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  const GenEigenSet set = gen_eigen_lambda2(n);
  std::vector<KPoly> v;
  for (const auto& q : set.p[n]) v.emplace_back(q);
  SymPoly f = BnBasis(n).polynomial(v, kappa());
  std::lock_guard<std::mutex> lk(mu);
  cache.emplace(n, f);
  return f;
}

// ---------------------------------------------------------------------------

UPoly<Fp> kpoly_mod(const KPoly& f, std::uint64_t p) {
  std::vector<Fp> c;
  for (int i = 0; i <= f.degree(); ++i) c.push_back(fp_of(f[i], p));
  return UPoly<Fp>(std::move(c));
}

std::vector<Fp> QnVector::at(std::uint64_t kappa) const {
  const Fp k(p, static_cast<long long>(kappa % p));
  std::vector<Fp> out;
  for (const auto& c : coords) {
    Fp v = c.eval(k);
    out.push_back(v.p ? v : Fp(p, 0));
  }
  return out;
}

namespace {

QnVector from_kcoords(const std::vector<KPoly>& c, std::uint64_t p) {
  QnVector q;
  q.p = p;
  for (const auto& x : c) q.coords.push_back(kpoly_mod(x, p));
  return q;
}

}  // namespace

QnVector qn_direct(int n, std::uint64_t p) {
  check_odd_prime(p);
  if (n < 1) throw DomainError("q_n needs n >= 1");
  static std::mutex mu;
  static std::map<std::pair<int, std::uint64_t>, QnVector> cache;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find({n, p});
    if (it != cache.end()) return it->second;
  }
  const int P = static_cast<int>(p);
  const SymPoly mult = SymPoly::monomial(KPoly(1L), 2, 0, 0) - SymPoly::monomial(KPoly(1L), P + 1, 0, 0);
  const UPoly<KPoly> F = phi(mult * gen_eigen_poly(n), kappa());
  std::vector<KPoly> folded(P + 1);
  for (int e = 0; e <= F.degree(); ++e) {
    int t = e;
    while (t > P) t -= P - 1;
    folded[t] += F[e];
  }
  std::vector<KPoly> c;
  for (int i = 0; 2 * i <= P - 1; ++i) c.push_back(folded[2 * i]);
  QnVector q = from_kcoords(c, p);
  std::lock_guard<std::mutex> lk(mu);
  cache.emplace(std::make_pair(n, p), q);
  return q;
}

QnVector qn_formula(int n, std::uint64_t p) {
  check_odd_prime(p);
  if (n < 1) throw DomainError("q_n needs n >= 1");
  const int half = static_cast<int>((p - 1) / 2);
  const KPoly k = kappa();
  auto large = [&](int i) {
    KPoly s;
    for (int j = 0; j <= n; ++j) {
      Rational c = binom_q(n, j) * binom_tail(2L * i - 2L * j + n - 2, n - 1);
      if (is_zero(c)) continue;
      Integer f4;
      mpz_pow_ui(f4.get_mpz_t(), Integer(-4).get_mpz_t(), static_cast<unsigned long>(j));
      s += k.pow(n - j) * (c * Rational(f4));
    }
    return s * pow2(2L - n - 2L * i);
  };
  if (n >= 3) {
    const UPoly<KPoly> xk = UPoly<KPoly>(std::vector<KPoly>{-k, KPoly(0L), KPoly(1L)});
    const UPoly<KPoly> A = phi(SymPoly::from_x(xk) * gen_eigen_poly(n - 1), k) * KPoly(2L) +
                           phi(SymPoly::from_x(xk * xk) * gen_eigen_poly(n - 2), k);
    std::vector<KPoly> c;
    for (int i = 0; i <= half; ++i) {
      KPoly v = large(i);
      if (i >= 1 && i < n) {
        KPoly s;
        for (int j = 0; j <= n; ++j) {
          Rational cc = binom_q(n, j) * binom_q(2L * j - 2L * i + 1, n - 1);
          if (is_zero(cc)) continue;
          Integer f4;
          mpz_pow_ui(f4.get_mpz_t(), Integer(4).get_mpz_t(), static_cast<unsigned long>(j));
          KPoly mk = (-k).pow(n - j);
          s += mk * (cc * Rational(f4));
        }
        v += A.coeff(2 * i) - s * pow2(2L - n - 2L * i);
      } else if (i == 0) {
        v += A.coeff(0);
      }
      c.push_back(v);
    }
    return from_kcoords(c, p);
  }
  std::vector<KPoly> c;
  for (int i = 0; i <= half; ++i) {
    if (n == 1 && i == 0) {
      c.emplace_back();
    } else if (n == 2 && i < 2) {
      KPoly v = -k * lin(4, -1);
      c.push_back(i == 0 ? v : v * Rational(1, 2));
    } else {
      c.push_back(large(i));
    }
  }
  return from_kcoords(c, p);
}

std::vector<UPoly<Fp>> e_vec(std::uint64_t p, int j) {
  check_odd_prime(p);
  std::vector<UPoly<Fp>> v((p + 1) / 2);
  if (j < 0 || j >= static_cast<int>(v.size())) throw DomainError("e_j index out of range");
  v[j] = UPoly<Fp>(Fp(p, 1));
  return v;
}

std::vector<UPoly<Fp>> f_vec(std::uint64_t p, int j) {
  check_odd_prime(p);
  const int len = static_cast<int>((p + 1) / 2);
  if (j < 0 || j >= len) throw DomainError("f_j index out of range");
  const UPoly<Fp> lead = kpoly_mod(lin(4, -1).pow(j + 1), p);
  std::vector<UPoly<Fp>> v(len);
  const Fp quarter = Fp(p, 4).inv();
  Fp q4 = quarter.pow(j);
  for (int i = j; i < len; ++i) {
    v[i] = lead * (fp_of(binom_q(i, j), p) * q4);
    q4 = q4 * quarter;
  }
  return v;
}

QnVector qn_published(int n, std::uint64_t p) {
  check_odd_prime(p);
  if (n < 1 || n > 4) throw DomainError("published q_n cover 1 <= n <= 4");
  auto poly = [](std::initializer_list<Rational> c) { return KPoly(std::vector<Rational>(c)); };
  const std::vector<std::vector<KPoly>> F = {
      {poly({-2})},
      {poly({-16}), poly({2})},
      {poly({-120, 6}), poly({18, Rational(3, 2)}), poly({-2})},
      {poly({-896, 96}), poly({144, 8, 1}), poly({-20, -3}), poly({2})}};
  const std::vector<std::vector<KPoly>> E = {
      {poly({2})},
      {poly({16, -1}), poly({2})},
      {poly({120, Rational(-46, 3)}), poly({20, Rational(-4, 3)}), poly({Rational(4, 3)})},
      {poly({896, Rational(-7816, 45), Rational(166, 45)}), poly({Rational(2596, 15), Rational(-967, 45), Rational(7, 45)}),
       poly({Rational(604, 45), Rational(-11, 9)}), poly({Rational(16, 15)})}};
  const std::size_t len = (p + 1) / 2;
  QnVector q;
  q.p = p;
  q.coords.assign(len, UPoly<Fp>());
  const UPoly<Fp> four_minus = kpoly_mod(lin(4, -1), p);
  for (std::size_t j = 0; j < F[n - 1].size() && j < len; ++j) {
    const auto fj = f_vec(p, static_cast<int>(j));
    const UPoly<Fp> cf = kpoly_mod(F[n - 1][j], p), ce = kpoly_mod(E[n - 1][j], p) * four_minus;
    for (std::size_t i = 0; i < len; ++i) q.coords[i] += cf * fj[i];
    q.coords[j] += ce;
  }
  return q;
}

bool check_power_expansion(int m, int n) {
  if (m < 0 || n < 1) throw DomainError("needs m >= 0 and n >= 1");
  const KPoly k = kappa();
  const UPoly<KPoly> lhs = phi(SymPoly::monomial(KPoly(1L), m, 0, 0) * gen_eigen_poly(n), k);
  const UPoly<KPoly> xk(std::vector<KPoly>{-k, KPoly(0L), KPoly(1L)});
  UPoly<KPoly> rhs;
  for (int i = 0; i <= n - 1; ++i) {
    const Rational c = binom_q(m, i) * pow2(m - i);
    if (is_zero(c)) continue;
    rhs += phi(SymPoly::from_x(xk.pow(i)) * gen_eigen_poly(n - i), k) * KPoly(c);
  }
  UPoly<KPoly> tail;
  for (int i = 0; i <= m - n; ++i) tail.add_term(KPoly(binom_q(m - i - 1, n - 1) * pow2(-i)), i);
  rhs += xk.pow(n) * tail * KPoly(pow2(m - n));
  return lhs == rhs;
}

// ---------------------------------------------------------------------------

Fp pair(const std::vector<Fp>& q, const SpanVector& y) {
  if (q.empty() || q.size() != y.size()) throw DomainError("pairing needs vectors of equal length");
  const std::uint64_t p = q[0].p ? q[0].p : 0;
  Fp acc(p, 0);
  for (std::size_t i = 0; i < q.size(); ++i) acc = acc + q[i] * Fp(p, static_cast<long long>(y[i]));
  return acc;
}

YVectors y_vectors(std::uint64_t p, std::uint64_t kappa_value) {
  check_odd_prime(p);
  const std::uint64_t k = kappa_value % p;
  const std::size_t len = (p + 1) / 2;
  YVectors y;
  y.p = p;
  y.kappa = k;
  auto combine = [&](std::initializer_list<std::pair<std::uint64_t, SpanVector>> parts) {
    SpanVector out(len, 0);
    for (const auto& [c, v] : parts)
      for (std::size_t i = 0; i < len; ++i) out[i] = (out[i] + mul_mod(c % p, v[i], p)) % p;
    return out;
  };
  const SpanVector x0 = x_vector(p, 0), x1 = x_vector(p, 1);
  y.ykappa = combine({{2, x0}, {1, x_vector(p, k)}});
  y.y1 = combine({{1, x0}, {3, x1}});
  y.y2 = combine({{2, x0}, {3, x1}, {4, x_vector(p, 2)}});
  // x_{phi^2} + x_{phibar^2} has the even Lucas numbers as coordinates.
  SpanVector lucas(len);
  {
    std::uint64_t a = 2 % p, b = 3 % p;  // L_0, L_2
    for (std::size_t i = 0; i < len; ++i) {
      lucas[i] = a;
      const std::uint64_t c = (3 * b % p + p - a) % p;  // L_{2i+4} = 3 L_{2i+2} - L_{2i}
      a = b;
      b = c;
    }
  }
  y.y5 = combine({{2, x0}, {6, x1}, {5, lucas}});
  const auto s5 = sqrt_mod(Fp(p, 5));
  y.has_sqrt5 = s5.has_value();
  if (s5) {
    const Fp half = Fp(p, 2).inv();
    const Fp phi_ = (Fp(p, 1) + *s5) * half, phib = (Fp(p, 1) - *s5) * half;
    y.yphi = combine({{2, x0}, {3, x1}, {5, x_vector(p, (phi_ * phi_).v)}});
    y.yphibar = combine({{2, x0}, {3, x1}, {5, x_vector(p, (phib * phib).v)}});
  }
  y.y0.assign(len, 0);
  if (len > 1) y.y0[1] = 1;
  if (len > 2) y.y0[2] = (p - 12 % p) % p;
  y.yp.assign(len, 0);
  if (k != 4 % p) y.yp[len - 1] = inv_mod((4 + p - k) % p, p);
  y.yreal.assign(len, 0);
  {
    Fp sum(p, 0), kp(p, 1);  // kp = k^{j-1}
    const Fp K(p, static_cast<long long>(k));
    for (std::size_t i = 1; i < len; ++i) {
      const long j = static_cast<long>(i);
      sum = sum + kp * (fp_of(binom_q(2 * j, j), p) * Fp(p, j)).inv();
      kp = kp * K;
      y.yreal[i] = (-(fp_of(binom_q(2 * j, j), p) * sum)).v;
    }
  }
  y.ymarkoff = y_markoff(p);
  return y;
}

namespace {

std::vector<Fp> at_kappa(const std::vector<UPoly<Fp>>& v, std::uint64_t p, std::uint64_t k) {
  QnVector q;
  q.p = p;
  q.coords = v;
  return q.at(k);
}

Fp det3(const std::array<std::array<Fp, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

LocalDeterminants local_determinants(std::uint64_t p, std::uint64_t kappa_value) {
  check_odd_prime(p);
  const std::uint64_t k = kappa_value % p;
  if (k == 4 % p) throw DomainError("k = 4 is excluded");
  LocalDeterminants r;
  r.p = p;
  r.kappa = k;
  const Fp K(p, static_cast<long long>(k));
  r.chi = quad_char(K);
  const YVectors y = y_vectors(p, k);
  std::vector<std::vector<Fp>> q;
  for (int n = 1; n <= 4; ++n) q.push_back(qn_direct(n, p).at(k));
  const Fp c3 = Fp(p, 15) * (Fp(p, 272) + Fp(p, 72) * K - Fp(p, 3) * K * K);
  const Fp c4 = Fp(p, -105) * (Fp(p, 4) + K);
  std::vector<Fp> q3t(q[2].size(), Fp(p, 0));
  for (std::size_t i = 0; i < q3t.size(); ++i) q3t[i] = c3 * q[2][i] + c4 * q[3][i];

  r.two_by_two = pair(q[0], y.yreal) * pair(q[1], y.yp) - pair(q[0], y.yp) * pair(q[1], y.yreal);
  r.expected_two = Fp(p, -8) * Fp(p, 3).inv() * (Fp(p, 4) - K);
  std::array<std::array<Fp, 3>, 3> m3;
  const std::vector<Fp>* rows[3] = {&q[0], &q[1], &q3t};
  for (int i = 0; i < 3; ++i) {
    m3[i][0] = pair(*rows[i], y.yreal);
    m3[i][1] = pair(*rows[i], y.yp);
    m3[i][2] = pair(*rows[i], y.ykappa);
  }
  r.three_by_three = det3(m3);
  r.expected_three = Fp(p, 2).pow(19) * K;
  r.zero_case = pair(q[0], y.y0) * pair(q[1], y.yp) - pair(q[0], y.yp) * pair(q[1], y.y0);
  return r;
}

// ---------------------------------------------------------------------------

bool check_monomial_expansion(int n, int m) {
  const KPoly k = kappa();
  const UPoly<KPoly> F = phi(SymPoly::monomial(KPoly(1L), 2 * n, 2 * m, 0), k);
  const std::vector<KPoly> c = b_coordinates(F);
  if (n >= m && static_cast<int>(c.size()) > n + 1) return false;
  for (int i = 0; i <= n - m - 1; ++i) {
    KPoly expect;
    for (int j = 0; j <= i; ++j)
      expect += (-k).pow(i - j) * (binom_q(2 * m + 2 * j, m + j) * binom_q(m + j, m) * binom_q(m, i - j));
    const KPoly got = n - i < static_cast<int>(c.size()) ? c[n - i] : KPoly();
    if (got != expect) return false;
  }
  return true;
}

bool check_spectral_form(int n, int m) {
  if (m > n) throw DomainError("needs m <= n");
  const KPoly k = kappa();
  const UPoly<KPoly> xk(std::vector<KPoly>{-k, KPoly(1L)}), x4(std::vector<KPoly>{KPoly(-4L), KPoly(1L)});
  const SymPoly f = SymPoly::from_x2(xk.pow(n - m) * x4.pow(m)) * SymPoly::monomial(KPoly(1L), 0, 2 * m, 0);
  const UPoly<KPoly> diff = phi(f, k) - (xk.pow(n) * KPoly(binom_q(2 * m, m))).inflate(2);
  return diff.degree() <= 2 * m;
}

bool check_lambda_moment(int n, int l, int m) {
  if (l + m >= n) throw DomainError("needs l + m < n");
  const long cond = 2L * n;
  CycloElem s(cond, Rational(0));
  for (int j = 1; j <= n; ++j) {
    const CycloElem lam = CycloElem::zeta(cond, j) + CycloElem::zeta(cond, -j);
    const CycloElem L = lam * lam;
    s += L.pow(l) * (L - CycloElem(cond, Rational(4))).pow(m);
  }
  const int i = l + m;
  Rational expect(1);
  for (int t = 0; t < i; ++t) expect *= (frac(2 * m - 1, 2) - t) * Rational(-4) / Rational(t + 1);
  return s == CycloElem(cond, expect * Rational(n));
}

bool check_even_expansion(int n, int l, int m, int ntilde) {
  if (ntilde < n) throw DomainError("needs ntilde >= n");
  const KPoly k = kappa();
  SymPoly f;
  const KPoly fy = KPoly::monomial(Rational(1), l) * lin(-4, 1).pow(m);  // f(Y)
  for (int e = 0; e <= fy.degree(); ++e) f.add_term(KPoly(fy[e]), 2 * n, 2 * e, 0);
  const std::vector<KPoly> c = b_coordinates(phi(f, k));
  const int bound = std::max(l + m, n - m - 1);
  const auto sums = lambda_sq_power_sums(ntilde, 1, ntilde, l + m + 1);
  const UPoly<KPoly> xk = x_minus_kappa(), x4 = x_minus(4), X = UPoly<KPoly>::monomial(KPoly(1L), 1);
  for (int b = bound + 1; b <= std::max(n, static_cast<int>(c.size()) - 1); ++b) {
    const int i = n - b;
    KPoly expect;
    if (i >= 0 && i <= m)
      expect = lambda_sum(xk.pow(i) * x4.pow(m - i) * X.pow(l), sums) * (binom_q(2 * i, i) / Rational(ntilde));
    const KPoly got = b < static_cast<int>(c.size()) ? c[b] : KPoly();
    if (got != expect) return false;
  }
  return true;
}

bool check_central_binomial_sum(int n, int j) {
  Rational s;
  for (int i = j; i <= n; ++i) s += binom_q(2 * i, i) * binom_q(i, j) * pow2(-2L * i);
  return s * pow2(2L * n) == frac(2 * n + 1, 2 * j + 1) * binom_q(n, j) * binom_q(2 * n, n);
}

bool check_fj_closed_form(std::uint64_t p, std::uint64_t kappa_value, std::uint64_t a, int j) {
  check_odd_prime(p);
  a %= p;
  if (a == 0 || a == 4 % p) throw DomainError("a must avoid 0 and 4");
  const std::uint64_t h = (p - 1) / 2;
  const Fp K(p, static_cast<long long>(kappa_value % p)), A(p, static_cast<long long>(a));
  const auto fj = at_kappa(f_vec(p, j), p, kappa_value % p);
  Fp lhs(p, 0), pw(p, 1);
  for (std::size_t i = 0; i < fj.size(); ++i) {
    lhs = lhs + fj[i] * pw;
    pw = pw * A;
  }
  const Fp one(p, 1), four(p, 4), quarter = four.inv();
  Fp s(p, 0), t(p, 1);
  const Fp step = quarter - A.inv();
  for (int i = 0; i <= j; ++i) {
    s = s + fp_of(binom_q(2 * i, i), p) * t;
    t = t * step;
  }
  const Fp ah = A.pow(h);
  const Fp rhs = four * A.pow(j) * ((four - K) * (four - A).inv()).pow(j + 1) * (one - ah * s) -
                 four * ah * (K * quarter - one).pow(j + 1) * fp_of(binom_q(2 * j, j), p);
  return lhs == rhs;
}

bool check_product_formulas(std::uint64_t p, std::uint64_t kappa_value) {
  check_odd_prime(p);
  const std::uint64_t k = kappa_value % p;
  if (k == 0 || k == 4 % p) throw DomainError("k must avoid 0 and 4");
  const int half = static_cast<int>((p - 1) / 2);
  const Fp K(p, static_cast<long long>(k)), one(p, 1), four(p, 4);
  const Fp chi(p, quad_char(K));
  const YVectors y = y_vectors(p, k);
  auto eval = [&](const std::vector<UPoly<Fp>>& v) { return at_kappa(v, p, k); };
  const Fp step = four.inv() - K.inv();
  Fp partial(p, 0), t(p, 1), e_real_sum(p, 0);
  for (int j = 0; j < half; ++j) {
    const Fp cb = fp_of(binom_q(2 * j, j), p);
    partial = partial + cb * t;
    t = t * step;
    if (j >= 1) e_real_sum = e_real_sum + (cb * Fp(p, j)).inv() * K.pow(j - 1);
    const auto ej = eval(e_vec(p, j)), fj = eval(f_vec(p, j));
    const Fp f_yp = pair(fj, y.yp), f_yr = pair(fj, y.yreal);
    if (!is_zero(pair(ej, y.yp))) return false;
    if (f_yp != (K * four.inv() - one).pow(j) * cb) return false;
    if (pair(ej, y.yreal) != -(cb * e_real_sum)) return false;
    if (f_yr != Fp(p, 2) * K.pow(j) * Fp(p, 2 * j + 1).inv() * (one - chi * partial)) return false;
    if (j == 0) {
      if (pair(ej, y.ykappa) != Fp(p, 3)) return false;
      if (pair(fj, y.ykappa) != Fp(p, 12) - (Fp(p, 2) + chi) * K) return false;
    } else {
      if (pair(ej, y.ykappa) != K.pow(j)) return false;
      if (pair(fj, y.ykappa) != Fp(p, 4 * j + 2) * f_yr + chi * (four - K) * f_yp) return false;
    }
  }
  return true;
}

bool check_eigen_top(int n, long j, const Rational& k) {
  const long cond = 2L * n;
  const CycloElem kap(cond, k);
  const UPoly<CycloElem> F = phi(eigen_poly_plus(n, j, k), kap);
  if (F.degree() != 2 * n || F.lead() != CycloElem(cond, Rational(1))) return false;
  const std::vector<CycloElem> c = b_coordinates(F);
  const CycloElem lam = CycloElem::zeta(cond, j) + CycloElem::zeta(cond, -j);
  const CycloElem L = lam * lam;
  const CycloElem four_minus = CycloElem(cond, Rational(4)) - L, num = L - kap;
  const int keep = n - (3 * n) / 4;  // b-indices above floor(3n/4)
  for (int i = 0; i < keep; ++i) {
    const CycloElem expect = num.pow(i) * four_minus.pow(n - i) * binom_q(2L * n - i - 1, i);
    if (c[n - i] * four_minus.pow(n) != expect) return false;
  }
  return true;
}

int eigen_sum_agreement(int n, const KPoly& g, const Rational& scale) {
  const KPoly k = kappa();
  const SymPoly f = SymPoly::from_x2(UPoly<KPoly>(g.map([](const Rational& q) { return KPoly(q); }))) * fn_poly(n);
  const std::vector<KPoly> c = b_coordinates(phi(f, k));
  const auto sums = lambda_sq_power_sums(n, 1, n - 1, n + g.degree() + 1);
  const UPoly<KPoly> xk = x_minus_kappa(), x4 = x_minus(4);
  const UPoly<KPoly> G = g.map([](const Rational& q) { return KPoly(q); });
  int agree = 0;
  for (int b = std::max(n, static_cast<int>(c.size()) - 1); b >= 0; --b) {
    const int i = n - b;
    KPoly expect;
    if (i >= 0) {
      Rational w = binom_q(2L * n - i - 1, i) * scale;
      if (i % 2) w = -w;
      expect = lambda_sum(xk.pow(i) * G * x4.pow(n - i), sums) * w;
    }
    const KPoly got = b < static_cast<int>(c.size()) ? c[b] : KPoly();
    if (got != expect) break;
    ++agree;
  }
  return agree;
}

}  // namespace markoff
