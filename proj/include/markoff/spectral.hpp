#ifndef MARKOFF_SPECTRAL_HPP
#define MARKOFF_SPECTRAL_HPP

#include <markoff/cyclo.hpp>
#include <markoff/markoff.hpp>
#include <markoff/polymatrix.hpp>
#include <markoff/reduce.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace markoff {

// ---------------------------------------------------------------------------
// The basis B^n and the matrices A_n, B_n, M_n

// (x^2 - k)^{n-i} y^j z^c with j + c = 2i and j >= c.
struct BnElem {
  int i = 0, j = 0, c = 0;
};

/*
 * The ordered basis B^n: blocks B^n_i for i = n down to 0, each block by
 * decreasing y-exponent.  Its length (n^2 + 3n + 2)/2 is the size of M_n.
 */
class BnBasis {
 public:
  explicit BnBasis(int n);

  int n() const { return n_; }
  std::size_t size() const { return elems_.size(); }
  const BnElem& operator[](std::size_t k) const { return elems_[k]; }
  const std::vector<BnElem>& elems() const { return elems_; }
  // Index of the first element of the block B^n_i.
  std::size_t block_offset(int i) const;

  // sum_k v[k] * (basis element k), with k specialised to kappa.
  template <class C>
  TriPoly<C> polynomial(const std::vector<C>& v, const C& kappa) const;

 private:
  int n_;
  std::vector<BnElem> elems_;
};

using IntMatrix = std::vector<std::vector<long>>;

IntMatrix an_matrix(int n);  // (n+1) x (n+1)
IntMatrix bn_matrix(int n);  // n x (n+1), [0 | I_n]
IntMatrix mn_matrix(int n);

// M_n as a matrix over Q[k] (constant entries).
PolyMatrix build_Mn(int n);

template <class C>
std::vector<C> apply_matrix(const IntMatrix& m, const std::vector<C>& v) {
  std::vector<C> out(m.size(), C(0L));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (m[i][j]) out[i] = out[i] + v[j] * C(m[i][j]);
  return out;
}

// (1, z + 1/z, ..., z^{n-1} + z^{1-n}, z^n) for z = zeta.
std::vector<CycloElem> an_eigenvector(int n, const CycloElem& zeta);

// A_n v = (zeta + 1/zeta) v for the vector above.  Throws unless zeta^{2n} = 1.
bool verify_An_eigen(int n, const CycloElem& zeta);

/*
 * The matrix form of one Phi_x step: for f with coefficient vector v in
 * B^n whose B^n_0 entry is zero, Phi_x(x f) = Phi_x(g) + w x (x^2 - k)^n
 * where g has vector M_n v and w is the last entry of M_n v.  Checked
 * with symbolic k.
 */
bool check_matrix_step(int n, const std::vector<Rational>& v);

// ---------------------------------------------------------------------------
// Eigen-polynomials

/*
 * The eigenvector of M_n for lambda = zeta + 1/zeta whose top block is the
 * A_n eigenvector of zeta, with zeta = zeta_{2n}^j.  Free directions left
 * by repeated eigenvalues are set to zero.  Requires lambda != +-2, n <= 12.
 */
std::vector<CycloElem> eigen_extension(int n, long j);

// (P_lambda + P_{-lambda})/2 at a rational k, as a polynomial over Q(zeta_{2n}).
TriPoly<CycloElem> eigen_poly_plus(int n, long j, const Rational& kappa);

// b_n(x) = sum_i binom(2i, i) x^{n-i} / (1 - 2i); monic of degree n.
KPoly b_poly(int n);

// Coordinates of an even polynomial F(x) in the basis b_0(x^2), b_1(x^2), ...
template <class C>
std::vector<C> b_coordinates(const UPoly<C>& f);

// f_n = sum_i (n/(n+i)) (-1)^i binom(n+i, 2i) (x^2-4)^i (x^2-k)^{n-i} y^{2i}.
SymPoly fn_poly(int n);

/*
 * sum_i binom(2i,i) (X-k)^i (X-4)^{N-i} f_i(X) for the canonical form
 * f* = sum_i f_i(x^2) y^{2i} of an even f, with N the top y-power.  This
 * vanishes exactly when every c_{lambda,i}(f) does.
 */
UPoly<KPoly> c_numerator(const SymPoly& f);

// Power sums sum_{j=lo..hi} (zeta^j + zeta^{-j})^{2e}, zeta = zeta_{2n}, for
// e = 0..emax, computed in Q(zeta_{2n}).
std::vector<Rational> lambda_sq_power_sums(int n, int lo, int hi, int emax);

// Sum over lambda in L of P(lambda^2) with P in Q[k][X], given power sums.
KPoly lambda_sum(const UPoly<KPoly>& P, const std::vector<Rational>& sums);

// ---------------------------------------------------------------------------
// lambda classes and g_{d,n}

// Rotation order of a root of unity of multiplicative order o.
inline long rotation_of_order(long o) { return o % 2 == 0 ? o : 2 * o; }

// A class {+-lambda} in the non-trivial spectrum of M_n, lambda = 2cos(pi j/n).
struct LambdaClass {
  long j = 0;
  long order = 0;     // multiplicative order of zeta_{2n}^j
  long rotation = 0;  // even-convention order
  KPoly minpoly;      // minimal polynomial of lambda
};

struct LambdaClassReport {
  int d = 0, n = 0;
  std::vector<LambdaClass> all;   // every class, j = 1..floor(n/2)
  std::vector<LambdaClass> good;  // those with 2d | rotation
  long printed_m = 0;             // ceil(1/4 sum_{e | n/d} phi(2n/e)), or 0 when d does not divide n
};

LambdaClassReport lambda_classes(int d, int n);
long printed_m(int d, int n);

// Even integral polynomial vanishing on the bad classes: a product of
// trace-order polynomials, times x when that product is odd.
KPoly g_dn_poly(int d, int n);

// Chebyshev form for a prime power d = q^a: u_{m q^{a-1}} where 2n = m q^b
// and q does not divide m.  Throws for other d.
KPoly g_dn_chebyshev(int d, int n);

struct GdnCheck {
  KPoly root_product, chebyshev;
  bool kills_bad = true;     // every bad class is a root of both
  bool spares_good = true;   // no good class is a root of either
};
GdnCheck check_g_dn(int d, int n);

// ---------------------------------------------------------------------------
// lambda = 2: generalized eigenvectors

struct GenEigenSet {
  int n = 0;
  std::vector<std::vector<Rational>> p;  // p_0..p_n in B^n coordinates
  std::vector<Rational> scale;           // p_{i,i} = scale[i] * (1, 2, ..., 2, 1)
};

GenEigenSet gen_eigen_lambda2(int n);

// The polynomial P_n of p_n, over Q[k].
SymPoly gen_eigen_poly(int n);

// ---------------------------------------------------------------------------
// q vectors

struct QnVector {
  std::uint64_t p = 0;
  std::vector<UPoly<Fp>> coords;  // (p+1)/2 entries, polynomials in k over F_p

  std::vector<Fp> at(std::uint64_t kappa) const;
  friend bool operator==(const QnVector& a, const QnVector& b) { return a.p == b.p && a.coords == b.coords; }
};

UPoly<Fp> kpoly_mod(const KPoly& f, std::uint64_t p);

// q_n from Phi((x^2 - x^{p+1}) P_n), exponents folded with x^{p+1} = x^2.
QnVector qn_direct(int n, std::uint64_t p);
// q_n from the two-regime closed formula.
QnVector qn_formula(int n, std::uint64_t p);
// q_n from the published f/e matrices, n <= 4.
QnVector qn_published(int n, std::uint64_t p);

// Phi(x^m P_n) versus the expansion into lower generalized eigenvectors.
bool check_power_expansion(int m, int n);

// Standard basis e_j and f_j = (4-k)^{j+1} sum_{i>=j} binom(i,j) e_i / 4^i.
std::vector<UPoly<Fp>> e_vec(std::uint64_t p, int j);
std::vector<UPoly<Fp>> f_vec(std::uint64_t p, int j);

struct YVectors {
  std::uint64_t p = 0, kappa = 0;
  SpanVector y0, yp, yreal, ykappa, y1, y2, y5, ymarkoff;
  std::optional<SpanVector> yphi, yphibar;  // need sqrt(5)
  bool has_sqrt5 = false;
};

YVectors y_vectors(std::uint64_t p, std::uint64_t kappa);

Fp pair(const std::vector<Fp>& q, const SpanVector& y);

struct LocalDeterminants {
  std::uint64_t p = 0, kappa = 0;
  int chi = 0;
  Fp two_by_two;        // det [q1;q2] x [y_R y_p]
  Fp expected_two;      // -(8/3)(4-k)
  Fp three_by_three;    // det [q1;q2;q3'] x [y_R y_p y_k]
  Fp expected_three;    // 2^19 k
  Fp zero_case;         // det [q1;q2] x [y_0 y_p] at k = 0
};

LocalDeterminants local_determinants(std::uint64_t p, std::uint64_t kappa);

// ---------------------------------------------------------------------------
// Closed-form identities used as oracles

// Top b-coordinates of Phi(x^{2n} y^{2m}) against the double binomial sum.
bool check_monomial_expansion(int n, int m);
// deg(Phi((x^2-k)^{n-m} (x^2-4)^m y^{2m}) - binom(2m,m)(x^2-k)^n) <= 2m.
bool check_spectral_form(int n, int m);
// (1/n) sum_{j=1..n} lambda_j^{2l} (lambda_j^2 - 4)^m = [x^{l+m}] (1-4x)^{m-1/2}.
bool check_lambda_moment(int n, int l, int m);
// Phi(x^{2n} f(y^2)) versus the Lambda-sum with n' >= n, f = y^{2l}(y^2-4)^m.
bool check_even_expansion(int n, int l, int m, int ntilde);
// 4^n sum_{i=j}^n binom(2i,i) binom(i,j) / 4^i = (2n+1)/(2j+1) binom(n,j) binom(2n,n).
bool check_central_binomial_sum(int n, int j);
// f_j(x_a) closed form over F_p, a not in {0, 4}.
bool check_fj_closed_form(std::uint64_t p, std::uint64_t kappa, std::uint64_t a, int j);
// Pairings of e_j and f_j with y_p, y_R and y_k against their closed forms, 0 <= j < (p-1)/2.
bool check_product_formulas(std::uint64_t p, std::uint64_t kappa);

// Thm 6.11 top coefficients for the eigen-polynomial of zeta_{2n}^j at rational k.
bool check_eigen_top(int n, long j, const Rational& kappa);

/*
 * Top b-coordinates of Phi(g f_n) against
 *   scale * sum_i (-1)^i binom(2n-i-1, i) sum_lambda (L-k)^i g(L) (L-4)^{n-i} b_{n-i}
 * with L = lambda^2 over lambda in {2cos(pi j/n) : 0 < j < n}.  Returns the
 * number of agreeing top coordinates.
 */
int eigen_sum_agreement(int n, const KPoly& g, const Rational& scale);

template <class C>
TriPoly<C> BnBasis::polynomial(const std::vector<C>& v, const C& kappa) const {
  if (v.size() != elems_.size()) throw DomainError("coefficient vector has the wrong length");
  using T = TriPoly<C>;
  const T base = T::from_x2(UPoly<C>(std::vector<C>{C(0L) - kappa, C(1L)}));
  std::vector<T> powers{T(C(1L))};
  for (int e = 1; e <= n_; ++e) powers.push_back(powers.back() * base);
  T out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (is_zero(v[k])) continue;
    const BnElem& b = elems_[k];
    out += powers[n_ - b.i] * T::monomial(v[k], 0, b.j, b.c);
  }
  return out;
}

template <class C>
std::vector<C> b_coordinates(const UPoly<C>& f) {
  std::vector<C> g;  // f as a polynomial in X = x^2
  for (int e = 0; e <= f.degree(); ++e) {
    if (is_zero(f[e])) continue;
    if (e % 2) throw DomainError("b-coordinates need an even polynomial");
    if (static_cast<int>(g.size()) <= e / 2) g.resize(e / 2 + 1, C(0L));
    g[e / 2] = f[e];
  }
  std::vector<C> out(g.size(), C(0L));
  for (int k = static_cast<int>(g.size()) - 1; k >= 0; --k) {
    const C c = g[k];
    out[k] = c;
    if (is_zero(c)) continue;
    const KPoly b = b_poly(k);
    for (int e = 0; e <= k; ++e) g[e] = g[e] - c * b[e];
  }
  return out;
}

}  // namespace markoff

#endif
