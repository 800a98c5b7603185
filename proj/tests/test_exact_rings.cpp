#include <markoff/chebyshev.hpp>
#include <markoff/cyclo.hpp>
#include <markoff/kpoly.hpp>
#include <markoff/polymatrix.hpp>

#include "doctest.h"

#include <random>

using namespace markoff;

namespace {

KPoly poly(std::initializer_list<long> cs) {
  std::vector<Rational> v;
  for (long c : cs) v.emplace_back(c);
  return KPoly(v);
}

const KPoly k = kappa();

void check_identity(const KPoly& a, const KPoly& b, const XgcdResult& r) {
  CHECK(is_integral(r.h1));
  CHECK(is_integral(r.h2));
  CHECK(r.clear > 0);
  CHECK(r.h1 * a + r.h2 * b == r.g * Rational(r.clear));
  Integer g = r.clear, c1 = integer_content(r.h1), c2 = integer_content(r.h2);
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c1.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c2.get_mpz_t());
  CHECK(g == 1);
}

}  // namespace

TEST_SUITE("exact-rings") {
  TEST_CASE("rational arithmetic stays reduced") {
    Rational a(6, 4);
    a.canonicalize();
    CHECK(a == Rational(3, 2));
    CHECK(a.get_den() == 2);
    Rational b = a - Rational(1, 2);
    CHECK(b == 1);
  }

  TEST_CASE("polynomial basics") {
    KPoly p = k * k - KPoly(4L);
    CHECK(p.degree() == 2);
    CHECK(KPoly().degree() == -1);
    CHECK(exact_div(p, k - KPoly(2L)) == k + KPoly(2L));
    CHECK(to_string(p) == "k^2 - 4");
    CHECK(root_multiplicity((k - KPoly(4L)).pow(3) * k, Rational(4)) == 3);
  }

  TEST_CASE("xgcd divisor case") {
    KPoly a = k * k - KPoly(4L), b = k - KPoly(2L);
    auto r = kpoly_xgcd(a, b);
    CHECK(r.g == b);
    CHECK(r.h1.zero());
    CHECK(r.h2 == KPoly(1L));
    CHECK(r.clear == 1);
    check_identity(a, b, r);
  }

  TEST_CASE("xgcd coprime linear pair") {
    KPoly a = k, b = k + KPoly(2L);
    auto r = kpoly_xgcd(a, b);
    CHECK(r.g == KPoly(1L));
    CHECK(r.h1 == KPoly(-1L));
    CHECK(r.h2 == KPoly(1L));
    CHECK(r.clear == 2);
  }

  TEST_CASE("xgcd proportional pair matches small-coefficient search") {
    KPoly a = k * Rational(2), b = k * Rational(3);
    auto r = kpoly_xgcd(a, b);
    CHECK(r.g == k);
    check_identity(a, b, r);
    // Oracle: smallest positive c with c*k = u*a + v*b for integers |u|,|v| <= 6.
    long best = 0;
    for (long u = -6; u <= 6; ++u)
      for (long v = -6; v <= 6; ++v) {
        long c = 2 * u + 3 * v;
        if (c > 0 && (best == 0 || c < best)) best = c;
      }
    CHECK(r.clear == best);
  }

  TEST_CASE("xgcd identity on random pairs") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> d(-9, 9);
    for (int t = 0; t < 40; ++t) {
      KPoly common = poly({d(rng), 1 + std::abs(d(rng))});
      KPoly a = common * poly({d(rng), d(rng), d(rng)}), b = common * poly({d(rng), d(rng), 3});
      if (a.zero() && b.zero()) continue;
      auto r = kpoly_xgcd(a, b);
      check_identity(a, b, r);
      CHECK(divides(r.g, a));
      CHECK(divides(r.g, b));
    }
  }

  TEST_CASE("xgcd of zeros is a domain error") {
    CHECK_THROWS_AS(kpoly_xgcd(KPoly(), KPoly()), DomainError);
  }

  TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_poly(1) == poly({-1, 1}));
    CHECK(cyclotomic_poly(4) == poly({1, 0, 1}));
    CHECK(cyclotomic_poly(12) == poly({1, 0, -1, 0, 1}));
    for (long m = 1; m <= 40; ++m) CHECK(cyclotomic_poly(m).degree() == euler_phi(m));
    // t^n - 1 is the product over divisors
    KPoly prod(1L);
    for (long dd : divisors(30)) prod *= cyclotomic_poly(dd);
    CHECK(prod == KPoly::monomial(Rational(1), 30) - KPoly(1L));
  }

  TEST_CASE("trace order polynomials vanish on zeta + 1/zeta") {
    for (long o = 3; o <= 30; ++o) {
      CycloElem lam = CycloElem::zeta(o, 1) + CycloElem::zeta(o, -1);
      CHECK(eval_at(trace_order_poly(o), lam).zero());
      CHECK(trace_order_poly(o).degree() == euler_phi(o) / 2);
    }
    CHECK(trace_order_poly(4) == k);
    CHECK(trace_order_poly(6) == k - KPoly(1L));
  }

  TEST_CASE("cyclotomic product identity") {
    for (long m : {5L, 8L, 12L, 20L}) {
      CycloElem lam = CycloElem::zeta(m, 1) + CycloElem::zeta(m, -1);
      for (long i = 1; i < m; ++i) {
        CycloElem lhs = lam * (CycloElem::zeta(m, i) + CycloElem::zeta(m, -i));
        CycloElem rhs = CycloElem::zeta(m, i - 1) + CycloElem::zeta(m, 1 - i) + CycloElem::zeta(m, i + 1) +
                        CycloElem::zeta(m, -i - 1);
        CHECK(lhs == rhs);
      }
    }
    CHECK(CycloElem::zeta(7, 3).pow(7) == CycloElem(7, Rational(1)));
  }

  TEST_CASE("chebyshev u_n") {
    CHECK(chebyshev_u(1) == KPoly(1L));
    CHECK(chebyshev_u(2) == poly({0, 0, 1}));
    CHECK(chebyshev_u(3) == poly({-1, 0, 1}));
    CHECK_THROWS_AS(chebyshev_u(0), DomainError);
    for (long n = 1; n <= 16; ++n) {
      KPoly u = chebyshev_u(n);
      CHECK(u.lead() == 1);
      CHECK(is_integral(u));
      for (int i = 1; i <= u.degree(); i += 2) CHECK(is_zero(u[i]));
      for (long m = 1; m < n; ++m) {
        CycloElem x = CycloElem::zeta(2 * n, m) + CycloElem::zeta(2 * n, -m);
        CHECK(eval_at(u, x).zero());
      }
    }
  }

  TEST_CASE("bareiss determinant") {
    PolyMatrix a(2, 2);
    a.at(0, 0) = k;
    a.at(1, 1) = k;
    CHECK(bareiss_det(a) == k * k);
    PolyMatrix b(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) b.at(i, j) = KPoly(1L);
    CHECK(bareiss_det(b).zero());
    CHECK_THROWS_AS(bareiss_det(PolyMatrix(2, 3)), DomainError);
  }

  TEST_CASE("bareiss agrees with cofactor expansion and interpolation") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> d(-4, 4);
    for (int n = 1; n <= 5; ++n)
      for (int rep = 0; rep < 6; ++rep) {
        PolyMatrix m(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) m.at(i, j) = rep % 2 ? poly({d(rng)}) : poly({d(rng), d(rng)});
        KPoly ref = cofactor_det(m);
        CHECK(bareiss_det(m) == ref);
        CHECK(interpolation_det(m) == ref);
      }
  }

  TEST_CASE("rank profile mod p") {
    PolyMatrix m(2, 3);
    m.at(0, 0) = k;
    m.at(1, 0) = k;
    m.at(0, 1) = k * Rational(2);
    m.at(1, 1) = k * Rational(2);
    m.at(0, 2) = KPoly(1L);
    CHECK(rank_mod_p(m, 3, 101) == 2);
    CHECK(pivot_columns_mod_p(m, 3, 101) == std::vector<int>{0, 2});
    CHECK(rank_mod_p(m, 0, 101) == 1);
  }
}
