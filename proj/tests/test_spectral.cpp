#include <markoff/spectral.hpp>

#include "doctest.h"

#include <set>

using namespace markoff;

namespace {

Rational q(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

std::vector<Rational> rational_part(const std::vector<CycloElem>& v) {
  std::vector<Rational> out;
  for (const auto& c : v) {
    for (std::size_t i = 1; i < c.coords().size(); ++i) REQUIRE(is_zero(c.coords()[i]));
    out.push_back(c.coords().empty() ? Rational(0) : c.coords()[0]);
  }
  return out;
}

std::vector<KPoly> lift(const std::vector<Rational>& v) {
  std::vector<KPoly> out;
  for (const auto& c : v) out.emplace_back(c);
  return out;
}

Rational cor_scale(int n) { return q(n % 2 ? -1 : 1, 2 * n); }

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("basis ordering and matrix shapes") {
    BnBasis b(2);
    REQUIRE(b.size() == 6u);
    CHECK(b[0].i == 2);
    CHECK(b[0].j == 4);
    CHECK(b[2].c == 2);
    CHECK(b[5].i == 0);
    CHECK(b.block_offset(1) == 3u);
    for (int n = 0; n <= 6; ++n) {
      CHECK(BnBasis(n).size() == static_cast<std::size_t>((n * n + 3 * n + 2) / 2));
      CHECK(mn_matrix(n).size() == BnBasis(n).size());
    }
    CHECK(an_matrix(0) == IntMatrix{{2}});
    CHECK(an_matrix(1) == IntMatrix{{0, 2}, {2, 0}});
    CHECK(an_matrix(3) == IntMatrix{{0, 1, 0, 0}, {2, 0, 1, 0}, {0, 1, 0, 2}, {0, 0, 1, 0}});
    CHECK(bn_matrix(2) == IntMatrix{{0, 1, 0}, {0, 0, 1}});
    const auto f = BnBasis(1).polynomial(std::vector<KPoly>{KPoly(1L), KPoly(2L), KPoly(3L)}, kappa());
    CHECK(to_string(f) == to_string(SymPoly::monomial(KPoly(1L), 0, 2, 0) + SymPoly::monomial(KPoly(2L), 0, 1, 1) +
                                    SymPoly::monomial(KPoly(3L), 2, 0, 0) - SymPoly(kappa() * Rational(3))));
  }

  TEST_CASE("A_n eigenvectors") {
    for (int n = 1; n <= 8; ++n)
      for (long j = 0; j < 2L * n; ++j) CHECK(verify_An_eigen(n, CycloElem::zeta(2L * n, j)));
    CHECK_THROWS_AS(verify_An_eigen(3, CycloElem::zeta(5, 1)), DomainError);
  }

  TEST_CASE("multiplication by x acts through M_n") {
    for (int n = 0; n <= 4; ++n) {
      const std::size_t N = BnBasis(n).size();
      std::vector<Rational> v(N);
      for (std::size_t i = 0; i < N; ++i) v[i] = q(static_cast<long>(i * 7 % 5) - 2, static_cast<long>(i % 3) + 1);
      CHECK(check_matrix_step(n, v));
      v.back() = 0;
      CHECK(check_matrix_step(n, v));
    }
  }

  TEST_CASE("eigen-polynomials for lambda != +-2") {
    for (int n = 2; n <= 6; ++n)
      for (long j = 1; j < n; ++j) {
        const auto v = eigen_extension(n, j);
        const CycloElem lam = CycloElem::zeta(2L * n, j) + CycloElem::zeta(2L * n, -j);
        const auto mv = apply_matrix(mn_matrix(n), v);
        for (std::size_t i = 0; i < v.size(); ++i) CHECK(mv[i] == lam * v[i]);
        CHECK(v.back().zero());
      }
    CHECK_THROWS_AS(eigen_extension(3, 3), DomainError);
  }

  TEST_CASE("symmetrised eigen-polynomial reduces to a monic top") {
    for (int n = 2; n <= 6; ++n)
      for (long j = 1; j < n; ++j) {
        CHECK(check_eigen_top(n, j, Rational(7)));
        CHECK(check_eigen_top(n, j, q(1, 3)));
      }
  }

  TEST_CASE("the lambda = 0 eigen-polynomial sums to zero on other orbits") {
    const auto v = rational_part(eigen_extension(2, 1));
    const SymPoly f = BnBasis(2).polynomial(lift(v), kappa());
    for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull})
      for (std::uint64_t k = 0; k < p; ++k) {
        const ModPoly fp = reduce_mod(f, p, k);
        std::set<MarkoffTriple> seen;
        for (const auto& t : all_triples(p, k)) {
          if (t.x == 0 || seen.count(t)) continue;
          const auto orbit = gamma_orbit(t, Generators::FirstCoordinate);
          seen.insert(orbit.begin(), orbit.end());
          CHECK(is_zero(OrbitSums(orbit, 4).sum(fp)));
        }
      }
  }

  TEST_CASE("kernel of the first-coordinate reduction") {
    const KPoly k = kappa();
    const UPoly<KPoly> xk(std::vector<KPoly>{-k, KPoly(1L)}), x4(std::vector<KPoly>{KPoly(-4L), KPoly(1L)});
    for (const UPoly<KPoly>& g : {UPoly<KPoly>(KPoly(1L)), UPoly<KPoly>(std::vector<KPoly>{KPoly(3L), KPoly(0L), KPoly(1L)}),
                                  UPoly<KPoly>(std::vector<KPoly>{k, KPoly(-1L)})}) {
      const SymPoly f = SymPoly::from_x2(g * x4) * SymPoly::monomial(KPoly(1L), 0, 2, 0) -
                        SymPoly::from_x2(g * xk) * KPoly(2L);
      const auto r = phi_x(f, k);
      CHECK(is_zero(r.xpart));
      CHECK(r.yzpart.terms().empty());
    }
  }

  TEST_CASE("f_n has no constant c-coefficient") {
    const SymPoly f1 = fn_poly(1);
    CHECK(is_zero(phi(f1, kappa())));
    for (int n = 1; n <= 6; ++n) CHECK(is_zero(c_numerator(fn_poly(n))));
  }

  TEST_CASE("monomial expansion in the b-basis") {
    for (int n = 0; n <= 8; ++n)
      for (int m = 0; m <= 3; ++m) CHECK(check_monomial_expansion(n, m));
    CHECK(b_poly(0) == KPoly(1L));
    CHECK(b_poly(1) == KPoly(std::vector<Rational>{Rational(-2), Rational(1)}));
  }

  TEST_CASE("spectral form has small remainder") {
    for (int n = 0; n <= 6; ++n)
      for (int m = 0; m <= n; ++m) CHECK(check_spectral_form(n, m));
  }

  TEST_CASE("lambda moments and even expansions") {
    for (int n = 1; n <= 10; ++n)
      for (int l = 0; l < n; ++l)
        for (int m = 0; l + m < n; ++m) CHECK(check_lambda_moment(n, l, m));
    for (int n = 1; n <= 5; ++n)
      for (int l = 0; l <= 2; ++l)
        for (int m = 0; m <= 2; ++m)
          for (int nt = n; nt <= n + 2; ++nt) CHECK(check_even_expansion(n, l, m, nt));
  }

  TEST_CASE("central binomial sum") {
    for (int n = 0; n <= 6; ++n)
      for (int j = 0; j <= 6; ++j) CHECK(check_central_binomial_sum(n, j));
    Rational s;
    for (int i = 1; i <= 3; ++i) s += Rational(binomial(2 * i, i) * binomial(i, 1)) * Rational(1 << (2 * (3 - i)));
    CHECK(s == 140);
  }

  TEST_CASE("eigen-sum expansion of g f_n") {
    for (int n = 2; n <= 7; ++n) {
      const int needed = n - (3 * n) / 4;
      for (int gd = 0; gd <= 2; ++gd) {
        const KPoly g = KPoly::monomial(Rational(1), gd) + KPoly(3L);
        CHECK(eigen_sum_agreement(n, g, cor_scale(n)) >= needed);
      }
    }
    CHECK(eigen_sum_agreement(4, KPoly(1L), q(1, 4)) == 0);
  }

  TEST_CASE("lambda classes and g_{d,n}") {
    auto r = lambda_classes(5, 5);
    CHECK(r.good.size() == 2u);
    r = lambda_classes(5, 10);
    CHECK(r.good.size() == 4u);
    CHECK(r.printed_m == 3);
    for (int d : {3, 4, 5, 7, 8, 9})
      for (int n = 1; n <= 20; ++n) {
        if ((2 * n) % d) continue;
        const auto c = check_g_dn(d, n);
        CHECK(c.kills_bad);
        CHECK(c.spares_good);
      }
    CHECK(g_dn_poly(5, 5).degree() % 2 == 0);
  }

  TEST_CASE("generalized eigenvectors at lambda = 2") {
    for (int n = 0; n <= 5; ++n) {
      const auto set = gen_eigen_lambda2(n);
      const auto M = mn_matrix(n);
      for (int i = 0; i <= n; ++i) {
        const auto mp = apply_matrix(M, set.p[i]);
        for (std::size_t r = 0; r < mp.size(); ++r) {
          Rational expect = 2 * set.p[i][r];
          if (i > 0) expect += set.p[i - 1][r];
          CHECK(mp[r] == expect);
        }
        if (i >= 1) CHECK(is_zero(set.p[i].back()));
      }
    }
    const auto set = gen_eigen_lambda2(2);
    CHECK(set.scale[1] == 1);
    CHECK(set.scale[2] == q(2, 3));
    const KPoly k = kappa();
    const SymPoly expect = SymPoly::monomial(KPoly(q(2, 3)), 0, 4, 0) + SymPoly::monomial(KPoly(q(4, 3)), 0, 3, 1) +
                           SymPoly::monomial(KPoly(q(2, 3)), 0, 2, 2) +
                           SymPoly::monomial(KPoly(q(1, 6)), 2, 2, 0) - SymPoly::monomial(k * q(1, 6), 0, 2, 0);
    CHECK(to_string(gen_eigen_poly(2)) == to_string(expect));
  }

  TEST_CASE("power expansion of x^m p_n") {
    for (int n = 1; n <= 5; ++n)
      for (int m = 0; m <= 8; ++m) CHECK(check_power_expansion(m, n));
  }

  TEST_CASE("q_n: direct, closed form and published agree") {
    for (std::uint64_t p : {13ull, 101ull})
      for (int n = 1; n <= 4; ++n) {
        const auto d = qn_direct(n, p);
        CHECK(d == qn_formula(n, p));
        CHECK(d == qn_published(n, p));
      }
    const auto q2 = qn_direct(2, 101);
    for (std::uint64_t k : {1ull, 5ull, 17ull}) {
      const Fp K(101, static_cast<long long>(k));
      const auto v = q2.at(k);
      CHECK(v[0] == -(K * (Fp(101, 4) - K)));
      CHECK(v[1] == -(K * (Fp(101, 4) - K)) * Fp(101, 2).inv());
      CHECK(is_zero(qn_direct(1, 101).at(k)[0]));
    }
    CHECK_THROWS_AS(qn_direct(1, 15), DomainError);
  }

  TEST_CASE("e/f vectors and their pairings") {
    const auto f0 = f_vec(13, 0);
    CHECK(f0.size() == 7u);
    CHECK(to_string(e_vec(13, 2)[2]) == "1");
    for (std::uint64_t p : {101ull, 103ull})
      for (std::uint64_t k = 1; k < p; ++k) {
        if (k == 4) continue;
        CHECK(check_product_formulas(p, k));
      }
    for (std::uint64_t p : {101ull, 103ull})
      for (std::uint64_t k : {1ull, 5ull, 7ull})
        for (std::uint64_t a = 1; a < p; a += 3) {
          if (a == 4) continue;
          for (int j = 0; j <= 5; ++j) CHECK(check_fj_closed_form(p, k, a, j));
        }
  }

  TEST_CASE("local determinants") {
    for (std::uint64_t p : {101ull, 103ull})
      for (std::uint64_t k = 1; k < p; ++k) {
        if (k == 4) continue;
        const auto d = local_determinants(p, k);
        if (d.chi == 1 && k != 3) CHECK(d.two_by_two == d.expected_two);
        if (d.chi == -1) CHECK(d.three_by_three == d.expected_three);
      }
    for (std::uint64_t p : {101ull, 103ull}) CHECK(local_determinants(p, 0).zero_case == Fp(p, -80));
    CHECK_THROWS_AS(local_determinants(101, 4), DomainError);
  }
}
