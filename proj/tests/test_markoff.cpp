#include <markoff/markoff.hpp>
#include <markoff/reduce.hpp>

#include "doctest.h"

#include <random>
#include <set>

using namespace markoff;

namespace {

const std::vector<std::uint64_t> kSmallPrimes{3, 5, 7, 11, 13, 17, 19, 23, 29, 31};

MarkoffTriple triple(std::uint64_t p, std::uint64_t k, std::uint64_t x, std::uint64_t y, std::uint64_t z) {
  return MarkoffTriple{p, k, x, y, z};
}

int chi(std::uint64_t p, std::uint64_t a) { return quad_char(Fp(p, static_cast<long long>(a % p))); }

bool is_plus_minus_root(std::uint64_t p, std::uint64_t a, std::uint64_t k) { return mul_mod(a, a, p) == k % p; }

SymPoly random_poly(std::mt19937& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree), coef(-3, 3), terms(1, 6);
  SymPoly f;
  int n = terms(rng);
  for (int i = 0; i < n; ++i) {
    int d = deg(rng);
    std::uniform_int_distribution<int> split(0, d);
    int a = split(rng), b = std::uniform_int_distribution<int>(0, d - a)(rng);
    f.add_term(KPoly(Rational(coef(rng))), a, b, d - a - b);
  }
  return f;
}

std::vector<std::vector<MarkoffTriple>> orbit_members(const OrbitReport& r) {
  std::vector<std::vector<MarkoffTriple>> out;
  for (const auto& o : r.orbits) out.push_back(gamma_orbit(o.rep, r.generators));
  return out;
}

}  // namespace

TEST_SUITE("markoff") {
  TEST_CASE("vieta moves") {
    auto t = vieta_move(triple(7, 0, 3, 3, 3), Axis::X);
    CHECK(t.coords() == std::array<std::uint64_t, 3>{6, 3, 3});
    CHECK(t.on_surface());
    CHECK(vieta_move(triple(7, 0, 0, 0, 0), Axis::Z).coords() == std::array<std::uint64_t, 3>{0, 0, 0});
    for (const auto& s : all_triples(11, 5))
      for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
        auto m = vieta_move(s, a);
        CHECK(m.on_surface());
        CHECK(vieta_move(m, a) == s);
      }
  }

  TEST_CASE("enumeration finds every solution") {
    for (std::uint64_t p : {5ull, 7ull, 11ull})
      for (std::uint64_t k = 0; k < p; ++k) {
        std::size_t brute = 0;
        for (std::uint64_t x = 0; x < p; ++x)
          for (std::uint64_t y = 0; y < p; ++y)
            for (std::uint64_t z = 0; z < p; ++z) brute += triple(p, k, x, y, z).on_surface();
        auto pts = all_triples(p, k);
        CHECK(pts.size() == brute);
        CHECK(std::is_sorted(pts.begin(), pts.end()));
      }
  }

  TEST_CASE("orbit of the origin") {
    auto o = gamma_orbit(triple(7, 0, 0, 0, 0), Generators::Full);
    CHECK(o.size() == 1);
  }

  TEST_CASE("small orbit decompositions") {
    auto r = enumerate_orbits(7, 0);
    REQUIRE(r.orbits.size() == 2);
    CHECK(r.orbits[0].rep.coords() == std::array<std::uint64_t, 3>{0, 0, 0});
    CHECK(r.orbits[0].size == 1);
    CHECK(r.orbits[0].category == Category::C1);
    CHECK(r.orbits[1].essential);
    CHECK(r.orbits[1].size == r.total - 1);

    auto r2 = enumerate_orbits(5, 2);
    bool found = false;
    for (const auto& o : r2.orbits)
      for (const auto& t : gamma_orbit(o.rep, Generators::Full))
        if (t.coords() == std::array<std::uint64_t, 3>{1, 1, 1}) {
          found = true;
          CHECK(o.category == Category::C2);
        }
    CHECK(found);

    // sqrt 2 = 3 mod 7; 5 is not a square mod 7, so no golden-ratio orbit
    auto r3 = enumerate_orbits(7, 3);
    std::set<Category> cats;
    for (const auto& o : r3.orbits) cats.insert(o.category);
    CHECK(cats.count(Category::C5a));
    CHECK(!cats.count(Category::C5b));
    CHECK(classify_nonessential(triple(7, 3, 1, 0, 3)) == Category::C5a);
  }

  TEST_CASE("kappa = 4 is rejected") {
    CHECK_THROWS_AS(enumerate_orbits(7, 4), DomainError);
    CHECK_THROWS_AS(enumerate_orbits(9, 0), DomainError);
  }

  TEST_CASE("orbit reports are consistent") {
    for (std::uint64_t p : kSmallPrimes)
      for (std::uint64_t k = 0; k < p; ++k) {
        if (k == 4 % p) continue;
        auto r = enumerate_orbits(p, k);
        std::size_t total = 0;
        for (const auto& o : r.orbits) {
          total += o.size;
          for (std::uint64_t a = 0; a < p; ++a) {
            if (a == 2 || a == p - 2 || is_plus_minus_root(p, a, k)) continue;
            CHECK(static_cast<long>(o.first_counts[a]) <= static_cast<long>(p) - chi(p, mul_mod(a, a, p) + 4 * p - 4));
          }
        }
        CHECK(total == r.total);
        for (std::size_t i = 1; i < r.orbits.size(); ++i) CHECK(r.orbits[i - 1].rep < r.orbits[i].rep);
      }
  }

  TEST_CASE("first-coordinate counts") {
    for (std::uint64_t p : kSmallPrimes)
      for (std::uint64_t k = 0; k < p; ++k) {
        std::vector<long> count(p, 0);
        for (const auto& t : all_triples(p, k)) ++count[t.x];
        for (std::uint64_t a = 0; a < p; ++a) {
          if (a == 2 % p || a == p - 2 || is_plus_minus_root(p, a, k)) continue;
          CHECK(count[a] == static_cast<long>(p) - chi(p, mul_mod(a, a, p) + 4 * p - 4));
        }
      }
  }

  TEST_CASE("first-coordinate orbit sizes divide 2(p - chi)") {
    for (std::uint64_t p : {7ull, 11ull, 13ull, 17ull, 19ull})
      for (std::uint64_t k = 0; k < p; ++k) {
        if (k == 4 % p) continue;
        for (const auto& o : enumerate_orbits(p, k, Generators::FirstCoordinate).orbits) {
          const std::uint64_t a = o.rep.x;
          if (a == 2 % p || a == p - 2 || is_plus_minus_root(p, a, k)) continue;
          const long bound = 2 * (static_cast<long>(p) - chi(p, mul_mod(a, a, p) + 4 * p - 4));
          CHECK(bound % static_cast<long>(o.size) == 0);
        }
      }
  }

  TEST_CASE("whole-surface span vector") {
    for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull})
      for (std::uint64_t k : {0ull, 1ull, 3ull}) {
        SpanVector v((p + 1) / 2, 0);
        for (const auto& t : all_triples(p, k)) {
          auto xa = x_vector(p, mul_mod(t.x, t.x, p));
          for (std::size_t i = 0; i < v.size(); ++i) v[i] = (v[i] + xa[i]) % p;
        }
        CHECK(v == surface_vector(p));
        auto y = y_markoff(p);
        for (std::size_t i = 0; i + 1 < v.size(); ++i) CHECK(v[i] == y[i]);
      }
    CHECK(y_markoff(7) == SpanVector{1, 2, 6, 20 % 7});
  }

  TEST_CASE("classification") {
    CHECK(classify_nonessential(triple(11, 5, 4, 0, 0)) == Category::C1);  // 4^2 = 5
    CHECK(classify_nonessential(triple(11, 5, 0, 7, 0)) == Category::C1);
    CHECK(classify_nonessential(triple(13, 2, 1, 1, 0)) == Category::C2);
    CHECK(classify_nonessential(triple(13, 2, 12, 1, 12)) == Category::C2);
    // 11: sqrt 5 = 4, phi = 5/2 = 8, phibar = -3/2 = 4, 2 + phi = 10
    CHECK(classify_nonessential(triple(11, 10, 8, 8, 8)) == Category::C3);
    CHECK(classify_nonessential(triple(11, 6, 4, 0, 1)) == Category::C4);
    CHECK(classify_nonessential(triple(11, 3, 8, 4, 0)) == Category::C5b);
    // a coordinate of maximal rotation order
    for (const auto& t : all_triples(13, 7)) {
      if (rotation_order(Fp(13, static_cast<long long>(t.x))) != 12) continue;
      if (t.y == 0 || t.z == 0) continue;
      CHECK(classify_nonessential(t) == Category::Essential);
    }
    // every listed base triple lies on its surface
    for (std::uint64_t p : kSmallPrimes)
      for (std::uint64_t k = 0; k < p; ++k) {
        if (k == 4 % p) continue;
        for (const auto& t : all_triples(p, k))
          if (classify_nonessential(t) != Category::Essential) {
            CHECK(t.on_surface());
          }
      }
  }

  TEST_CASE("nonessential orbits consist of listed triples") {
    for (std::uint64_t p : {7ull, 11ull, 13ull, 19ull, 29ull, 31ull})
      for (std::uint64_t k = 0; k < p; ++k) {
        if (k == 4 % p) continue;
        NonessentialTable table(p, k);
        for (const auto& o : enumerate_orbits(p, k).orbits) {
          if (o.essential) continue;
          for (const auto& t : gamma_orbit(o.rep, Generators::Full)) CHECK(table.classify(t) != Category::Essential);
        }
      }
  }

  TEST_CASE("parameterizations reproduce first-coordinate orbits") {
    for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull, 17ull, 23ull})
      for (std::uint64_t k = 0; k < p; ++k) {
        if (k == 4 % p) continue;
        for (const auto& o : enumerate_orbits(p, k, Generators::FirstCoordinate).orbits) {
          auto desc = first_coord_parameterize(o.rep);
          auto bfs = gamma_orbit(o.rep, Generators::FirstCoordinate);
          CHECK(desc.enumerate() == bfs);
        }
      }
  }

  TEST_CASE("parameterization cases") {
    // 3^2 = 9 = k in F_11
    auto d2 = first_coord_parameterize(triple(11, 9, 3, 1, 9));
    CHECK(d2.kind == Parameterization::Case::SquareIsKappa);
    auto d3 = first_coord_parameterize(*std::find_if(all_triples(11, 9).begin(), all_triples(11, 9).end(),
                                                     [](const MarkoffTriple& t) { return t.x == 2; }));
    CHECK(d3.kind == Parameterization::Case::SquareIsFour);
    CHECK(mul_mod(d3.step.a, d3.step.a, 11) == 5);  // k - 4
    CHECK(d3.step.b == 0);

    auto root = gamma_orbit(triple(11, 9, 3, 0, 0), Generators::Full);
    for (const auto& t : root) CHECK(t.on_surface());
    CHECK(first_coord_parameterize(triple(11, 9, 3, 0, 0)).enumerate().size() == 1);

    // a coordinate of rotation order p - 1 has a single first-coordinate orbit
    for (std::uint64_t p : {11ull, 13ull, 19ull})
      for (std::uint64_t k = 0; k < p; ++k) {
        if (k == 4 % p) continue;
        auto r = enumerate_orbits(p, k, Generators::FirstCoordinate);
        for (std::uint64_t a = 0; a < p; ++a) {
          if (rotation_order(Fp(p, static_cast<long long>(a))) != p - 1 || is_plus_minus_root(p, a, k)) continue;
          long n = 0;
          for (const auto& o : r.orbits) n += o.rep.x == a;
          CHECK(n == 1);
        }
      }
  }

  TEST_CASE("double sign change by rotation when 4 divides the rotation order") {
    for (std::uint64_t p : {13ull, 17ull, 29ull}) {
      std::uint64_t k = 6;
      for (const auto& t : all_triples(p, k)) {
        if (rotation_order(Fp(p, static_cast<long long>(t.x))) % 4) continue;
        std::set<std::array<std::uint64_t, 3>> seen{t.coords()};
        std::vector<MarkoffTriple> todo{t};
        while (!todo.empty()) {
          auto s = todo.back();
          todo.pop_back();
          for (Axis a : {Axis::Y, Axis::Z}) {
            auto n = vieta_move(s, a);
            if (seen.insert(n.coords()).second) todo.push_back(n);
          }
        }
        CHECK(seen.count({t.x, (p - t.y) % p, (p - t.z) % p}));
      }
    }
  }

  TEST_CASE("pperp spans") {
    auto c = pperp_check(7, 0);
    CHECK(c.equal);
    auto c2 = pperp_check(13, 2);
    CHECK(c2.equal);
    CHECK(c2.target.size() == 2);  // 2 is not a square mod 13
    // the category-2 orbit has 0 four times and +-1 twelve times as first
    // coordinate, so its vector is 4(x_0 + 3x_1); x_0 + 6x_1 is not in the span
    for (std::uint64_t p : {13ull, 31ull}) {
      std::vector<SpanVector> with_orbits = pperp_check(p, 2).target;
      const std::size_t dim = span_rank(with_orbits, p);
      SpanVector printed = x_vector(p, 0);
      auto x1 = x_vector(p, 1);
      for (std::size_t i = 0; i < printed.size(); ++i) printed[i] = (printed[i] + 6 * x1[i]) % p;
      with_orbits.push_back(printed);
      CHECK(span_rank(with_orbits, p) == dim + 1);
    }
    // 5 is a square mod 11 (4^2), 2 is not
    CHECK(pperp_check(11, 5).target.size() == 2);
    CHECK(pperp_check(11, 2).target.size() == 2);
    for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull})
      for (std::uint64_t k = 0; k < p; ++k) {
        if (k == 4 % p) continue;
        INFO("p=" << p << " k=" << k);
        CHECK(pperp_check(p, k).equal);
      }
  }

  TEST_CASE("main theorem exception list on small primes") {
    for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull, 17ull, 19ull})
      for (std::uint64_t k = 0; k < p; ++k) {
        if (k == 4 % p) continue;
        INFO("p=" << p << " k=" << k);
        CHECK(verify_main1(p, k).matches);
      }
    auto m = verify_main1(7, 3);
    CHECK(m.exceptional_orbits >= 1);
  }

  TEST_CASE("odd polynomials vanish on invariant sets") {
    std::mt19937 rng(3);
    for (std::uint64_t p : {7ull, 13ull})
      for (std::uint64_t k = 0; k < p; ++k) {
        if (k == 4 % p) continue;
        for (const auto& orbit : orbit_members(enumerate_orbits(p, k))) {
          OrbitSums sums(orbit, 5);
          CHECK(is_zero(sums.sum(reduce_mod(parse_poly("x^3*y^2 - 2*x + y*z^2"), p, k))));
          CHECK(is_zero(sums.sum(reduce_mod(parse_poly("x^2*y*z + z^5"), p, k))));
        }
      }
  }

  TEST_CASE("reductions preserve orbit sums") {
    std::mt19937 rng(101);
    std::vector<SymPoly> corpus;
    for (int i = 0; i < 12; ++i) corpus.push_back(random_poly(rng, 8));
    const KPoly k = kappa();
    std::vector<UPoly<KPoly>> reduced;
    std::vector<SymPoly> reduced_x;
    for (const auto& f : corpus) {
      reduced.push_back(phi(f, k));
      reduced_x.push_back(to_tripoly(phi_x(f, k)));
    }
    for (std::uint64_t p : {5ull, 7ull, 11ull})
      for (std::uint64_t kv = 0; kv < p; ++kv) {
        if (kv == 4 % p) continue;
        for (const auto& orbit : orbit_members(enumerate_orbits(p, kv))) {
          OrbitSums sums(orbit, 8);
          for (std::size_t i = 0; i < corpus.size(); ++i)
            CHECK(sums.sum(reduce_mod(corpus[i], p, kv)) == sums.sum(reduce_mod(reduced[i], p, kv)));
        }
        for (const auto& orbit : orbit_members(enumerate_orbits(p, kv, Generators::FirstCoordinate))) {
          OrbitSums sums(orbit, 16);
          for (std::size_t i = 0; i < corpus.size(); ++i)
            CHECK(sums.sum(reduce_mod(corpus[i], p, kv)) == sums.sum(reduce_mod(reduced_x[i], p, kv)));
        }
      }
  }

  TEST_CASE("eigen-polynomial sums vanish away from its eigenvalue") {
    // y^4 - y^2 z^2 + c (x^2 - k) y^2 with c = 1/2 is the lambda = 0, n = 2 case
    SymPoly f = parse_poly("y^4 - y^2*z^2 + 1/2*x^2*y^2 - 1/2*k*y^2");
    for (std::uint64_t p : {7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull})
      for (std::uint64_t k = 0; k < p; ++k) {
        if (k == 4 % p) continue;
        for (const auto& o : enumerate_orbits(p, k, Generators::FirstCoordinate).orbits) {
          if (o.rep.x == 0) continue;
          OrbitSums sums(gamma_orbit(o.rep, Generators::FirstCoordinate), 4);
          CHECK(is_zero(sums.sum(reduce_mod(f, p, k))));
        }
      }
  }

  TEST_CASE("json report") {
    auto j = report_json(enumerate_orbits(7, 0));
    CHECK(j.find("\"orbits\"") != std::string::npos);
    CHECK(j.find("\"rep\":[0,0,0]") != std::string::npos);
    CHECK(j.find("\"category\":\"1\"") != std::string::npos);
  }
}
