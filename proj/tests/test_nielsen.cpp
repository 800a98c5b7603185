#include <markoff/nielsen.hpp>

#include "doctest.h"

#include <random>

using namespace markoff;

namespace {

Sl2Mat random_sl2(std::mt19937& rng, std::uint64_t p) {
  std::uniform_int_distribution<long long> d(0, static_cast<long long>(p) - 1);
  while (true) {
    Sl2Mat m{p, static_cast<std::uint64_t>(d(rng)), static_cast<std::uint64_t>(d(rng)),
             static_cast<std::uint64_t>(d(rng)), static_cast<std::uint64_t>(d(rng))};
    if (m.valid()) return m;
  }
}

std::array<std::uint64_t, 3> coords(const MarkoffTriple& t) { return t.coords(); }

}  // namespace

TEST_SUITE("nielsen") {
  TEST_CASE("trace triples") {
    auto I = Sl2Mat::identity(5);
    CHECK(coords(trace_triple({I, I})) == std::array<std::uint64_t, 3>{2, 2, 2});
    auto A = Sl2Mat::make(5, 1, 1, 0, 1), B = Sl2Mat::make(5, 1, 0, 1, 1);
    auto t = trace_triple({A, B});
    CHECK(coords(t) == std::array<std::uint64_t, 3>{2, 2, 3});
    CHECK(t.on_surface());
    CHECK_THROWS_AS(Sl2Mat::make(5, 1, 1, 1, 1), DomainError);
  }

  TEST_CASE("Fricke identity on random pairs") {
    std::mt19937 rng(5);
    for (std::uint64_t p : {5ull, 7ull, 13ull, 101ull})
      for (int i = 0; i < 250; ++i) {
        Sl2Pair pr{random_sl2(rng, p), random_sl2(rng, p)};
        CHECK(trace_triple(pr).on_surface());
      }
  }

  TEST_CASE("Nielsen moves project to the Vieta and permutation maps") {
    std::mt19937 rng(9);
    const std::uint64_t p = 11;
    for (int i = 0; i < 300; ++i) {
      Sl2Pair pr{random_sl2(rng, p), random_sl2(rng, p)};
      auto t = trace_triple(pr);
      auto [x, y, z] = t.coords();
      // (A, AB) -> (x, z, xz - y)
      CHECK(coords(trace_triple(nielsen_product(pr))) ==
            std::array<std::uint64_t, 3>{x, z, (mul_mod(x, z, p) + p - y) % p});
      CHECK(coords(trace_triple(nielsen_swap(pr))) == std::array<std::uint64_t, 3>{y, x, z});
      CHECK(coords(trace_triple(nielsen_invert(pr))) == coords(vieta_move(t, Axis::Z)));
      CHECK(trace_triple(nielsen_product(pr)).kappa == t.kappa);
    }
  }

  TEST_CASE("generation") {
    auto I = Sl2Mat::identity(5);
    CHECK_FALSE(generates({I, I}));
    auto A = Sl2Mat::make(5, 1, 1, 0, 1), B = Sl2Mat::make(5, 1, 0, 1, 1);
    CHECK(generates({A, B}));
    CHECK(Sl2Group(5).order() == 120);
    CHECK_THROWS_AS(generates({Sl2Mat::identity(17), Sl2Mat::identity(17)}), ResourceError);

    // pairs whose trace triple is a category-1 triple never generate
    std::mt19937 rng(2);
    int seen = 0;
    for (int i = 0; i < 4000 && seen < 20; ++i) {
      Sl2Pair pr{random_sl2(rng, 7), random_sl2(rng, 7)};
      auto t = trace_triple(pr);
      if (t.kappa == 4 || classify_nonessential(t) != Category::C1) continue;
      ++seen;
      CHECK_FALSE(generates(pr));
    }
    CHECK(seen > 0);
  }

  TEST_CASE("orbit counts at p = 5 and 7") {
    auto r = nielsen_orbits(5, 0);
    CHECK(r.orbit_count == 2);
    CHECK(r.trace_constant);
    CHECK(nielsen_orbits(7, 0).orbit_count == 1);
    CHECK(nielsen_orbits(5, 3).orbit_count == 1);
    CHECK_THROWS_AS(nielsen_orbits(5, 4), DomainError);
    CHECK_THROWS_AS(nielsen_orbits(13, 1), ResourceError);
    CHECK(report_json(r).find("\"orbit_count\":2") != std::string::npos);
  }

  TEST_CASE("orbit counts for every k at p = 5 and 7") {
    for (std::uint64_t p : {5ull, 7ull}) {
      Sl2Group g(p);
      for (std::uint64_t k = 0; k < p; ++k) {
        if (k == 4 % p) continue;
        auto r = nielsen_orbits(g, k);
        INFO("p=" << p << " k=" << k);
        CHECK(r.trace_constant);
        if (r.orbit_count > 0) CHECK(r.orbit_count == expected_nielsen_orbits(p, k));
      }
    }
  }

  TEST_CASE("generating pairs exist exactly when essential triples do") {
    const std::uint64_t p = 7;
    Sl2Group g(p);
    for (std::uint64_t k = 0; k < p; ++k) {
      if (k == 4) continue;
      std::size_t essential = 0;
      for (const auto& o : enumerate_orbits(p, k).orbits)
        if (o.essential) essential += o.size;
      CHECK((nielsen_orbits(g, k).orbit_count > 0) == (essential > 0));
    }
  }
}
