#include <markoff/ffield.hpp>

#include "doctest.h"

using namespace markoff;

TEST_SUITE("ffield") {
  TEST_CASE("quadratic character") {
    CHECK(quad_char(Fp(7, 0)) == 0);
    CHECK(quad_char(Fp(7, 2)) == 1);
    CHECK(quad_char(Fp(5, 2)) == -1);
    for (std::uint64_t p : {5u, 7u, 11u, 13u, 31u}) {
      std::vector<int> sq(p, -1);
      sq[0] = 0;
      for (std::uint64_t s = 1; s < p; ++s) sq[s * s % p] = 1;
      for (std::uint64_t a = 0; a < p; ++a) CHECK(quad_char(Fp(p, a)) == sq[a]);
    }
  }

  TEST_CASE("square roots") {
    CHECK(sqrt_mod(Fp(7, 0))->v == 0);
    CHECK(sqrt_mod(Fp(7, 2))->v == 3);
    CHECK(sqrt_mod(Fp(11, 3))->v == 5);
    for (std::uint64_t p : {5u, 13u, 17u, 41u, 97u, 101u, 113u}) {
      for (std::uint64_t a = 0; a < p; ++a) {
        auto s = sqrt_mod(Fp(p, a));
        CHECK(s.has_value() == (quad_char(Fp(p, a)) >= 0));
        if (s) {
          CHECK((*s * *s).v == a);
          CHECK(s->v <= p - s->v);
        }
      }
    }
  }

  TEST_CASE("F_p^2 arithmetic") {
    Fp2 z = Fp2::make(7, 2, 5);
    CHECK(z.r == 3);
    Fp2 w = Fp2::make(7, 4, 1);
    Fp2 prod = z * w;
    // (2 + 5s)(4 + s) = 8 + 5*3 + (2 + 20)s = 23 + 22s = 2 + s
    CHECK(prod.a == 2);
    CHECK(prod.b == 1);
    CHECK((z * z.inv()).is_one());
  }

  TEST_CASE("rotation order") {
    CHECK(rotation_order(Fp(7, 0)) == 4);
    CHECK(rotation_order(Fp(7, 2)) == 2);
    CHECK(rotation_order(Fp(7, 1)) == 6);
    for (std::uint64_t p : {5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u}) {
      for (std::uint64_t a = 0; a < p; ++a) {
        Fp al(p, a);
        auto r = rotation_order(al);
        CHECK(r % 2 == 0);
        CHECK(r == rotation_order(-al));
        int chi = quad_char(al * al - Fp(p, 4));
        if (chi == 1) CHECK((p - 1) % r == 0);
        if (chi == -1) CHECK((p + 1) % r == 0);
      }
    }
  }

  TEST_CASE("untyped literals adopt the field") {
    Fp a(11, 3);
    CHECK((a * Fp(2L)).v == 6);
    CHECK((Fp(-1L) + a).v == 2);
    CHECK(div_small(a, 2).v == 7);
  }
}
