#include <markoff/cache_io.hpp>

#include "doctest.h"

#include <cstdio>
#include <fstream>

using namespace markoff;

TEST_SUITE("cli") {
  TEST_CASE("cache text round-trips exactly") {
    ReductionCache a;
    a.build(3, 3);
    const std::string text = cache_text(a);
    ReductionCache b;
    CHECK(load_cache_text(b, text) == CacheLoad::Loaded);
    CHECK(b.size() == a.size());
    CHECK(b.snapshot() == a.snapshot());
    CHECK(cache_text(b) == text);
  }

  TEST_CASE("cache hit equals a fresh reduction") {
    ReductionCache a;
    a.build(2, 2);
    ReductionCache b;
    load_cache_text(b, cache_text(a));
    REQUIRE(b.contains(2, 1));
    CHECK(b.get(2, 1) == phi_monomial_z(4, 2, 0));
  }

  TEST_CASE("corruption and version mismatch") {
    ReductionCache a;
    a.build(2, 2);
    std::string text = cache_text(a);
    const std::size_t at = text.find("\"entries\"");
    REQUIRE(at != std::string::npos);
    std::string bad = text;
    const std::size_t digit = bad.find_first_of("123456789", at + 12);
    bad[digit] = bad[digit] == '9' ? '8' : static_cast<char>(bad[digit] + 1);
    ReductionCache b;
    CHECK_THROWS_AS(load_cache_text(b, bad), DomainError);
    CHECK_THROWS_AS(load_cache_text(b, "{\"version\":"), DomainError);

    std::string other = text;
    other.replace(other.find("\"version\":\"1\""), 13, "\"version\":\"0\"");
    ReductionCache c;
    CHECK(load_cache_text(c, other) == CacheLoad::VersionMismatch);
    CHECK(c.size() == 0);
  }

  TEST_CASE("cache files") {
    const std::string path = "test_cache_roundtrip.json";
    ReductionCache a;
    a.build(2, 3);
    save_cache(a, path);
    ReductionCache b;
    CHECK(load_cache(b, path) == CacheLoad::Loaded);
    CHECK(b.snapshot() == a.snapshot());
    std::remove(path.c_str());
    CHECK(load_cache(b, "does_not_exist.json") == CacheLoad::Missing);
  }
}
