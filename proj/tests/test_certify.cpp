#include <markoff/certify.hpp>

#include "doctest.h"
#include "json.hpp"

#include <random>

using namespace markoff;

namespace {

KPoly lin(long c0, long c1) { return KPoly(std::vector<Rational>{Rational(c0), Rational(c1)}); }

const Certificate& cert5() {
  static ReductionCache cache;
  static const Certificate c = certify(5, cache);
  return c;
}

const std::string& cert5_json() {
  static const std::string s = certificate_json(cert5());
  return s;
}

// Re-serialises a modified document with a valid content hash, so that only
// the semantic checks can catch the change.
std::string rehash(nlohmann::json doc) {
  doc.erase("sha256");
  doc["sha256"] = sha256_hex(doc.dump());
  return doc.dump();
}

std::uint64_t eval_at(const KPoly& f, std::uint64_t t, std::uint64_t p) { return eval_mod(f, t, p); }

}  // namespace

TEST_SUITE("certify") {
  TEST_CASE("prime powers and default n_d") {
    CHECK(prime_power_base(5) == 5);
    CHECK(prime_power_base(8) == 2);
    CHECK(prime_power_base(9) == 3);
    CHECK(prime_power_base(6) == 0);
    CHECK(default_nd(5) == 20);
    CHECK(default_nd(7) == 28);
    CHECK(default_nd(9) == 45);
    CHECK(default_nd(8) == 48);
    CHECK_THROWS_AS(default_nd(12), DomainError);
  }

  TEST_CASE("column plan for d = 5") {
    const ColumnPlan plan = make_plan(5);
    CHECK(plan.nd == 20);
    CHECK(plan.rows() == 18);
    CHECK(plan.columns.size() == 20u);
    const std::vector<std::pair<int, long>> counts{{5, 2}, {10, 4}, {15, 6}, {20, 8}};
    const std::vector<std::pair<int, long>> printed{{5, 1}, {10, 3}, {15, 3}, {20, 7}};
    CHECK(plan.class_counts == counts);
    CHECK(plan.printed_m == printed);
    CHECK(plan.skipped.empty());
    for (const auto& [n, m] : plan.columns) {
      CHECK((2 * n) % 5 == 0);
      CHECK(m >= 0);
    }
  }

  TEST_CASE("skipped n are exactly those without good classes") {
    for (int d : {3, 4, 7, 8}) {
      const ColumnPlan plan = make_plan(d);
      std::size_t zero = 0;
      for (const auto& [n, k] : plan.class_counts)
        if (k == 0) ++zero;
      CHECK(plan.skipped.size() == zero);
      CHECK(plan.columns.size() <= static_cast<std::size_t>(plan.nd));
    }
  }

  TEST_CASE("integer factoring") {
    const Integer n = Integer(1) * 32 * 3 * 1000003 * 1000033;
    const Factorization f = factor_integer(n);
    CHECK(f.cofactor == 1);
    const std::vector<std::pair<Integer, int>> want{{2, 5}, {3, 1}, {1000003, 1}, {1000033, 1}};
    CHECK(f.primes == want);
    // Product of two primes above the trial-division range.
    const Integer semi = Integer("4294967311") * Integer("4294967357");
    const Factorization g = factor_integer(-semi);
    REQUIRE(g.primes.size() == 2u);
    CHECK(g.primes[0].first * g.primes[1].first == semi);
    CHECK_THROWS_AS(factor_integer(0), DomainError);
  }

  TEST_CASE("stripping allowed factors") {
    const KPoly g = lin(-4, 1).pow(2) * lin(-2, 1) * Rational(12);
    const StripResult s = strip_factors(g, 5, 20);
    CHECK(s.b == 2);
    CHECK(s.a == 12);
    CHECK(s.residual == lin(-2, 1));
    CHECK(s.residual_primes.empty());
    CHECK(s.verdict());

    const KPoly h = lin(-3, 1) * Rational(585049);
    CHECK(strip_factors(h, 5, 20).verdict());  // 585049 = -1 mod 10
    const StripResult s7 = strip_factors(h, 7, 28);
    CHECK_FALSE(s7.verdict());
    CHECK(s7.residual_divides_target);
    CHECK_FALSE(s7.primes_exempt);

    const KPoly bad = lin(-4, 1) * lin(-7, 1);
    CHECK_FALSE(strip_factors(bad, 5, 20).residual_divides_target);
    CHECK(target_polynomial() == lin(-3, 1).pow(2) * lin(-2, 1) * KPoly(std::vector<Rational>{5, -5, 1}));
  }

  TEST_CASE("ideal element of small matrices") {
    PolyMatrix one(1, 1);
    one.at(0, 0) = lin(-2, 1) * lin(-3, 1);
    const IdealResult r1 = ideal_element(one);
    CHECK(r1.element == one.at(0, 0));
    CHECK(r1.minors.size() == 1u);

    PolyMatrix two(1, 2);
    two.at(0, 0) = lin(-2, 1) * lin(-3, 1);
    two.at(0, 1) = lin(-3, 1) * lin(-5, 1);
    const IdealResult r2 = ideal_element(two);
    REQUIRE_FALSE(r2.element.zero());
    KPoly core = primitive_part(r2.element);
    core = exact_div(core, lin(-4, 1).pow(root_multiplicity(core, Rational(4))));
    CHECK(core == lin(-3, 1));
    KPoly sum;
    for (std::size_t i = 0; i < r2.minors.size(); ++i) sum += r2.weights[i] * r2.minors[i].det;
    CHECK(sum == r2.element);

    PolyMatrix zero(2, 2);
    CHECK(ideal_element(zero).element.zero());
  }

  TEST_CASE("columns agree with the native prime-field reduction") {
    CertifyOptions opts;
    opts.max_columns = 3;
    const ColumnPlan plan = make_plan(5, opts);
    ReductionCache cache;
    const ColumnMatrix cm = build_columns(plan, cache, 2);
    for (std::uint64_t kappa : {0ULL, 7ULL, 58ULL}) {
      for (int j = 0; j < cm.m.cols(); ++j) {
        const auto [n, m] = plan.columns[j];
        const std::vector<Fp> native = column_mod_p(plan, n, m, 103, kappa);
        REQUIRE(native.size() == static_cast<std::size_t>(plan.rows()));
        const std::uint64_t clear = Integer(cm.clear[j] % 103).get_ui();
        for (int i = 0; i < plan.rows(); ++i) {
          const std::uint64_t want = (native[i].v * clear) % 103;
          CHECK(eval_at(cm.m.at(i, j), kappa, 103) == want);
        }
      }
    }
  }

  TEST_CASE("certify d = 5") {
    const Certificate& c = cert5();
    CHECK(c.verdict);
    CHECK(c.ideal.rank == c.plan.rows());
    CHECK(c.strip.residual_divides_target);
    CHECK(c.strip.primes_exempt);
    for (int j = 0; j < c.matrix.m.cols(); ++j) CHECK(c.matrix.m.column_degree(j) <= c.plan.nd);
    for (const auto& [p, e] : c.strip.a_factors) CHECK(p <= 2 * c.plan.nd);
    for (const auto& [p, e] : c.strip.residual_primes) {
      const Integer r = p % 10;
      CHECK((r == 1 || r == 9));
    }
    KPoly sum;
    for (std::size_t i = 0; i < c.ideal.minors.size(); ++i) sum += c.ideal.weights[i] * c.ideal.minors[i].det;
    CHECK(sum == c.ideal.element);
  }

  TEST_CASE("membership survives reduction at in-scope primes") {
    const Certificate& c = cert5();
    for (std::uint64_t p : {43ULL, 47ULL, 53ULL, 67ULL}) {
      REQUIRE(p % 10 != 1);
      REQUIRE(p % 10 != 9);
      for (std::uint64_t t : {0ULL, 1ULL, 5ULL, 30ULL}) {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < c.ideal.minors.size(); ++i)
          acc = (acc + eval_at(c.ideal.weights[i], t, p) * eval_at(c.ideal.minors[i].det, t, p)) % p;
        CHECK(acc == eval_at(c.ideal.element, t, p));
      }
    }
  }

  TEST_CASE("recorded minors match an independent determinant") {
    const Certificate& c = cert5();
    const MinorRecord& mr = c.ideal.minors.front();
    CHECK(bareiss_det(c.matrix.m.select_columns(mr.columns)) == mr.det);
  }

  TEST_CASE("certificates are reproducible across thread counts") {
    ReductionCache cache;
    CertifyOptions opts;
    opts.threads = 1;
    CHECK(certificate_json(certify(5, cache, opts)) == cert5_json());
  }

  TEST_CASE("recheck accepts the fresh certificate") {
    const RecheckReport r = recheck(cert5_json());
    CHECK(r.ok);
    CHECK(r.errors.empty());
  }

  TEST_CASE("recheck rejects semantic tampering") {
    const auto doc = nlohmann::json::parse(cert5_json());
    CHECK(recheck(rehash(doc)).ok);

    auto residual = doc;
    residual["strip"]["residual"] = nlohmann::json::array({"-3", "1"});
    CHECK_FALSE(recheck(rehash(residual)).ok);

    auto verdict = doc;
    verdict["verdict"] = "inconclusive";
    CHECK_FALSE(recheck(rehash(verdict)).ok);

    auto weight = doc;
    weight["weights"][0][0] = Integer(Integer(weight["weights"][0][0].get<std::string>()) + 1).get_str();
    CHECK_FALSE(recheck(rehash(weight)).ok);

    auto minor = doc;
    minor["minors"][0]["columns"][0] = "19";
    CHECK_FALSE(recheck(rehash(minor)).ok);

    auto entry = doc;
    entry["matrix"]["columns"][0][0][0] = "1";
    CHECK_FALSE(recheck(rehash(entry)).ok);

    CHECK_FALSE(recheck("{}").ok);
    CHECK_FALSE(recheck("not json").ok);
  }

  TEST_CASE("every sampled single-bit flip is detected") {
    const std::string& text = cert5_json();
    std::mt19937_64 rng(7);
    std::vector<std::size_t> positions{0, text.size() - 1, text.size() / 2};
    for (const char* key : {"\"verdict\"", "\"residual\"", "\"sha256\"", "\"fingerprint\"", "\"weights\""}) {
      const std::size_t at = text.find(key);
      REQUIRE(at != std::string::npos);
      positions.push_back(at + std::string(key).size() + 2);
    }
    for (int i = 0; i < 120; ++i) positions.push_back(rng() % text.size());
    for (std::size_t pos : positions) {
      for (int bit : {0, 3, 6}) {
        std::string t = text;
        t[pos] = static_cast<char>(t[pos] ^ (1 << bit));
        CHECK_FALSE(recheck(t, true).ok);
      }
    }
  }
}
