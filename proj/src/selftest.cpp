#include <markoff/selftest.hpp>

#include <markoff/certify.hpp>
#include <markoff/markoff.hpp>
#include <markoff/nielsen.hpp>
#include <markoff/reduce.hpp>
#include <markoff/spectral.hpp>

#include <chrono>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

namespace markoff {

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

std::vector<std::uint64_t> odd_primes(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = std::max<std::uint64_t>(lo, 3); p <= hi; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

// Runs body with a failure counter; exceptions count as failures.
CheckResult timed(int id, std::string name, const std::function<std::string(long&)>& body) {
  CheckResult r;
  r.id = id;
  r.name = std::move(name);
  const auto start = std::chrono::steady_clock::now();
  long failures = 0;
  try {
    r.detail = body(failures);
  } catch (const std::exception& e) {
    ++failures;
    r.detail = std::string("exception: ") + e.what();
  }
  r.pass = failures == 0;
  if (failures) r.detail = std::to_string(failures) + " failure(s); " + r.detail;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

SymPoly random_poly(std::mt19937& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree), coef(-5, 5), terms(1, 8);
  SymPoly f;
  const int n = terms(rng);
  for (int i = 0; i < n; ++i) {
    const int d = deg(rng);
    const int a = std::uniform_int_distribution<int>(0, d)(rng);
    const int b = std::uniform_int_distribution<int>(0, d - a)(rng);
    const int c = coef(rng);
    if (c) f.add_term(KPoly(Rational(c)), a, b, d - a - b);
  }
  return f;
}

}  // namespace

CheckResult check_reduction_anchors() {
  return timed(1, "reduction anchors", [](long& bad) {
    const KPoly zero(0L);
    const SymPoly f = parse_poly("y^4 - y^2*z^2 + 1/2*x^2*y^2");
    if (to_string(phi(f, zero)) != "x^4 - 3*x^2") ++bad;
    const PhiXResult<KPoly> px = phi_x(parse_poly("x*y^4 - x*y^2*z^2 + 1/2*x^3*y^2"), zero);
    if (!px.xpart.zero() || !px.yzpart.zero()) ++bad;
    if (to_string(phi(parse_poly("x^4*y^2"), zero)) != "2*x^4 + 24*x^2") ++bad;
    if (to_string(phi(parse_poly("x^2*y^2*z^2"), zero)) != "3*x^4 + 36*x^2") ++bad;
    return std::string("4 anchors at k = 0");
  });
}

CheckResult check_orbit_sum_preservation(std::uint64_t max_p, int polys, int max_degree) {
  return timed(2, "orbit-sum preservation", [=](long& bad) {
    std::mt19937 rng(20240601);
    std::vector<SymPoly> corpus;
    std::vector<UPoly<KPoly>> reduced;
    std::vector<SymPoly> reduced_x;
    const KPoly k = kappa();
    while (static_cast<int>(corpus.size()) < polys) {
      SymPoly f = random_poly(rng, max_degree);
      if (f.zero()) continue;
      reduced.push_back(phi(f, k));
      reduced_x.push_back(to_tripoly(phi_x(f, k)));
      corpus.push_back(std::move(f));
    }
    long orbits = 0, checks = 0;
    for (std::uint64_t p : odd_primes(3, max_p))
      for (std::uint64_t kv = 0; kv < p; ++kv) {
        if (kv == 4 % p) continue;
        std::vector<ModPoly> fm, rm, xm;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
          fm.push_back(reduce_mod(corpus[i], p, kv));
          rm.push_back(reduce_mod(SymPoly::from_x(reduced[i]), p, kv));
          xm.push_back(reduce_mod(reduced_x[i], p, kv));
        }
        for (const auto& o : enumerate_orbits(p, kv, Generators::Full).orbits) {
          const OrbitSums sums(gamma_orbit(o.rep, Generators::Full), 2 * max_degree);
          ++orbits;
          for (std::size_t i = 0; i < corpus.size(); ++i, ++checks)
            if (sums.sum(fm[i]) != sums.sum(rm[i])) ++bad;
        }
        for (const auto& o : enumerate_orbits(p, kv, Generators::FirstCoordinate).orbits) {
          const OrbitSums sums(gamma_orbit(o.rep, Generators::FirstCoordinate), 2 * max_degree);
          ++orbits;
          for (std::size_t i = 0; i < corpus.size(); ++i, ++checks)
            if (sums.sum(fm[i]) != sums.sum(xm[i])) ++bad;
        }
      }
    return std::to_string(polys) + " polynomials of degree <= " + std::to_string(max_degree) + ", " +
           std::to_string(orbits) + " orbits, " + std::to_string(checks) + " sums";
  });
}

CheckResult check_first_coordinate_counts(std::uint64_t max_p) {
  return timed(3, "first-coordinate counts", [=](long& bad) {
    long checks = 0;
    for (std::uint64_t p : odd_primes(3, max_p))
      for (std::uint64_t k = 0; k < p; ++k) {
        std::vector<long> count(p, 0);
        for (const auto& t : all_triples(p, k)) ++count[t.x];
        for (std::uint64_t a = 0; a < p; ++a) {
          if (a == 2 % p || a == p - 2 || mul_mod(a, a, p) == k) continue;
          const Fp disc = Fp(p, static_cast<long long>(mul_mod(a, a, p))) - Fp(p, 4);
          ++checks;
          if (count[a] != static_cast<long>(p) - quad_char(disc)) ++bad;
        }
      }
    return std::to_string(checks) + " (p, k, alpha) cases";
  });
}

CheckResult check_main_theorem(std::uint64_t max_p) {
  return timed(4, "single-orbit theorem", [=](long& bad) {
    long cases = 0;
    for (std::uint64_t p : odd_primes(5, max_p))
      for (std::uint64_t k = 0; k < p; ++k) {
        if (k == 4 % p) continue;
        ++cases;
        if (!verify_main1(p, k).matches) ++bad;
      }
    return std::to_string(cases) + " (p, k) cases, 5 <= p <= " + std::to_string(max_p);
  });
}

CheckResult check_nielsen_counts(const std::vector<std::uint64_t>& primes) {
  return timed(5, "Nielsen orbit counts", [=](long& bad) {
    long with_pairs = 0, without = 0;
    for (std::uint64_t p : primes) {
      const Sl2Group g(p);
      for (std::uint64_t k = 0; k < p; ++k) {
        if (k == 4 % p) continue;
        const NielsenReport r = nielsen_orbits(g, k);
        if (!r.trace_constant) ++bad;
        if (r.orbit_count == 0) {
          ++without;
          continue;
        }
        ++with_pairs;
        if (r.orbit_count != expected_nielsen_orbits(p, k)) ++bad;
      }
    }
    return std::to_string(with_pairs) + " strata checked, " + std::to_string(without) + " without generating pairs";
  });
}

CheckResult check_formula_oracles() {
  return timed(6, "formula oracles", [](long& bad) {
    long checks = 0;
    auto expect = [&](bool ok) {
      ++checks;
      if (!ok) ++bad;
    };
    for (int n = 0; n <= 8; ++n)
      for (int m = 0; m <= 3; ++m) expect(check_monomial_expansion(n, m));
    for (int n = 0; n <= 6; ++n)
      for (int m = 0; m <= n; ++m) expect(check_spectral_form(n, m));
    for (int n = 1; n <= 10; ++n)
      for (int l = 0; l < n; ++l)
        for (int m = 0; l + m < n; ++m) expect(check_lambda_moment(n, l, m));
    for (int n = 0; n <= 6; ++n)
      for (int j = 0; j <= 6; ++j) expect(check_central_binomial_sum(n, j));
    for (std::uint64_t p : {101ull, 103ull}) {
      for (std::uint64_t k = 1; k < p; ++k) {
        if (k == 4) continue;
        expect(check_product_formulas(p, k));
      }
      for (std::uint64_t k : {1ull, 5ull, 7ull})
        for (std::uint64_t a = 1; a < p; a += 3) {
          if (a == 4) continue;
          for (int j = 0; j <= 5; ++j) expect(check_fj_closed_form(p, k, a, j));
        }
    }
    return std::to_string(checks) + " identities";
  });
}

CheckResult check_qvector_anchors() {
  return timed(7, "q-vector anchors", [](long& bad) {
    long checks = 0;
    for (std::uint64_t p : {13ull, 101ull})
      for (int n = 1; n <= 4; ++n) {
        ++checks;
        if (!(qn_published(n, p) == qn_direct(n, p))) ++bad;
      }
    long two = 0, three = 0;
    for (std::uint64_t p : {101ull, 103ull}) {
      for (std::uint64_t k = 1; k < p; ++k) {
        if (k == 4) continue;
        const LocalDeterminants d = local_determinants(p, k);
        if (d.chi == 1 && k != 3) {
          ++two;
          if (d.two_by_two != d.expected_two) ++bad;
        } else if (d.chi == -1) {
          ++three;
          if (d.three_by_three != d.expected_three) ++bad;
        }
      }
      ++checks;
      if (local_determinants(p, 0).zero_case != Fp(p, -80)) ++bad;
    }
    return std::to_string(checks) + " vector/zero checks, " + std::to_string(two) + " 2x2 and " + std::to_string(three) +
           " 3x3 determinants";
  });
}

CheckResult check_certification(int d, unsigned threads) {
  return timed(8, "certification d=" + std::to_string(d), [=](long& bad) {
    ReductionCache cache;
    CertifyOptions opts;
    opts.threads = threads;
    const Certificate c = certify(d, cache, opts);
    if (!c.verdict) ++bad;
    if (!c.strip.residual_divides_target || !c.strip.primes_exempt) ++bad;
    std::ostringstream os;
    os << "verdict " << (c.verdict ? "true" : "inconclusive") << ", residual " << to_string(c.strip.residual)
       << ", (k-4)^" << c.strip.b << ", " << c.ideal.minors.size() << " minors";
    return os.str();
  });
}

CheckResult check_certificate_integrity(int d, unsigned threads, int flips) {
  return timed(9, "certificate integrity", [=](long& bad) {
    ReductionCache cache;
    CertifyOptions opts;
    opts.threads = threads;
    const std::string text = certificate_json(certify(d, cache, opts));
    if (!recheck(text).ok) ++bad;
    std::mt19937_64 rng(99);
    long detected = 0;
    for (int i = 0; i < flips; ++i) {
      std::string t = text;
      const std::size_t pos = rng() % t.size();
      t[pos] = static_cast<char>(t[pos] ^ (1 << (rng() % 8)));
      if (recheck(t, true).ok)
        ++bad;
      else
        ++detected;
    }
    return "recheck ok, " + std::to_string(detected) + "/" + std::to_string(flips) + " bit flips detected";
  });
}

std::vector<CheckResult> run_selftest(SelftestLevel level, unsigned threads) {
  std::vector<CheckResult> out;
  out.push_back(check_reduction_anchors());
  if (level == SelftestLevel::Full) {
    out.push_back(check_orbit_sum_preservation());
    out.push_back(check_first_coordinate_counts());
    out.push_back(check_main_theorem());
    out.push_back(check_nielsen_counts());
  }
  out.push_back(check_formula_oracles());
  out.push_back(check_qvector_anchors());
  if (level == SelftestLevel::Full) {
    out.push_back(check_certification(5, threads));
    out.push_back(check_certificate_integrity(5, threads));
  }
  return out;
}

std::string format_line(const CheckResult& r) {
  std::ostringstream os;
  os << "[" << (r.pass ? "PASS" : "FAIL") << "] " << r.id << ". " << r.name << ": " << r.detail << " ("
     << std::fixed << std::setprecision(1) << r.seconds << " s)";
  return os.str();
}

}  // namespace markoff
