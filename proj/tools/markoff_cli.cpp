#include <markoff/cache_io.hpp>
#include <markoff/certify.hpp>
#include <markoff/markoff.hpp>
#include <markoff/nielsen.hpp>
#include <markoff/reduce.hpp>
#include <markoff/selftest.hpp>
#include <markoff/spectral.hpp>

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

using namespace markoff;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitResource = 3;
constexpr int kExitUsage = 64;

Rational parse_rational(const std::string& s) {
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0) throw DomainError("not a number: " + s);
  if (r.get_den() == 0) throw DomainError("zero denominator: " + s);
  r.canonicalize();
  return r;
}

// k as "sym" (nullopt) or a rational value.
std::optional<Rational> parse_kappa(const std::string& s) {
  if (s == "sym") return std::nullopt;
  return parse_rational(s);
}

void require_prime(std::uint64_t p) {
  if (p == 2) throw DomainError("p = 2 is not supported; orbit commands need an odd prime");
  if (p < 3 || mpz_probab_prime_p(Integer(std::to_string(p)).get_mpz_t(), 30) == 0)
    throw DomainError("p must be an odd prime, got " + std::to_string(p));
}

std::uint64_t kappa_mod(const std::string& s, std::uint64_t p) {
  const auto k = parse_kappa(s);
  if (!k) throw DomainError("this command needs a numeric k");
  const Fp num(p, static_cast<long long>(Integer(k->get_num() % static_cast<unsigned long>(p)).get_si()));
  const Fp den(p, static_cast<long long>(Integer(k->get_den() % static_cast<unsigned long>(p)).get_si()));
  if (is_zero(den)) throw DomainError("k has a denominator divisible by p");
  return (num * den.inv()).v;
}

std::vector<std::uint64_t> kappa_range(const std::string& s, std::uint64_t p) {
  if (!s.empty()) return {kappa_mod(s, p)};
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 0; k < p; ++k)
    if (k != 4 % p) out.push_back(k);
  return out;
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ResourceError("cannot write " + path);
  out << text << '\n';
  if (!out) throw ResourceError("write failed for " + path);
}

void load_into(ReductionCache& cache, const std::string& path) {
  switch (load_cache(cache, path)) {
    case CacheLoad::VersionMismatch:
      std::cerr << "warning: cache " << path << " has another format version; rebuilding\n";
      break;
    case CacheLoad::Missing:
    case CacheLoad::Loaded:
      break;
  }
}

// ---------------------------------------------------------------------------

struct ReduceArgs {
  std::string poly, kappa = "sym", mode = "phi";
};

int run_reduce(const ReduceArgs& a) {
  SymPoly f = parse_poly(a.poly);
  const auto k = parse_kappa(a.kappa);
  KPoly kv = kappa();
  if (k) {
    f = specialize(f, *k);
    kv = KPoly(*k);
  }
  if (a.mode == "phi")
    std::cout << to_string(phi(f, kv)) << '\n';
  else
    std::cout << to_string(to_tripoly(phi_x(f, kv))) << '\n';
  return kExitOk;
}

struct OrbitArgs {
  std::uint64_t p = 0;
  std::string kappa, generators = "full";
};

int run_orbits(const OrbitArgs& a) {
  require_prime(a.p);
  const Generators g = a.generators == "vieta" ? Generators::VietaOnly
                       : a.generators == "first" ? Generators::FirstCoordinate
                                                 : Generators::Full;
  std::cout << report_json(enumerate_orbits(a.p, kappa_mod(a.kappa, a.p), g)) << '\n';
  return kExitOk;
}

struct VerifyArgs {
  std::uint64_t p = 0;
  std::string kappa;
  bool json = false;
};

int run_verify_main1(const VerifyArgs& a) {
  require_prime(a.p);
  bool all = true;
  json rows = json::array();
  if (!a.json) std::cout << "kappa  orbits  exceptional  other  result\n";
  for (std::uint64_t k : kappa_range(a.kappa, a.p)) {
    const Main1Check c = verify_main1(a.p, k);
    all = all && c.matches;
    if (a.json) {
      rows.push_back(json{{"kappa", k}, {"orbits", c.orbit_count}, {"exceptional", c.exceptional_orbits},
                          {"other", c.other_orbits}, {"matches", c.matches}});
    } else {
      std::cout << std::setw(5) << k << std::setw(8) << c.orbit_count << std::setw(13) << c.exceptional_orbits
                << std::setw(7) << c.other_orbits << "  " << (c.matches ? "ok" : "MISMATCH") << '\n';
    }
  }
  if (a.json)
    std::cout << json{{"p", a.p}, {"rows", rows}, {"all_match", all}}.dump() << '\n';
  else
    std::cout << (all ? "all k match" : "some k do not match") << '\n';
  return all ? kExitOk : kExitInconclusive;
}

int run_verify_nielsen(const VerifyArgs& a) {
  require_prime(a.p);
  const Sl2Group g(a.p);
  bool all = true;
  json rows = json::array();
  if (!a.json) std::cout << "kappa  orbits  expected  stratum  result\n";
  for (std::uint64_t k : kappa_range(a.kappa, a.p)) {
    const NielsenReport r = nielsen_orbits(g, k);
    const std::size_t want = expected_nielsen_orbits(a.p, k);
    const bool ok = r.trace_constant && (r.orbit_count == 0 || r.orbit_count == want);
    all = all && ok;
    if (a.json) {
      rows.push_back(json{{"kappa", k}, {"orbits", r.orbit_count}, {"expected", want}, {"stratum", r.stratum_size},
                          {"orbit_sizes", r.orbit_sizes}, {"ok", ok}});
    } else {
      std::cout << std::setw(5) << k << std::setw(8) << r.orbit_count << std::setw(10) << want << std::setw(9)
                << r.stratum_size << "  " << (!ok ? "MISMATCH" : r.orbit_count ? "ok" : "no generating pairs") << '\n';
    }
  }
  if (a.json)
    std::cout << json{{"p", a.p}, {"rows", rows}, {"all_match", all}}.dump() << '\n';
  else
    std::cout << (all ? "all k match" : "some k do not match") << '\n';
  return all ? kExitOk : kExitInconclusive;
}

struct SpectralArgs {
  std::uint64_t p = 101;
  std::string kappa;
  int d = 0;
};

json fp_list(const std::vector<Fp>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.v);
  return a;
}

int run_spectral(const SpectralArgs& a) {
  json out;
  if (a.d) {
    const ColumnPlan plan = make_plan(a.d);
    json classes = json::array();
    for (std::size_t i = 0; i < plan.class_counts.size(); ++i)
      classes.push_back(json{{"n", plan.class_counts[i].first},
                             {"good_classes", plan.class_counts[i].second},
                             {"printed_m", plan.printed_m[i].second}});
    out["d"] = a.d;
    out["nd"] = plan.nd;
    out["classes"] = classes;
    out["skipped"] = plan.skipped;
    std::cout << out.dump() << '\n';
    return kExitOk;
  }
  require_prime(a.p);
  out["p"] = a.p;
  json match = json::object();
  for (int n = 1; n <= 4; ++n) match[std::to_string(n)] = qn_published(n, a.p) == qn_direct(n, a.p);
  out["published_matches_direct"] = match;
  if (!a.kappa.empty()) {
    const std::uint64_t k = kappa_mod(a.kappa, a.p);
    out["kappa"] = k;
    json q = json::object();
    for (int n = 1; n <= 4; ++n) q[std::to_string(n)] = fp_list(qn_direct(n, a.p).at(k));
    out["q"] = q;
    const LocalDeterminants d = local_determinants(a.p, k);
    out["chi"] = d.chi;
    out["determinants"] = json{{"two_by_two", d.two_by_two.v},
                               {"expected_two", d.expected_two.v},
                               {"three_by_three", d.three_by_three.v},
                               {"expected_three", d.expected_three.v},
                               {"branch", d.chi == 1 ? "two_by_two" : d.chi == -1 ? "three_by_three" : "none"}};
    if (k == 0) out["determinants"]["zero_case"] = d.zero_case.v;
  }
  std::cout << out.dump() << '\n';
  return kExitOk;
}

struct CertifyArgs {
  int d = 0;
  std::string out;
  std::optional<int> nd, max_columns;
  int max_minors = 16;
  std::uint64_t seed = 1;
  bool use_cache = false;
};

int run_certify(const CertifyArgs& a, unsigned threads) {
  ReductionCache cache;
  const std::string path = default_cache_path();
  if (a.use_cache) load_into(cache, path);
  CertifyOptions opts;
  opts.nd = a.nd;
  opts.max_columns = a.max_columns;
  opts.max_minors = a.max_minors;
  opts.seed = a.seed;
  opts.threads = threads;
  const Certificate c = certify(a.d, cache, opts);
  if (a.use_cache) save_cache(cache, path);
  const std::string text = certificate_json(c);
  std::ostream& log = a.out.empty() ? std::cerr : std::cout;
  if (a.out.empty())
    std::cout << text << '\n';
  else
    write_file(a.out, text);
  log << "d=" << c.plan.d << " nd=" << c.plan.nd << " columns=" << c.plan.columns.size() << " rows=" << c.plan.rows()
      << " rank=" << c.ideal.rank << " minors=" << c.ideal.minors.size() << '\n';
  for (const auto& s : c.plan.skipped) log << "skipped " << s << '\n';
  if (!c.ideal.element.zero())
    log << "residual " << to_string(c.strip.residual) << ", (k-4)^" << c.strip.b << ", a=" << c.strip.a << '\n';
  log << "verdict " << (c.verdict ? "true" : "inconclusive") << " (" << c.seconds << " s)\n";
  return c.verdict ? kExitOk : kExitInconclusive;
}

struct RecheckArgs {
  std::string in;
  bool skip_minors = false;
};

int run_recheck(const RecheckArgs& a) {
  const RecheckReport r = recheck(read_file(a.in), a.skip_minors);
  if (r.ok) {
    std::cout << "certificate ok\n";
    return kExitOk;
  }
  for (const auto& e : r.errors) std::cout << "error: " << e << '\n';
  return kExitDomain;
}

struct CacheArgs {
  std::string action, path;
  int m = 8, n = 8;
};

int run_cache(const CacheArgs& a) {
  const std::string path = a.path.empty() ? default_cache_path() : a.path;
  ReductionCache cache;
  if (a.action == "build") {
    load_into(cache, path);
    cache.build(a.m, a.n);
    save_cache(cache, path);
    std::cout << "wrote " << cache.size() << " entries to " << path << '\n';
    return kExitOk;
  }
  const CacheLoad st = load_cache(cache, path);
  if (st == CacheLoad::Missing) throw DomainError("no cache at " + path);
  if (st == CacheLoad::VersionMismatch) {
    std::cout << "cache " << path << " has another format version\n";
    return kExitDomain;
  }
  if (a.action == "verify") {
    std::size_t checked = 0;
    for (const auto& [key, v] : cache.snapshot()) {
      if (phi_monomial_z(2 * key.first, 2 * key.second, 0) != v)
        throw DomainError("cache entry (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                          ") differs from a fresh reduction");
      ++checked;
    }
    std::cout << "checksum ok, " << checked << " entries match fresh reductions\n";
  } else {
    std::cout << json{{"path", path}, {"version", ReductionCache::kVersion}, {"entries", cache.size()}}.dump() << '\n';
  }
  return kExitOk;
}

int run_selftest_cmd(const std::string& level, unsigned threads) {
  const auto results = run_selftest(level == "full" ? SelftestLevel::Full : SelftestLevel::Fast, threads);
  bool ok = true;
  for (const auto& r : results) {
    std::cout << format_line(r) << '\n';
    ok = ok && r.pass;
  }
  return ok ? kExitOk : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Markoff surface reductions, orbit verifiers and certificates"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker thread cap (0 = all cores)");

  ReduceArgs ra;
  auto* reduce = app.add_subcommand("reduce", "apply the reduction Phi or Phi_x to a polynomial");
  reduce->add_option("--poly", ra.poly, "polynomial in x, y, z (k allowed)")->required();
  reduce->add_option("--kappa", ra.kappa, "'sym' or a rational value")->capture_default_str();
  reduce->add_option("--mode", ra.mode)->check(CLI::IsMember({"phi", "phi-x"}))->capture_default_str();

  OrbitArgs oa;
  auto* orbits = app.add_subcommand("orbits", "enumerate orbits on the surface over F_p");
  orbits->add_option("--p", oa.p)->required();
  orbits->add_option("--kappa", oa.kappa)->required();
  orbits->add_option("--generators", oa.generators)->check(CLI::IsMember({"full", "vieta", "first"}))
      ->capture_default_str();

  VerifyArgs va, na;
  auto* main1 = app.add_subcommand("verify-main1", "check the single-orbit theorem for every k mod p");
  main1->add_option("--p", va.p)->required();
  main1->add_option("--kappa", va.kappa, "restrict to one k");
  main1->add_flag("--json", va.json);
  auto* niel = app.add_subcommand("verify-nielsen", "count Nielsen classes of generating pairs in SL2(F_p)");
  niel->add_option("--p", na.p)->required();
  niel->add_option("--kappa", na.kappa, "restrict to one k");
  niel->add_flag("--json", na.json);

  SpectralArgs sa;
  auto* spectral = app.add_subcommand("spectral", "q-vectors, determinants and lambda classes");
  spectral->add_option("--p", sa.p)->capture_default_str();
  spectral->add_option("--kappa", sa.kappa);
  spectral->add_option("--d", sa.d, "print the lambda-class plan for d instead");

  CertifyArgs ca;
  auto* cert = app.add_subcommand("certify", "build and check the certification matrix for d");
  cert->add_option("--d", ca.d)->required()->check(CLI::Range(2, 1000));
  cert->add_option("--out", ca.out, "certificate path (stdout when omitted)");
  cert->add_option("--nd", ca.nd);
  cert->add_option("--max-columns", ca.max_columns);
  cert->add_option("--max-minors", ca.max_minors)->capture_default_str();
  cert->add_option("--seed", ca.seed)->capture_default_str();
  cert->add_flag("--cache", ca.use_cache, "load and update the reduction cache");

  RecheckArgs rc;
  auto* rech = app.add_subcommand("recheck", "independently validate a certificate");
  rech->add_option("file", rc.in, "certificate path or -")->required();
  rech->add_flag("--skip-minors", rc.skip_minors);

  CacheArgs cc;
  auto* cache = app.add_subcommand("cache", "manage the persisted reduction table");
  cache->add_option("action", cc.action)->required()->check(CLI::IsMember({"build", "info", "verify"}));
  cache->add_option("--path", cc.path, "defaults to $MARKOFF_CACHE or ./markoff_cache.json");
  cache->add_option("--m", cc.m)->capture_default_str();
  cache->add_option("--n", cc.n)->capture_default_str();

  std::string level = "fast";
  auto* self = app.add_subcommand("selftest", "run the built-in checks");
  self->add_option("--level", level)->check(CLI::IsMember({"fast", "full"}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*reduce) return run_reduce(ra);
    if (*orbits) return run_orbits(oa);
    if (*main1) return run_verify_main1(va);
    if (*niel) return run_verify_nielsen(na);
    if (*spectral) return run_spectral(sa);
    if (*cert) return run_certify(ca, threads);
    if (*rech) return run_recheck(rc);
    if (*cache) return run_cache(cc);
    if (*self) return run_selftest_cmd(level, threads);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::bad_alloc&) {
    std::cerr << "resource limit: out of memory\n";
    return kExitResource;
  }
  return kExitUsage;
}
