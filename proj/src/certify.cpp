#include <markoff/certify.hpp>

#include "json.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace markoff {

namespace {

using json = nlohmann::json;

constexpr std::uint64_t kCheckPrime = 2305843009213693951ULL;  // 2^61 - 1

unsigned thread_count(unsigned requested) {
  if (requested) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  threads = std::min<unsigned>(thread_count(threads), static_cast<unsigned>(std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

KPoly lin(long c0, long c1) { return KPoly(std::vector<Rational>{Rational(c0), Rational(c1)}); }

bool is_probable_prime(const Integer& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

constexpr long kRhoSteps = 200000;
constexpr std::size_t kFactorBits = 400;

Integer pollard_rho(const Integer& n, unsigned long c) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  Integer x = 2, y = 2, d = 1;
  long steps = 0;
  auto f = [&](const Integer& v) {
    Integer r = v * v + c;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
    return r;
  };
  while (d == 1) {
    if (++steps > kRhoSteps) return n;
    x = f(x);
    y = f(f(y));
    Integer diff = abs(x - y);
    mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
  }
  return d;
}

void split(const Integer& n, std::map<Integer, int>& out, Integer& cofactor) {
  if (n == 1) return;
  if (mpz_sizeinbase(n.get_mpz_t(), 2) > kFactorBits) {
    cofactor *= n;
    return;
  }
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  for (unsigned long c = 1; c < 8; ++c) {
    const Integer d = pollard_rho(n, c);
    if (d != n) {
      split(d, out, cofactor);
      split(n / d, out, cofactor);
      return;
    }
  }
  cofactor *= n;
}

// ---- JSON helpers: every integer is a decimal string -----------------------

json int_json(const Integer& v) { return v.get_str(); }
json int_json(long v) { return std::to_string(v); }

json poly_json(const KPoly& f) {
  json a = json::array();
  for (int i = 0; i <= f.degree(); ++i) {
    if (f[i].get_den() != 1) throw DomainError("certificate polynomials must be integral");
    a.push_back(f[i].get_num().get_str());
  }
  return a;
}

json factors_json(const std::vector<std::pair<Integer, int>>& f) {
  json a = json::array();
  for (const auto& [p, e] : f) a.push_back(json::array({int_json(p), int_json(static_cast<long>(e))}));
  return a;
}

Integer parse_int(const json& j) {
  if (!j.is_string()) throw DomainError("expected a decimal string");
  const std::string s = j.get<std::string>();
  if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos) throw DomainError("malformed integer");
  return Integer(s);
}

long parse_long(const json& j) {
  const Integer v = parse_int(j);
  if (!v.fits_slong_p()) throw DomainError("integer out of range");
  return v.get_si();
}

KPoly parse_poly(const json& j) {
  if (!j.is_array()) throw DomainError("expected a coefficient list");
  std::vector<Rational> c;
  for (const auto& e : j) c.emplace_back(parse_int(e));
  KPoly f(std::move(c));
  if (!j.empty() && f.degree() != static_cast<int>(j.size()) - 1) throw DomainError("non-canonical polynomial");
  return f;
}

std::vector<std::pair<Integer, int>> parse_factors(const json& j) {
  std::vector<std::pair<Integer, int>> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw DomainError("malformed factor");
    out.emplace_back(parse_int(e[0]), static_cast<int>(parse_long(e[1])));
  }
  return out;
}

json matrix_json(const ColumnMatrix& cm) {
  json cols = json::array();
  for (int j = 0; j < cm.m.cols(); ++j) {
    json col = json::array();
    for (int i = 0; i < cm.m.rows(); ++i) col.push_back(poly_json(cm.m.at(i, j)));
    cols.push_back(std::move(col));
  }
  json clear = json::array();
  for (const auto& c : cm.clear) clear.push_back(int_json(c));
  return json{{"columns", std::move(cols)}, {"clear", std::move(clear)}};
}

constexpr std::size_t kPairings = 4;

// A Z[k]-combination of recorded minors together with its value.
struct Combo {
  KPoly value;
  std::vector<KPoly> w;
};

Combo unit_combo(const KPoly& det, std::size_t index) {
  Combo c{det, std::vector<KPoly>(index + 1)};
  c.w[index] = KPoly(1L);
  return c;
}

Combo combine(const Combo& a, const KPoly& ua, const Combo& b, const KPoly& ub) {
  Combo out{ua * a.value + ub * b.value, std::vector<KPoly>(std::max(a.w.size(), b.w.size()))};
  for (std::size_t i = 0; i < a.w.size(); ++i) out.w[i] += ua * a.w[i];
  for (std::size_t i = 0; i < b.w.size(); ++i) out.w[i] += ub * b.w[i];
  return out;
}

// f(k + a)
KPoly shifted(const KPoly& f, long a) {
  KPoly out;
  const KPoly x = lin(a, 1);
  for (int i = f.degree(); i >= 0; --i) out = out * x + KPoly(f[i]);
  return out;
}

KPoly reversed(const KPoly& f) {
  std::vector<Rational> c(f.coeffs().begin(), f.coeffs().end());
  std::reverse(c.begin(), c.end());
  return KPoly(std::move(c));
}

// f = c (k-4)^b core, core primitive with core(4) != 0.
struct Shape {
  KPoly core;
  int b;
};

Shape shape(const KPoly& f) {
  const int b = root_multiplicity(f, Rational(4));
  return {primitive_part(exact_div(f, lin(-4, 1).pow(b))), b};
}

// Bezout weights (wa, wb) from an xgcd taken in s = 1/(k-4). A common root
// k = 4 modulo a prime turns into a leading-coefficient drop there, so the
// resulting wa*a + wb*b = c (k-4)^N core can avoid primes that every plain
// xgcd of a and b is forced to carry.
std::pair<KPoly, KPoly> reversed_pair(const KPoly& a, const KPoly& b) {
  auto prep = [](const KPoly& f) {
    KPoly p = shifted(f, 4);
    int v = 0;
    while (is_zero(p[v])) ++v;
    std::vector<Rational> c(p.coeffs().begin() + v, p.coeffs().end());
    return std::pair<KPoly, int>(reversed(KPoly(std::move(c))), v);
  };
  const auto [ra, va] = prep(a);
  const auto [rb, vb] = prep(b);
  const XgcdResult y = kpoly_xgcd(ra, rb);
  int n = y.g.degree();
  if (!y.h1.zero()) n = std::max(n, y.h1.degree() + ra.degree());
  if (!y.h2.zero()) n = std::max(n, y.h2.degree() + rb.degree());
  const int top = std::max(va, vb);
  auto back = [&](const KPoly& h, const KPoly& r, int v) {
    if (h.zero()) return KPoly();
    return lin(-4, 1).pow(n - h.degree() - r.degree() + top - v) * shifted(reversed(h), -4);
  };
  return {back(y.h1, ra, va), back(y.h2, rb, vb)};
}

bool exempt_prime(const Integer& p, int d) {
  const Integer r = p % (2 * d);
  return r == 1 || r == 2 * d - 1;
}

}  // namespace

// ---------------------------------------------------------------------------

long prime_power_base(long d) {
  if (d < 2) return 0;
  long q = 0;
  for (long t = 2; t * t <= d; ++t)
    if (d % t == 0) {
      q = t;
      break;
    }
  if (!q) return d;
  long r = d;
  while (r % q == 0) r /= q;
  return r == 1 ? q : 0;
}

int default_nd(int d) {
  const long q = prime_power_base(d);
  if (!q) throw DomainError("d must be a prime power");
  return q == 2 ? 6 * d : q == 3 ? 5 * d : 4 * d;
}

ColumnPlan make_plan(int d, const CertifyOptions& opts) {
  if (d < 2) throw DomainError("certification needs d >= 2");
  ColumnPlan plan;
  plan.d = d;
  plan.nd = opts.nd ? *opts.nd : default_nd(d);
  if (plan.nd < d) throw DomainError("n_d must be at least d");
  plan.row_lo = opts.row_lo;
  plan.row_hi = opts.row_hi ? *opts.row_hi : plan.nd;
  if (plan.row_lo < 0 || plan.row_hi < plan.row_lo) throw DomainError("empty row range");
  const std::size_t cap = static_cast<std::size_t>(opts.max_columns ? *opts.max_columns : plan.nd);
  for (int n = 1; n <= plan.nd; ++n) {
    if ((2 * n) % d) continue;
    const auto rep = lambda_classes(d, n);
    plan.class_counts.emplace_back(n, static_cast<long>(rep.good.size()));
    plan.printed_m.emplace_back(n, rep.printed_m);
    if (rep.good.empty()) {
      plan.skipped.push_back("n=" + std::to_string(n) + ": no class of order divisible by " + std::to_string(2 * d) +
                             ", column is zero");
      continue;
    }
    for (std::size_t m = 0; m < rep.good.size() && plan.columns.size() < cap; ++m)
      plan.columns.emplace_back(n, static_cast<int>(m));
  }
  return plan;
}

SymPoly column_polynomial(int d, int n, int m) {
  const KPoly g = g_dn_poly(d, n);
  const UPoly<KPoly> G = g.map([](const Rational& q) { return KPoly(q); });
  return SymPoly::monomial(KPoly(1L), 2 * m, 0, 0) * SymPoly::from_x2(G) * fn_poly(n);
}

ColumnMatrix build_columns(const ColumnPlan& plan, ReductionCache& cache, unsigned threads) {
  const int rows = plan.rows(), cols = static_cast<int>(plan.columns.size());
  ColumnMatrix out{PolyMatrix(rows, cols), std::vector<Integer>(cols, 1)};
  std::map<int, SymPoly> bases;
  for (const auto& [n, m] : plan.columns)
    if (!bases.count(n)) bases.emplace(n, column_polynomial(plan.d, n, 0));
  parallel_for(static_cast<std::size_t>(cols), threads, [&](std::size_t j) {
    const auto [n, m] = plan.columns[j];
    const UPoly<KPoly> F = cache.phi(SymPoly::monomial(KPoly(1L), 2 * m, 0, 0) * bases.at(n));
    Integer clear = 1;
    std::vector<KPoly> entries;
    for (int i = plan.row_lo; i <= plan.row_hi; ++i) {
      entries.push_back(F.coeff(2 * i));
      mpz_lcm(clear.get_mpz_t(), clear.get_mpz_t(), denominator_lcm(entries.back()).get_mpz_t());
    }
    for (int r = 0; r < rows; ++r) out.m.at(r, static_cast<int>(j)) = entries[r] * Rational(clear);
    out.clear[j] = clear;
  });
  return out;
}

std::vector<Fp> column_mod_p(const ColumnPlan& plan, int n, int m, std::uint64_t p, std::uint64_t kappa_value) {
  const ModPoly f = reduce_mod(column_polynomial(plan.d, n, m), p, kappa_value);
  const UPoly<Fp> F = phi(f, Fp(p, static_cast<long long>(kappa_value % p)));
  std::vector<Fp> out;
  for (int i = plan.row_lo; i <= plan.row_hi; ++i) {
    Fp v = F.coeff(2 * i);
    out.push_back(v.p ? v : Fp(p, static_cast<long long>(static_cast<long>(v.v))));
  }
  return out;
}

// ---------------------------------------------------------------------------

Factorization factor_integer(Integer n) {
  if (n == 0) throw DomainError("cannot factor zero");
  n = abs(n);
  std::map<Integer, int> found;
  Factorization out;
  for (unsigned long p = 2; p < 10000 && n > 1; ++p) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++found[Integer(p)];
      n /= p;
    }
  }
  split(n, found, out.cofactor);
  out.primes.assign(found.begin(), found.end());
  return out;
}

KPoly target_polynomial() { return lin(-3, 1).pow(2) * lin(-2, 1) * KPoly(std::vector<Rational>{5, -5, 1}); }

StripResult strip_factors(const KPoly& g, int d, int nd) {
  if (g.zero()) throw DomainError("cannot strip the zero polynomial");
  if (!is_integral(g)) throw DomainError("ideal element must be integral");
  StripResult s;
  s.b = root_multiplicity(g, Rational(4));
  const KPoly rest = exact_div(g, lin(-4, 1).pow(s.b));
  s.residual = primitive_part(rest);
  const Integer content = integer_content(rest);
  s.sign = rest.lead() < 0 ? -1 : 1;
  const Factorization f = factor_integer(content);
  for (const auto& [p, e] : f.primes) {
    if (p <= 2 * nd) {
      s.a_factors.emplace_back(p, e);
      for (int i = 0; i < e; ++i) s.a *= p;
    } else {
      s.residual_primes.emplace_back(p, e);
      for (int i = 0; i < e; ++i) s.residual_content *= p;
    }
  }
  s.residual_content *= f.cofactor;
  s.residual_divides_target = divides(s.residual, target_polynomial());
  s.primes_exempt = f.cofactor == 1;
  for (const auto& pe : s.residual_primes)
    if (!exempt_prime(pe.first, d)) s.primes_exempt = false;
  return s;
}

IdealResult ideal_element(const PolyMatrix& m, const CertifyOptions& opts, int d, int nd) {
  IdealResult res;
  const int rows = m.rows();
  if (m.cols() < rows || rows == 0) {
    res.rank = rows == 0 ? 0 : rank_mod_p(m, 7919, kCheckPrime);
    return res;
  }
  std::mt19937_64 rng(opts.seed);
  const std::uint64_t t = rng() % kCheckPrime;
  const std::vector<int> profile = pivot_columns_mod_p(m, t, kCheckPrime);
  res.rank = static_cast<int>(profile.size());
  if (res.rank < rows) return res;

  // Candidate minors: the rank profile, then seeded resamples of the columns.
  std::vector<std::vector<int>> cand{profile};
  std::set<std::vector<int>> seen{profile};
  std::vector<int> all(m.cols());
  for (int j = 0; j < m.cols(); ++j) all[j] = j;
  const int max_minors = std::max(1, opts.max_minors);
  for (int tries = 0; static_cast<int>(cand.size()) < max_minors && tries < 50 * max_minors; ++tries) {
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<int> pick(all.begin(), all.begin() + rows);
    std::sort(pick.begin(), pick.end());
    if (!seen.insert(pick).second) continue;
    if (rank_mod_p(m.select_columns(pick), rng() % kCheckPrime, kCheckPrime) < rows) continue;
    cand.push_back(std::move(pick));
  }
  res.candidates = cand.size();

  const unsigned threads = thread_count(opts.threads);
  Combo running;
  std::vector<std::optional<KPoly>> dets(cand.size());
  std::size_t computed = 0;
  for (std::size_t k = 0; k < cand.size(); ++k) {
    if (k >= computed) {
      const std::size_t hi = std::min(cand.size(), computed + threads);
      parallel_for(hi - computed, threads, [&](std::size_t i) {
        dets[computed + i] = interpolation_det(m.select_columns(cand[computed + i]));
      });
      computed = hi;
    }
    const KPoly& det = *dets[k];
    if (det.zero()) continue;
    const std::size_t r = res.minors.size();
    res.minors.push_back({cand[k], det});
    const Combo unit = unit_combo(det, r);
    if (r == 0) {
      running = unit;
    } else {
      bool changed = false;
      const XgcdResult x = kpoly_xgcd(running.value, det);
      if (shape(x.g).core != shape(running.value).core) {
        running = combine(running, x.h1, unit, x.h2);
        changed = true;
      } else {
        // Same core gcd: every pairing yields another c (k-4)^B multiple of it.
        auto merge = [&](const Combo& f) {
          if (f.value.zero()) return;
          const Shape se = shape(running.value), sf = shape(f.value);
          if (se.core != sf.core) return;
          const Integer ce = integer_content(running.value), cf = integer_content(f.value);
          Integer g, u, v;
          mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), ce.get_mpz_t(), cf.get_mpz_t());
          if (g == ce) return;
          if (sgn(running.value.lead()) < 0) u = -u;
          if (sgn(f.value.lead()) < 0) v = -v;
          const int top = std::max(se.b, sf.b);
          running = combine(running, lin(-4, 1).pow(top - se.b) * Rational(u), f, lin(-4, 1).pow(top - sf.b) * Rational(v));
          changed = true;
        };
        merge(combine(running, x.h1, unit, x.h2));
        for (std::size_t j = r, paired = 0; j-- > 0 && paired < kPairings; ++paired) {
          const Combo mj = unit_combo(res.minors[j].det, j);
          const XgcdResult y = kpoly_xgcd(res.minors[j].det, det);
          merge(combine(mj, y.h1, unit, y.h2));
          const auto [wj, wk] = reversed_pair(res.minors[j].det, det);
          merge(combine(mj, wj, unit, wk));
        }
      }
      if (!changed) {
        res.minors.pop_back();
        continue;
      }
    }
    res.element = running.value;
    res.weights = running.w;
    res.weights.resize(res.minors.size());
    if (d > 0 && divides(primitive_part(exact_div(res.element, lin(-4, 1).pow(root_multiplicity(res.element, Rational(4))))),
                         target_polynomial()) &&
        strip_factors(res.element, d, nd).verdict())
      break;
  }
  return res;
}

// ---------------------------------------------------------------------------

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr))
    throw ResourceError("SHA-256 failed");
  std::string hex;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

Certificate certify(int d, ReductionCache& cache, const CertifyOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  Certificate c;
  c.seed = opts.seed;
  c.plan = make_plan(d, opts);
  c.matrix = build_columns(c.plan, cache, opts.threads);

  // Fallback when the plan cannot reach full rank: more m for the largest n.
  if (!c.plan.columns.empty()) {
    const int rows = c.plan.rows();
    int extra = 0;
    while (extra < opts.extra_columns &&
           (c.matrix.m.cols() < rows || rank_mod_p(c.matrix.m, 7919, kCheckPrime) < rows)) {
      const int n = c.plan.columns.back().first;
      c.plan.columns.emplace_back(n, c.plan.columns.back().second + 1);
      ++extra;
      c.matrix = build_columns(c.plan, cache, opts.threads);
    }
  }
  c.fingerprint = sha256_hex(matrix_json(c.matrix).dump());
  c.ideal = ideal_element(c.matrix.m, opts, d, c.plan.nd);
  if (!c.ideal.element.zero()) {
    c.strip = strip_factors(c.ideal.element, d, c.plan.nd);
    c.verdict = c.strip.verdict();
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return c;
}

std::string certificate_json(const Certificate& c) {
  json plan;
  plan["d"] = int_json(static_cast<long>(c.plan.d));
  plan["nd"] = int_json(static_cast<long>(c.plan.nd));
  plan["rows"] = json::array({int_json(static_cast<long>(c.plan.row_lo)), int_json(static_cast<long>(c.plan.row_hi))});
  json cols = json::array();
  for (const auto& [n, m] : c.plan.columns) cols.push_back(json::array({int_json(static_cast<long>(n)), int_json(static_cast<long>(m))}));
  plan["columns"] = std::move(cols);
  plan["skipped"] = c.plan.skipped;
  json counts = json::array(), printed = json::array();
  for (const auto& [n, k] : c.plan.class_counts) counts.push_back(json::array({int_json(static_cast<long>(n)), int_json(k)}));
  for (const auto& [n, k] : c.plan.printed_m) printed.push_back(json::array({int_json(static_cast<long>(n)), int_json(k)}));
  plan["class_counts"] = std::move(counts);
  plan["printed_m"] = std::move(printed);

  json minors = json::array();
  for (const auto& mr : c.ideal.minors) {
    json cs = json::array();
    for (int j : mr.columns) cs.push_back(int_json(static_cast<long>(j)));
    minors.push_back(json{{"columns", std::move(cs)}, {"det", poly_json(mr.det)}});
  }
  json weights = json::array();
  for (const auto& w : c.ideal.weights) weights.push_back(poly_json(w));

  json doc;
  doc["schema"] = int_json(static_cast<long>(Certificate::kSchema));
  doc["d"] = int_json(static_cast<long>(c.plan.d));
  doc["seed"] = int_json(Integer(std::to_string(c.seed)));
  doc["plan"] = std::move(plan);
  doc["matrix"] = matrix_json(c.matrix);
  doc["fingerprint"] = c.fingerprint;
  doc["minors"] = std::move(minors);
  doc["weights"] = std::move(weights);
  doc["ideal_element"] = poly_json(c.ideal.element);
  doc["diagnostics"] = json{{"rank", int_json(static_cast<long>(c.ideal.rank))},
                            {"rows", int_json(static_cast<long>(c.plan.rows()))},
                            {"candidates", int_json(static_cast<long>(c.ideal.candidates))}};
  if (!c.ideal.element.zero()) {
    doc["strip"] = json{{"b", int_json(static_cast<long>(c.strip.b))},
                        {"a", int_json(c.strip.a)},
                        {"a_factors", factors_json(c.strip.a_factors)},
                        {"sign", int_json(static_cast<long>(c.strip.sign))},
                        {"residual", poly_json(c.strip.residual)},
                        {"residual_content", int_json(c.strip.residual_content)},
                        {"residual_primes", factors_json(c.strip.residual_primes)}};
  }
  doc["verdict"] = c.verdict ? "true" : "inconclusive";
  doc["sha256"] = sha256_hex(doc.dump());
  return doc.dump();
}

// ---------------------------------------------------------------------------

RecheckReport recheck(const std::string& text, bool skip_minors) {
  RecheckReport rep;
  auto fail = [&](std::string msg) { rep.errors.push_back(std::move(msg)); };
  json doc;
  try {
    doc = json::parse(text);
  } catch (const std::exception& e) {
    fail(std::string("not valid JSON: ") + e.what());
    return rep;
  }
  std::string body = text;
  if (!body.empty() && body.back() == '\n') body.pop_back();
  if (!doc.is_object()) {
    fail("certificate is not an object");
    return rep;
  }
  if (doc.dump() != body) fail("certificate text is not in canonical form");
  if (!doc.contains("sha256") || !doc["sha256"].is_string()) {
    fail("missing content hash");
    return rep;
  }
  json inner = doc;
  inner.erase("sha256");
  if (sha256_hex(inner.dump()) != doc["sha256"].get<std::string>()) fail("content hash mismatch");
  if (!rep.errors.empty()) return rep;

  try {
    if (parse_long(doc.at("schema")) != Certificate::kSchema) fail("unknown schema version");
    const long d = parse_long(doc.at("d"));
    const json& plan = doc.at("plan");
    const long nd = parse_long(plan.at("nd"));
    if (parse_long(plan.at("d")) != d) fail("plan is for a different d");
    const long row_lo = parse_long(plan.at("rows").at(0)), row_hi = parse_long(plan.at("rows").at(1));
    const long rows = row_hi - row_lo + 1;
    std::vector<std::pair<long, long>> columns;
    for (const auto& c : plan.at("columns")) {
      columns.emplace_back(parse_long(c.at(0)), parse_long(c.at(1)));
      if ((2 * columns.back().first) % d || columns.back().second < 0) fail("plan column violates d | 2n");
    }

    const json& mj = doc.at("matrix");
    if (sha256_hex(mj.dump()) != doc.at("fingerprint").get<std::string>()) fail("matrix fingerprint mismatch");
    const json& mcols = mj.at("columns");
    if (mcols.size() != columns.size()) fail("matrix width does not match the plan");
    PolyMatrix M(static_cast<int>(rows), static_cast<int>(mcols.size()));
    for (std::size_t j = 0; j < mcols.size(); ++j) {
      if (static_cast<long>(mcols[j].size()) != rows) {
        fail("matrix height does not match the row range");
        return rep;
      }
      for (long i = 0; i < rows; ++i) M.at(static_cast<int>(i), static_cast<int>(j)) = parse_poly(mcols[j][i]);
    }

    std::vector<KPoly> dets;
    for (const auto& mr : doc.at("minors")) {
      std::vector<int> cols;
      for (const auto& c : mr.at("columns")) {
        const long j = parse_long(c);
        if (j < 0 || j >= M.cols()) throw DomainError("minor column out of range");
        cols.push_back(static_cast<int>(j));
      }
      if (static_cast<long>(cols.size()) != rows) fail("minor is not maximal");
      dets.push_back(parse_poly(mr.at("det")));
      if (!skip_minors && interpolation_det(M.select_columns(cols)) != dets.back()) fail("recorded minor is wrong");
    }
    const KPoly element = parse_poly(doc.at("ideal_element"));
    const json& weights = doc.at("weights");
    if (weights.size() != dets.size()) {
      fail("one weight per minor is required");
    } else {
      KPoly sum;
      for (std::size_t k = 0; k < dets.size(); ++k) sum += parse_poly(weights[k]) * dets[k];
      if (sum != element) fail("Bezout data does not reproduce the ideal element");
    }

    bool verdict = false;
    if (doc.contains("strip")) {
      const json& s = doc.at("strip");
      const long b = parse_long(s.at("b"));
      const Integer a = parse_int(s.at("a")), content = parse_int(s.at("residual_content"));
      const long sign = parse_long(s.at("sign"));
      const KPoly residual = parse_poly(s.at("residual"));
      if (sign != 1 && sign != -1) fail("bad sign");
      const KPoly rebuilt = residual * lin(-4, 1).pow(b) * Rational(a * content * sign);
      if (rebuilt != element) fail("stripped factors do not multiply back to the ideal element");
      if (primitive_part(residual) != residual) fail("residual is not primitive");
      if (root_multiplicity(residual, Rational(4)) != 0) fail("(k-4) was not stripped maximally");
      Integer prod = 1;
      for (const auto& [p, e] : parse_factors(s.at("a_factors"))) {
        if (!is_probable_prime(p) || p > 2 * nd) fail("a has a factor that is not a small prime");
        for (int i = 0; i < e; ++i) prod *= p;
      }
      if (prod != a) fail("a does not match its factorization");
      Integer rprod = 1;
      bool exempt = true;
      for (const auto& [p, e] : parse_factors(s.at("residual_primes"))) {
        if (!is_probable_prime(p)) fail("residual prime list has a composite");
        if (p <= 2 * nd) fail("a small prime was left in the residual");
        if (!exempt_prime(p, static_cast<int>(d))) exempt = false;
        for (int i = 0; i < e; ++i) rprod *= p;
      }
      if (rprod != content) fail("residual content does not match its primes");
      verdict = exempt && divides(residual, target_polynomial());
    }
    const std::string claimed = doc.at("verdict").get<std::string>();
    if (claimed != "true" && claimed != "inconclusive") fail("unknown verdict");
    if ((claimed == "true") != verdict) fail("verdict does not follow from the recorded data");
  } catch (const std::exception& e) {
    fail(std::string("malformed certificate: ") + e.what());
  }
  rep.ok = rep.errors.empty();
  return rep;
}

}  // namespace markoff
