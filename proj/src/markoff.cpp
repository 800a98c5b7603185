#include <markoff/kpoly.hpp>
#include <markoff/markoff.hpp>

#include "json.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

namespace markoff {

namespace {

std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return (a + b) % p; }
std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return (a + p - b) % p; }
std::uint64_t neg(std::uint64_t a, std::uint64_t p) { return (p - a) % p; }

MarkoffTriple with(const MarkoffTriple& t, std::uint64_t x, std::uint64_t y, std::uint64_t z) {
  MarkoffTriple r = t;
  r.x = x;
  r.y = y;
  r.z = z;
  return r;
}

void require_odd_prime(std::uint64_t p, std::uint64_t kappa) {
  if (p < 3 || !is_prime(p)) throw DomainError("orbit computations need an odd prime p");
  if (kappa % p == 4 % p) throw DomainError("k = 4 is excluded");
}

// Dense or hashed index of packed triples.
class TripleIndex {
 public:
  explicit TripleIndex(std::uint64_t p) : p_(p) {
    if (p * p * p <= (1ull << 24)) dense_.assign(p * p * p, -1);
  }
  std::uint64_t key(const MarkoffTriple& t) const { return (t.x * p_ + t.y) * p_ + t.z; }
  void insert(const MarkoffTriple& t, int id) {
    if (!dense_.empty())
      dense_[key(t)] = id;
    else
      sparse_[key(t)] = id;
  }
  int find(const MarkoffTriple& t) const {
    if (!dense_.empty()) return dense_[key(t)];
    auto it = sparse_.find(key(t));
    return it == sparse_.end() ? -1 : it->second;
  }

 private:
  std::uint64_t p_;
  std::vector<int> dense_;
  std::unordered_map<std::uint64_t, int> sparse_;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Images under the six coordinate permutations and, optionally, the four
// sign pairs.
std::vector<std::array<std::uint64_t, 3>> symmetric_images(std::array<std::uint64_t, 3> c, std::uint64_t p,
                                                           bool signed_images = true) {
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  static const int signs[4][3] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  std::vector<std::array<std::uint64_t, 3>> out;
  for (const auto& pm : perms)
    for (const auto& sg : signs) {
      if (!signed_images && sg[0] + sg[1] + sg[2] != 3) continue;
      std::array<std::uint64_t, 3> r{};
      for (int i = 0; i < 3; ++i) {
        std::uint64_t v = c[pm[i]];
        r[i] = sg[i] < 0 ? neg(v, p) : v;
      }
      out.push_back(r);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct GoldenRoots {
  std::uint64_t phi, phibar;
};

std::optional<GoldenRoots> golden(std::uint64_t p) {
  auto r = sqrt_mod(Fp(p, 5));
  if (!r) return std::nullopt;
  std::uint64_t half = inv_mod(2, p);
  return GoldenRoots{mul_mod(add(1, r->v, p), half, p), mul_mod(sub(1, r->v, p), half, p)};
}

std::optional<std::uint64_t> root_of(std::uint64_t p, std::uint64_t a) {
  auto r = sqrt_mod(Fp(p, static_cast<long long>(a)));
  if (!r) return std::nullopt;
  return r->v;
}

Fp2 lift(std::uint64_t p, std::uint64_t a) { return Fp2::make(p, a % p, 0); }

// A square root in F_{p^2} of an element of F_p.
Fp2 sqrt_in_fp2(std::uint64_t p, std::uint64_t a) {
  if (auto r = root_of(p, a)) return lift(p, *r);
  std::uint64_t nr = Fp2::nonresidue(p);
  auto r = root_of(p, mul_mod(a, inv_mod(nr, p), p));
  if (!r) throw DomainError("no square root in F_p^2");
  return Fp2::make(p, 0, *r);
}

std::uint64_t base_value(const Fp2& e) {
  if (e.b != 0) throw DomainError("parameterization left F_p");
  return e.a;
}

}  // namespace

bool MarkoffTriple::on_surface() const {
  std::uint64_t lhs = add(add(mul_mod(x, x, p), mul_mod(y, y, p), p), mul_mod(z, z, p), p);
  std::uint64_t rhs = add(mul_mod(mul_mod(x, y, p), z, p), kappa % p, p);
  return lhs == rhs;
}

MarkoffTriple vieta_move(const MarkoffTriple& t, Axis axis) {
  const std::uint64_t p = t.p;
  switch (axis) {
    case Axis::X:
      return with(t, sub(mul_mod(t.y, t.z, p), t.x, p), t.y, t.z);
    case Axis::Y:
      return with(t, t.x, sub(mul_mod(t.x, t.z, p), t.y, p), t.z);
    case Axis::Z:
      break;
  }
  return with(t, t.x, t.y, sub(mul_mod(t.x, t.y, p), t.z, p));
}

std::vector<MarkoffTriple> neighbours(const MarkoffTriple& t, Generators g) {
  std::vector<MarkoffTriple> out;
  const std::uint64_t p = t.p;
  switch (g) {
    case Generators::VietaOnly:
      out = {vieta_move(t, Axis::X), vieta_move(t, Axis::Y), vieta_move(t, Axis::Z)};
      break;
    case Generators::Full:
      out = {vieta_move(t, Axis::X), vieta_move(t, Axis::Y), vieta_move(t, Axis::Z), with(t, t.y, t.x, t.z),
             with(t, t.x, t.z, t.y), with(t, t.x, neg(t.y, p), neg(t.z, p))};
      break;
    case Generators::FirstCoordinate:
      out = {vieta_move(t, Axis::Y), vieta_move(t, Axis::Z), with(t, t.x, t.z, t.y),
             with(t, t.x, neg(t.y, p), neg(t.z, p))};
      break;
  }
  return out;
}

std::vector<MarkoffTriple> gamma_orbit(const MarkoffTriple& t, Generators g) {
  std::set<std::array<std::uint64_t, 3>> seen{t.coords()};
  std::vector<MarkoffTriple> frontier{t}, all{t};
  while (!frontier.empty()) {
    std::vector<MarkoffTriple> next;
    for (const auto& s : frontier)
      for (const auto& n : neighbours(s, g))
        if (seen.insert(n.coords()).second) {
          next.push_back(n);
          all.push_back(n);
        }
    frontier = std::move(next);
  }
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<MarkoffTriple> all_triples(std::uint64_t p, std::uint64_t kappa) {
  if (p < 3 || !is_prime(p)) throw DomainError("p must be an odd prime");
  kappa %= p;
  std::vector<std::vector<std::uint64_t>> roots(p);
  for (std::uint64_t r = 0; r < p; ++r) roots[mul_mod(r, r, p)].push_back(r);
  const std::uint64_t half = inv_mod(2, p);
  std::vector<MarkoffTriple> out;
  for (std::uint64_t x = 0; x < p; ++x)
    for (std::uint64_t y = 0; y < p; ++y) {
      // z^2 - xy z + (x^2 + y^2 - k) = 0
      std::uint64_t b = mul_mod(x, y, p);
      std::uint64_t c = sub(add(mul_mod(x, x, p), mul_mod(y, y, p), p), kappa, p);
      std::uint64_t disc = sub(mul_mod(b, b, p), mul_mod(4, c, p), p);
      std::vector<std::uint64_t> zs;
      for (std::uint64_t r : roots[disc]) zs.push_back(mul_mod(add(b, r, p), half, p));
      std::sort(zs.begin(), zs.end());
      for (std::uint64_t z : zs) out.push_back(MarkoffTriple{p, kappa, x, y, z});
    }
  return out;
}

OrbitSums::OrbitSums(const std::vector<MarkoffTriple>& pts, int max_degree)
    : max_degree_(max_degree), count_(pts.size()) {
  if (pts.empty()) return;
  p_ = pts.front().p;
  std::vector<std::uint64_t> acc;
  std::vector<Exponent> exps;
  for (int a = 0; a <= max_degree; ++a)
    for (int b = 0; a + b <= max_degree; ++b)
      for (int c = 0; a + b + c <= max_degree; ++c) exps.push_back({a, b, c});
  acc.assign(exps.size(), 0);
  std::vector<std::uint64_t> px(max_degree + 1), py(max_degree + 1), pz(max_degree + 1);
  for (const auto& t : pts) {
    px[0] = py[0] = pz[0] = 1 % p_;
    for (int i = 1; i <= max_degree; ++i) {
      px[i] = mul_mod(px[i - 1], t.x, p_);
      py[i] = mul_mod(py[i - 1], t.y, p_);
      pz[i] = mul_mod(pz[i - 1], t.z, p_);
    }
    for (std::size_t i = 0; i < exps.size(); ++i) {
      const auto& e = exps[i];
      acc[i] = add(acc[i], mul_mod(mul_mod(px[e[0]], py[e[1]], p_), pz[e[2]], p_), p_);
    }
  }
  for (std::size_t i = 0; i < exps.size(); ++i) sums_[exps[i]] = acc[i];
}

Fp OrbitSums::sum(const ModPoly& f) const {
  if (count_ == 0) return Fp();
  Fp s(p_, 0);
  for (const auto& [e, c] : f.terms()) {
    auto it = sums_.find(e);
    if (it == sums_.end()) throw DomainError("monomial beyond the tabulated degree");
    s += c * Fp(p_, static_cast<long long>(it->second));
  }
  return s;
}

Fp OrbitSums::sum(const UPoly<Fp>& f) const {
  ModPoly g;
  for (int i = 0; i <= f.degree(); ++i) g.add_term(f[i], i, 0, 0);
  return sum(g);
}

std::string to_string(Category c) {
  switch (c) {
    case Category::Essential:
      return "essential";
    case Category::C1:
      return "1";
    case Category::C2:
      return "2";
    case Category::C3:
      return "3";
    case Category::C4:
      return "4";
    case Category::C5a:
      return "5a";
    case Category::C5b:
      return "5b";
  }
  return "essential";
}

NonessentialTable::NonessentialTable(std::uint64_t p, std::uint64_t kappa) : p_(p), kappa_(kappa % p) {
  auto put = [&](Category cat, std::array<std::uint64_t, 3> base) {
    MarkoffTriple t{p_, kappa_, base[0] % p_, base[1] % p_, base[2] % p_};
    if (!t.on_surface()) return;
    for (const auto& img : symmetric_images(t.coords(), p_)) table_.emplace(img, cat);
  };
  const std::uint64_t k = kappa_;
  if (auto s = root_of(p_, k)) put(Category::C1, {*s, 0, 0});
  if (k == 2 % p_) {
    put(Category::C2, {1, 1, 0});
    put(Category::C2, {1, 1, 1});
  }
  auto g = golden(p_);
  if (g) {
    if (k == add(2, g->phi, p_)) {
      put(Category::C3, {g->phi, g->phi, g->phi});
      put(Category::C3, {g->phi, g->phi, 1});
      put(Category::C3, {g->phi, 0, 1});
    }
    if (k == add(2, g->phibar, p_)) {
      put(Category::C4, {g->phibar, g->phibar, g->phibar});
      put(Category::C4, {g->phibar, g->phibar, 1});
      put(Category::C4, {g->phibar, 0, 1});
    }
  }
  if (k == 3 % p_) {
    if (auto r2 = root_of(p_, 2)) {
      put(Category::C5a, {*r2, 0, 1});
      put(Category::C5a, {*r2, *r2, 1});
    }
    if (g) {
      put(Category::C5b, {g->phi, g->phibar, 0});
      put(Category::C5b, {g->phi, g->phibar, p_ - 1});
      put(Category::C5b, {g->phi, 1, 1});
      put(Category::C5b, {g->phibar, 1, 1});
    }
  }
}

Category NonessentialTable::classify(const MarkoffTriple& t) const {
  auto it = table_.find(t.coords());
  return it == table_.end() ? Category::Essential : it->second;
}

Category classify_nonessential(const MarkoffTriple& t) {
  require_odd_prime(t.p, t.kappa);
  return NonessentialTable(t.p, t.kappa).classify(t);
}

OrbitReport enumerate_orbits(std::uint64_t p, std::uint64_t kappa, Generators g) {
  require_odd_prime(p, kappa);
  OrbitReport rep;
  rep.p = p;
  rep.kappa = kappa % p;
  rep.generators = g;
  auto pts = all_triples(p, kappa);
  rep.total = pts.size();
  TripleIndex index(p);
  for (std::size_t i = 0; i < pts.size(); ++i) index.insert(pts[i], static_cast<int>(i));
  UnionFind uf(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (const auto& n : neighbours(pts[i], g)) uf.unite(i, static_cast<std::size_t>(index.find(n)));

  // Roots are the smallest indices, and pts is sorted, so roots are the
  // lexicographic minima and the orbit list comes out sorted.
  NonessentialTable table(p, kappa);
  std::unordered_map<std::size_t, std::size_t> slot;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::size_t r = uf.find(i);
    auto [it, fresh] = slot.emplace(r, rep.orbits.size());
    if (fresh) {
      OrbitInfo info;
      info.rep = pts[r];
      info.first_counts.assign(p, 0);
      rep.orbits.push_back(std::move(info));
    }
    OrbitInfo& o = rep.orbits[it->second];
    ++o.size;
    ++o.first_counts[pts[i].x];
    Category c = table.classify(pts[i]);
    if (c != Category::Essential && o.essential) {
      o.essential = false;
      o.category = c;
    }
  }
  return rep;
}

std::string report_json(const OrbitReport& r) {
  nlohmann::json j;
  j["p"] = r.p;
  j["kappa"] = r.kappa;
  j["generators"] = r.generators == Generators::VietaOnly ? "vieta" : r.generators == Generators::Full ? "full" : "first";
  j["total"] = r.total;
  auto orbits = nlohmann::json::array();
  auto counts = nlohmann::json::object();
  for (std::size_t i = 0; i < r.orbits.size(); ++i) {
    const auto& o = r.orbits[i];
    nlohmann::json e;
    e["rep"] = {o.rep.x, o.rep.y, o.rep.z};
    e["size"] = o.size;
    e["essential"] = o.essential;
    e["category"] = o.essential ? nlohmann::json(nullptr) : nlohmann::json(to_string(o.category));
    orbits.push_back(e);
    auto row = nlohmann::json::object();
    for (std::size_t a = 0; a < o.first_counts.size(); ++a)
      if (o.first_counts[a]) row[std::to_string(a)] = o.first_counts[a];
    counts[std::to_string(i)] = row;
  }
  j["orbits"] = orbits;
  j["counts"] = counts;
  return j.dump();
}

std::vector<MarkoffTriple> main1_exception_seeds(std::uint64_t p, std::uint64_t kappa) {
  require_odd_prime(p, kappa);
  const std::uint64_t k = kappa % p;
  std::vector<std::array<std::uint64_t, 3>> base;
  if (auto s = root_of(p, k)) base.push_back({*s, 0, 0});
  if (k == 2 % p) base.push_back({1, 1, 1});
  auto g = golden(p);
  if (g) {
    // k = (5 +- sqrt 5)/2 = 2 + phi or 2 + phibar, paired with the same root
    if (k == add(2, g->phi, p)) base.push_back({1, 0, g->phi});
    if (k == add(2, g->phibar, p)) base.push_back({1, 0, g->phibar});
  }
  if (k == 3 % p) {
    if (auto r2 = root_of(p, 2)) base.push_back({1, 0, *r2});
    if (g) {
      base.push_back({g->phi, 1, 1});
      base.push_back({g->phibar, 1, 1});
    }
  }
  std::set<std::array<std::uint64_t, 3>> seen;
  std::vector<MarkoffTriple> out;
  for (const auto& b : base)
    for (const auto& img : symmetric_images(b, p, false)) {
      MarkoffTriple t{p, k, img[0], img[1], img[2]};
      if (t.on_surface() && seen.insert(img).second) out.push_back(t);
    }
  std::sort(out.begin(), out.end());
  return out;
}

Main1Check verify_main1(std::uint64_t p, std::uint64_t kappa) {
  Main1Check c;
  c.p = p;
  c.kappa = kappa % p;
  OrbitReport r = enumerate_orbits(p, kappa, Generators::VietaOnly);
  c.orbit_count = r.orbits.size();
  std::set<std::array<std::uint64_t, 3>> seeds;
  for (const auto& s : main1_exception_seeds(p, kappa)) seeds.insert(s.coords());
  // Orbit membership by walking each orbit once from its representative.
  for (const auto& o : r.orbits) {
    bool hit = false;
    if (!seeds.empty())
      for (const auto& t : gamma_orbit(o.rep, Generators::VietaOnly))
        if (seeds.count(t.coords())) {
          hit = true;
          break;
        }
    if (hit)
      ++c.exceptional_orbits;
    else
      ++c.other_orbits;
  }
  c.matches = c.other_orbits <= 1;
  return c;
}

Parameterization first_coord_parameterize(const MarkoffTriple& t) {
  require_odd_prime(t.p, t.kappa);
  if (!t.on_surface()) throw DomainError("triple is not on the Markoff surface");
  const std::uint64_t p = t.p, k = t.kappa % p, a = t.x;
  Parameterization d;
  d.p = p;
  d.kappa = k;
  d.alpha = a;
  d.rotation = rotation_order(Fp(p, static_cast<long long>(a)));
  const std::uint64_t a2 = mul_mod(a, a, p);
  if (a2 == 4 % p) {
    d.kind = Parameterization::Case::SquareIsFour;
    // For alpha = -2 work with (2, y, -z); the map is undone in enumerate().
    std::uint64_t z = a == 2 % p ? t.z : neg(t.z, p);
    d.beta = lift(p, t.y);
    d.step = lift(p, sub(z, t.y, p));
    return d;
  }
  d.zeta = rotation_root(Fp(p, static_cast<long long>(a)));
  if (a2 == k) {
    d.kind = Parameterization::Case::SquareIsKappa;
    d.beta = lift(p, t.y);
    if (t.y != 0) d.zeta = lift(p, mul_mod(t.z, inv_mod(t.y, p), p));
    return d;
  }
  d.kind = Parameterization::Case::Generic;
  const std::uint64_t q = mul_mod(sub(a2, k, p), inv_mod(sub(a2, 4, p), p), p);
  d.scale = sqrt_in_fp2(p, q);
  // scale*(eta + 1/eta) = y and scale*(zeta eta + 1/(zeta eta)) = z
  const Fp2 zi = d.zeta.inv();
  d.eta = (lift(p, t.z) - lift(p, t.y) * zi) * (d.scale * (d.zeta - zi)).inv();
  return d;
}

std::vector<MarkoffTriple> Parameterization::enumerate() const {
  std::set<std::array<std::uint64_t, 3>> pts;
  auto emit = [&](std::uint64_t y, std::uint64_t z) {
    pts.insert({alpha, y, z});
    pts.insert({alpha, neg(y, p), neg(z, p)});
  };
  switch (kind) {
    case Case::SquareIsFour: {
      const bool flip = alpha != 2 % p;
      const std::uint64_t b = base_value(beta), s = base_value(step);
      for (std::uint64_t n = 0; n < p; ++n) {
        std::uint64_t y = add(b, mul_mod(n, s, p), p);
        for (std::uint64_t z : {add(y, s, p), sub(y, s, p)}) emit(y, flip ? neg(z, p) : z);
      }
      break;
    }
    case Case::SquareIsKappa: {
      const std::uint64_t b = base_value(beta);
      if (b == 0) {
        emit(0, 0);
        break;
      }
      const std::uint64_t zt = base_value(zeta), zi = inv_mod(zt, p);
      std::uint64_t y = b;
      do {
        emit(y, mul_mod(y, zt, p));
        emit(y, mul_mod(y, zi, p));
        y = mul_mod(y, zt, p);
      } while (y != b);
      break;
    }
    case Case::Generic: {
      const std::uint64_t ord = element_order(zeta);
      const Fp2 zi = zeta.inv();
      Fp2 u = eta;
      for (std::uint64_t n = 0; n < ord; ++n) {
        const std::uint64_t y = base_value(scale * (u + u.inv()));
        for (const Fp2& w : {u * zeta, u * zi}) emit(y, base_value(scale * (w + w.inv())));
        u = u * zeta;
      }
      break;
    }
  }
  std::vector<MarkoffTriple> out;
  for (const auto& c : pts) out.push_back(MarkoffTriple{p, kappa, c[0], c[1], c[2]});
  return out;
}

SpanVector x_vector(std::uint64_t p, std::uint64_t alpha) {
  SpanVector v((p + 1) / 2);
  std::uint64_t acc = 1 % p;
  for (auto& c : v) {
    c = acc;
    acc = mul_mod(acc, alpha % p, p);
  }
  return v;
}

SpanVector y_markoff(std::uint64_t p) {
  SpanVector v((p + 1) / 2);
  for (std::size_t i = 0; i < v.size(); ++i) {
    Integer b = binomial(2 * static_cast<long>(i), static_cast<long>(i));
    v[i] = mpz_fdiv_ui(b.get_mpz_t(), p);
  }
  return v;
}

SpanVector surface_vector(std::uint64_t p) {
  SpanVector v = y_markoff(p);
  v.back() = add(v.back(), 1, p);
  return v;
}

std::size_t span_rank(const std::vector<SpanVector>& vs, std::uint64_t p) {
  std::vector<SpanVector> m = vs;
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const std::uint64_t inv = inv_mod(m[rank][c], p);
    for (auto& e : m[rank]) e = mul_mod(e, inv, p);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const std::uint64_t f = m[r][c];
      for (std::size_t j = 0; j < cols; ++j) m[r][j] = sub(m[r][j], mul_mod(f, m[rank][j], p), p);
    }
    ++rank;
  }
  return rank;
}

PperpCheck pperp_check(std::uint64_t p, std::uint64_t kappa) {
  require_odd_prime(p, kappa);
  PperpCheck res;
  res.p = p;
  res.kappa = kappa % p;
  const std::uint64_t k = res.kappa;
  const std::size_t h = (p + 1) / 2;

  std::vector<SpanVector> orbit_vecs;
  for (const auto& o : enumerate_orbits(p, k, Generators::Full).orbits) {
    SpanVector v(h, 0);
    for (std::uint64_t a = 0; a < p; ++a) {
      const std::uint64_t c = o.first_counts[a] % p;
      if (!c) continue;
      SpanVector xa = x_vector(p, mul_mod(a, a, p));
      for (std::size_t i = 0; i < h; ++i) v[i] = add(v[i], mul_mod(c, xa[i], p), p);
    }
    orbit_vecs.push_back(std::move(v));
  }

  auto combo = [&](std::initializer_list<std::pair<std::uint64_t, std::uint64_t>> terms) {
    SpanVector v(h, 0);
    for (auto [coef, at] : terms) {
      SpanVector xa = x_vector(p, at);
      for (std::size_t i = 0; i < h; ++i) v[i] = add(v[i], mul_mod(coef % p, xa[i], p), p);
    }
    return v;
  };
  auto& tgt = res.target;
  tgt.push_back(surface_vector(p));
  if (root_of(p, k)) tgt.push_back(combo({{2, 0}, {1, k}}));
  if (k == 2 % p) tgt.push_back(combo({{1, 0}, {3, 1}}));  // the 16-point orbit: 0 four times, +-1 twelve
  auto g = golden(p);
  if (g) {
    const std::uint64_t f2 = mul_mod(g->phi, g->phi, p), fb2 = mul_mod(g->phibar, g->phibar, p);
    if (k == add(2, g->phi, p)) tgt.push_back(combo({{2, 0}, {3, 1}, {5, f2}}));
    if (k == add(2, g->phibar, p)) tgt.push_back(combo({{2, 0}, {3, 1}, {5, fb2}}));
    if (k == 3 % p) tgt.push_back(combo({{2, 0}, {5, f2}, {5, fb2}, {6, 1}}));
  }
  if (k == 3 % p && root_of(p, 2)) tgt.push_back(combo({{2, 0}, {3, 1}, {4, 2}}));

  res.orbit_span_dim = span_rank(orbit_vecs, p);
  res.target_dim = span_rank(tgt, p);
  std::vector<SpanVector> joint = orbit_vecs;
  joint.insert(joint.end(), tgt.begin(), tgt.end());
  res.joint_dim = span_rank(joint, p);
  res.equal = res.orbit_span_dim == res.target_dim && res.joint_dim == res.target_dim;
  return res;
}

}  // namespace markoff
