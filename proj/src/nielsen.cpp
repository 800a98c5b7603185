#include <markoff/nielsen.hpp>

#include "json.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace markoff {

namespace {

std::uint64_t reduce(long long v, std::uint64_t p) {
  long long r = v % static_cast<long long>(p);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(p) : r);
}

std::uint64_t pack(const Sl2Mat& m) { return ((m.a * m.p + m.b) * m.p + m.c) * m.p + m.d; }

void check_bound(std::uint64_t p, std::uint64_t bound) {
  if (p < 3 || !is_prime(p)) throw DomainError("p must be an odd prime");
  if (p > bound) throw ResourceError("p = " + std::to_string(p) + " exceeds the configured bound " + std::to_string(bound));
}

}  // namespace

Sl2Mat Sl2Mat::make(std::uint64_t p, long long a, long long b, long long c, long long d) {
  Sl2Mat m{p, reduce(a, p), reduce(b, p), reduce(c, p), reduce(d, p)};
  if (!m.valid()) throw DomainError("matrix does not have determinant 1");
  return m;
}

bool Sl2Mat::valid() const { return (mul_mod(a, d, p) + p - mul_mod(b, c, p)) % p == 1 % p; }

Sl2Mat Sl2Mat::inverse() const { return Sl2Mat{p, d, (p - b) % p, (p - c) % p, a}; }

Sl2Mat operator*(const Sl2Mat& x, const Sl2Mat& y) {
  const std::uint64_t p = x.p;
  return Sl2Mat{p, (mul_mod(x.a, y.a, p) + mul_mod(x.b, y.c, p)) % p, (mul_mod(x.a, y.b, p) + mul_mod(x.b, y.d, p)) % p,
                (mul_mod(x.c, y.a, p) + mul_mod(x.d, y.c, p)) % p, (mul_mod(x.c, y.b, p) + mul_mod(x.d, y.d, p)) % p};
}

Sl2Mat commutator(const Sl2Mat& A, const Sl2Mat& B) { return A * B * A.inverse() * B.inverse(); }

MarkoffTriple trace_triple(const Sl2Pair& pr) {
  const std::uint64_t p = pr.A.p;
  const std::uint64_t k = (commutator(pr.A, pr.B).trace() + 2) % p;
  return MarkoffTriple{p, k, pr.A.trace(), pr.B.trace(), (pr.A * pr.B).trace()};
}

Sl2Pair nielsen_product(const Sl2Pair& pr) { return {pr.A, pr.A * pr.B}; }
Sl2Pair nielsen_swap(const Sl2Pair& pr) { return {pr.B, pr.A}; }
Sl2Pair nielsen_invert(const Sl2Pair& pr) { return {pr.A.inverse(), pr.B}; }

bool generates(const Sl2Pair& pr, std::uint64_t bound) {
  const std::uint64_t p = pr.A.p;
  check_bound(p, bound);
  const std::size_t full = static_cast<std::size_t>(p * (p * p - 1));
  std::unordered_set<std::uint64_t> seen{pack(Sl2Mat::identity(p))};
  std::vector<Sl2Mat> frontier{Sl2Mat::identity(p)};
  while (!frontier.empty()) {
    std::vector<Sl2Mat> next;
    for (const auto& m : frontier)
      for (const Sl2Mat* g : {&pr.A, &pr.B}) {
        Sl2Mat n = m * *g;
        if (seen.insert(pack(n)).second) next.push_back(n);
      }
    frontier = std::move(next);
  }
  return seen.size() == full;
}

Sl2Group::Sl2Group(std::uint64_t p) : p_(p) {
  if (p < 3 || !is_prime(p)) throw DomainError("p must be an odd prime");
  lookup_.assign(p * p * p * p, -1);
  for (std::uint64_t a = 0; a < p; ++a)
    for (std::uint64_t b = 0; b < p; ++b)
      for (std::uint64_t c = 0; c < p; ++c)
        for (std::uint64_t d = 0; d < p; ++d) {
          Sl2Mat m{p, a, b, c, d};
          if (!m.valid()) continue;
          lookup_[pack(m)] = static_cast<std::int32_t>(elems_.size());
          elems_.push_back(m);
        }
  const std::size_t n = elems_.size();
  table_.resize(n * n);
  inverse_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    inverse_[i] = static_cast<std::uint32_t>(index(elems_[i].inverse()));
    for (std::size_t j = 0; j < n; ++j) table_[i * n + j] = static_cast<std::uint32_t>(index(elems_[i] * elems_[j]));
  }
}

std::size_t Sl2Group::index(const Sl2Mat& m) const {
  const std::int32_t i = lookup_[pack(m)];
  if (i < 0) throw DomainError("matrix is not in SL_2");
  return static_cast<std::size_t>(i);
}

std::size_t Sl2Group::closure_order(std::size_t i, std::size_t j) const {
  std::vector<char> seen(order(), 0);
  const std::size_t id = index(Sl2Mat::identity(p_));
  seen[id] = 1;
  std::vector<std::size_t> stack{id};
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t m = stack.back();
    stack.pop_back();
    for (std::size_t g : {i, j}) {
      const std::size_t n = mul(m, g);
      if (!seen[n]) {
        seen[n] = 1;
        ++count;
        stack.push_back(n);
      }
    }
  }
  return count;
}

NielsenReport nielsen_orbits(std::uint64_t p, std::uint64_t kappa, std::uint64_t bound) {
  check_bound(p, bound);
  return nielsen_orbits(Sl2Group(p), kappa);
}

NielsenReport nielsen_orbits(const Sl2Group& g, std::uint64_t kappa) {
  const std::uint64_t p = g.prime();
  if (kappa % p == 4 % p) throw DomainError("k = 4 is excluded");
  NielsenReport rep;
  rep.p = p;
  rep.kappa = kappa % p;
  const std::uint64_t target = (rep.kappa + p - 2) % p;
  const std::size_t n = g.order();
  auto comm_trace = [&](std::size_t i, std::size_t j) { return g.trace(g.mul(g.mul(i, j), g.mul(g.inv(i), g.inv(j)))); };

  // Stratum of pairs with the requested commutator trace, numbered densely.
  std::vector<std::int32_t> slot(n * n, -1);
  std::vector<std::uint64_t> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (comm_trace(i, j) == target) {
        slot[i * n + j] = static_cast<std::int32_t>(pairs.size());
        pairs.push_back(i * n + j);
      }
  rep.stratum_size = pairs.size();

  std::vector<std::size_t> parent(pairs.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t x, std::uint64_t pair_id) {
    const std::int32_t s = slot[pair_id];
    if (s < 0) {
      rep.trace_constant = false;
      return;
    }
    std::size_t a = find(x), b = find(static_cast<std::size_t>(s));
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[b] = a;
  };
  for (std::size_t x = 0; x < pairs.size(); ++x) {
    const std::size_t A = pairs[x] / n, B = pairs[x] % n;
    unite(x, A * n + g.mul(A, B));
    unite(x, B * n + A);
    unite(x, g.inv(A) * n + B);
  }

  std::vector<std::size_t> sizes(pairs.size(), 0);
  for (std::size_t x = 0; x < pairs.size(); ++x) ++sizes[find(x)];
  const std::size_t full = static_cast<std::size_t>(p * (p * p - 1));
  for (std::size_t x = 0; x < pairs.size(); ++x) {
    if (find(x) != x) continue;
    // generation is a Nielsen invariant, so one closure per orbit suffices
    if (g.closure_order(pairs[x] / n, pairs[x] % n) == full) {
      rep.orbit_sizes.push_back(sizes[x]);
    } else {
      ++rep.non_generating_orbits;
    }
  }
  std::sort(rep.orbit_sizes.rbegin(), rep.orbit_sizes.rend());
  rep.orbit_count = rep.orbit_sizes.size();
  return rep;
}

std::size_t expected_nielsen_orbits(std::uint64_t p, std::uint64_t kappa) {
  return kappa % p == 0 && p % 4 == 1 ? 2 : 1;
}

std::string report_json(const NielsenReport& r) {
  nlohmann::json j;
  j["p"] = r.p;
  j["kappa"] = r.kappa;
  j["orbit_count"] = r.orbit_count;
  j["orbit_sizes"] = r.orbit_sizes;
  return j.dump();
}

}  // namespace markoff
