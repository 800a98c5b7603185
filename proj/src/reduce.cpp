#include <markoff/reduce.hpp>

namespace markoff {

UPoly<ZPoly> phi_monomial_z(int a, int b, int c) {
  TriPoly<ZPoly> f = TriPoly<ZPoly>::monomial(ZPoly(1L), a, b, c);
  return phi(f, ZPoly::var());
}

void ReductionCache::build(int m_max, int n_max) {
  for (int m = 0; m <= m_max; ++m)
    for (int n = 0; n <= n_max; ++n) get(m, n);
}

UPoly<ZPoly> ReductionCache::get(int m, int n) {
  {
    std::shared_lock lk(mu_);
    auto it = table_.find({m, n});
    if (it != table_.end()) return it->second;
  }
  UPoly<ZPoly> v = phi_monomial_z(2 * m, 2 * n, 0);
  std::unique_lock lk(mu_);
  return table_.emplace(std::make_pair(m, n), std::move(v)).first->second;
}

bool ReductionCache::contains(int m, int n) const {
  std::shared_lock lk(mu_);
  return table_.count({m, n}) > 0;
}

void ReductionCache::insert(int m, int n, UPoly<ZPoly> v) {
  std::unique_lock lk(mu_);
  table_[{m, n}] = std::move(v);
}

std::size_t ReductionCache::size() const {
  std::shared_lock lk(mu_);
  return table_.size();
}

std::map<std::pair<int, int>, UPoly<ZPoly>> ReductionCache::snapshot() const {
  std::shared_lock lk(mu_);
  return table_;
}

UPoly<KPoly> ReductionCache::phi(const SymPoly& f) {
  UPoly<KPoly> out;
  SymPoly rest;
  for (const auto& [e, c] : f.terms()) {
    Exponent s = detail::sorted_desc(e[0], e[1], e[2]);
    if (s[2] == 0 && s[0] % 2 == 0 && s[1] % 2 == 0) {
      UPoly<ZPoly> v = get(s[0] / 2, s[1] / 2);
      for (int i = 0; i <= v.degree(); ++i) out.add_term(to_kpoly(v[i]) * c, i);
    } else {
      rest.add_term(c, e[0], e[1], e[2]);
    }
  }
  if (!rest.zero()) out += markoff::phi(rest, kappa());
  return out;
}

}  // namespace markoff
