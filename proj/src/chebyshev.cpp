#include <markoff/chebyshev.hpp>

namespace markoff {

KPoly chebyshev_u_half(long n) {
  if (n < 0) throw DomainError("Chebyshev index must be nonnegative");
  KPoly prev(1L), cur = KPoly::var();
  if (n == 0) return prev;
  const KPoly x = KPoly::var();
  for (long i = 1; i < n; ++i) {
    KPoly next = x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

KPoly chebyshev_u(long n) {
  if (n < 1) throw DomainError("u_n needs n >= 1");
  KPoly u = chebyshev_u_half(n - 1);
  if (n % 2 == 0) u *= KPoly::var();
  return u;
}

}  // namespace markoff
