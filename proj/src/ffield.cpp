#include <markoff/ffield.hpp>

#include <stdexcept>

namespace markoff {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw DomainError("inverse of zero in F_p");
  return pow_mod(a, p - 2, p);
}

namespace {

std::uint64_t reduce_signed(long long c, std::uint64_t p) {
  long long r = c % static_cast<long long>(p);
  if (r < 0) r += static_cast<long long>(p);
  return static_cast<std::uint64_t>(r);
}

}  // namespace

Fp::Fp(std::uint64_t prime, long long c) : p(prime), v(reduce_signed(c, prime)) {}

void Fp::bind(std::uint64_t prime) {
  if (p == prime) return;
  if (p != 0) throw DomainError("mixed prime fields");
  v = reduce_signed(static_cast<long long>(v), prime);
  p = prime;
}

Fp& Fp::operator+=(const Fp& o) {
  if (p == 0 && o.p == 0) {
    v += o.v;
    return *this;
  }
  Fp b = o;
  bind(o.p ? o.p : p);
  b.bind(p);
  v = v + b.v >= p ? v + b.v - p : v + b.v;
  return *this;
}

Fp& Fp::operator-=(const Fp& o) {
  if (p == 0 && o.p == 0) {
    v -= o.v;
    return *this;
  }
  Fp b = o;
  bind(o.p ? o.p : p);
  b.bind(p);
  v = v >= b.v ? v - b.v : v + p - b.v;
  return *this;
}

Fp& Fp::operator*=(const Fp& o) {
  if (p == 0 && o.p == 0) {
    v *= o.v;
    return *this;
  }
  Fp b = o;
  bind(o.p ? o.p : p);
  b.bind(p);
  v = mul_mod(v, b.v, p);
  return *this;
}

Fp operator-(const Fp& a) {
  Fp r = a;
  if (r.p == 0) r.v = static_cast<std::uint64_t>(-static_cast<long long>(r.v));
  else if (r.v) r.v = r.p - r.v;
  return r;
}

bool operator==(const Fp& a, const Fp& b) {
  if (a.p == b.p) return a.v == b.v;
  Fp x = a, y = b;
  std::uint64_t prime = a.p ? a.p : b.p;
  x.bind(prime);
  y.bind(prime);
  return x.v == y.v;
}

Fp Fp::inv() const {
  if (p == 0) throw DomainError("inverse of an untyped literal");
  return Fp(p, static_cast<long long>(inv_mod(v, p)));
}

Fp Fp::pow(std::uint64_t e) const {
  if (p == 0) throw DomainError("power of an untyped literal");
  return Fp(p, static_cast<long long>(pow_mod(v, e, p)));
}

std::int64_t Fp::signed_value() const {
  if (p == 0) return static_cast<std::int64_t>(v);
  return v > p / 2 ? static_cast<std::int64_t>(v) - static_cast<std::int64_t>(p) : static_cast<std::int64_t>(v);
}

Fp div_small(const Fp& a, long k) {
  if (a.p == 0) {
    long long s = static_cast<long long>(a.v);
    if (s % k != 0) throw DomainError("untyped literal not divisible");
    return Fp(static_cast<long>(s / k));
  }
  return a * Fp(a.p, k).inv();
}

std::uint64_t Fp2::nonresidue(std::uint64_t p) {
  for (std::uint64_t r = 2; r < p; ++r)
    if (pow_mod(r, (p - 1) / 2, p) == p - 1) return r;
  throw DomainError("no quadratic nonresidue");
}

Fp2 Fp2::make(std::uint64_t p, std::uint64_t a, std::uint64_t b) { return Fp2{p, nonresidue(p), a % p, b % p}; }

Fp2 operator+(const Fp2& x, const Fp2& y) {
  return Fp2{x.p, x.r, (x.a + y.a) % x.p, (x.b + y.b) % x.p};
}

Fp2 operator-(const Fp2& x, const Fp2& y) {
  return Fp2{x.p, x.r, (x.a + x.p - y.a) % x.p, (x.b + x.p - y.b) % x.p};
}

Fp2 operator*(const Fp2& x, const Fp2& y) {
  const std::uint64_t p = x.p;
  std::uint64_t a = (mul_mod(x.a, y.a, p) + mul_mod(mul_mod(x.b, y.b, p), x.r, p)) % p;
  std::uint64_t b = (mul_mod(x.a, y.b, p) + mul_mod(x.b, y.a, p)) % p;
  return Fp2{p, x.r, a, b};
}

Fp2 Fp2::pow(std::uint64_t e) const {
  Fp2 r{p, this->r, 1 % p, 0}, base = *this;
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

Fp2 Fp2::inv() const {
  // (a + b s)^{-1} = (a - b s) / (a^2 - r b^2)
  std::uint64_t norm = (mul_mod(a, a, p) + p - mul_mod(r, mul_mod(b, b, p), p)) % p;
  std::uint64_t ni = inv_mod(norm, p);
  return Fp2{p, r, mul_mod(a, ni, p), mul_mod((p - b) % p, ni, p)};
}

int quad_char(const Fp& a) {
  if (a.v == 0) return 0;
  if (a.p == 0) throw DomainError("quadratic character of an untyped literal");
  return pow_mod(a.v, (a.p - 1) / 2, a.p) == 1 ? 1 : -1;
}

std::optional<Fp> sqrt_mod(const Fp& a) {
  if (a.v == 0) return Fp(a.p, 0);
  if (quad_char(a) < 0) return std::nullopt;
  const std::uint64_t p = a.p;
  std::uint64_t root;
  if (p % 4 == 3) {
    root = pow_mod(a.v, (p + 1) / 4, p);
  } else {
    // Tonelli-Shanks
    std::uint64_t q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
      q /= 2;
      ++s;
    }
    std::uint64_t z = Fp2::nonresidue(p);
    std::uint64_t c = pow_mod(z, q, p), t = pow_mod(a.v, q, p), r = pow_mod(a.v, (q + 1) / 2, p);
    int m = s;
    while (t != 1) {
      int i = 0;
      std::uint64_t tt = t;
      while (tt != 1) {
        tt = mul_mod(tt, tt, p);
        ++i;
      }
      std::uint64_t b = c;
      for (int j = 0; j < m - i - 1; ++j) b = mul_mod(b, b, p);
      r = mul_mod(r, b, p);
      c = mul_mod(b, b, p);
      t = mul_mod(t, c, p);
      m = i;
    }
    root = r;
  }
  std::uint64_t other = (p - root) % p;
  return Fp(p, static_cast<long long>(root < other ? root : other));
}

std::uint64_t element_order(const Fp2& z) {
  const std::uint64_t p = z.p;
  // The group order p^2 - 1 is a multiple of every element order.
  std::uint64_t n = (p - 1) * (p + 1);
  std::uint64_t ord = n, m = n;
  for (std::uint64_t q = 2; q * q <= m; ++q) {
    if (m % q) continue;
    while (m % q == 0) m /= q;
    while (ord % q == 0 && z.pow(ord / q).is_one()) ord /= q;
  }
  if (m > 1)
    while (ord % m == 0 && z.pow(ord / m).is_one()) ord /= m;
  return ord;
}

Fp2 rotation_root(const Fp& a) {
  const std::uint64_t p = a.p;
  if (p == 0) throw DomainError("rotation order of an untyped literal");
  // zeta = (a + sqrt(a^2 - 4)) / 2
  Fp disc = a * a - Fp(p, 4);
  std::uint64_t half = inv_mod(2, p);
  Fp2 z = Fp2::make(p, 0, 0);
  if (auto s = sqrt_mod(disc)) {
    z.a = mul_mod((a.v + s->v) % p, half, p);
  } else {
    // disc = r * w^2 with w in F_p, so sqrt(disc) = w*sqrt(r).
    Fp w2 = disc * Fp(p, static_cast<long long>(z.r)).inv();
    auto w = sqrt_mod(w2);
    if (!w) throw std::logic_error("nonresidue quotient is not a square");
    z.a = mul_mod(a.v, half, p);
    z.b = mul_mod(w->v, half, p);
  }
  return z;
}

std::uint64_t rotation_order(const Fp& a) {
  std::uint64_t k = element_order(rotation_root(a));
  return k % 2 == 0 ? k : 2 * k;
}

std::string to_string(const Fp& a) { return std::to_string(a.v); }

}  // namespace markoff
