#ifndef MARKOFF_FFIELD_HPP
#define MARKOFF_FFIELD_HPP

#include <markoff/upoly.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace markoff {

bool is_prime(std::uint64_t n);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);

/*
 * Element of F_p.  An element with p == 0 is an untyped integer literal
 * (the default zero, or a small constant, stored in two's complement) and
 * adopts the modulus of the other operand on first contact.
 */
struct Fp {
  std::uint64_t p = 0;
  std::uint64_t v = 0;

  Fp() = default;
  Fp(long c) : p(0), v(static_cast<std::uint64_t>(c)) {}
  Fp(std::uint64_t prime, long long c);

  static Fp make(std::uint64_t prime, long long c) { return Fp(prime, c); }

  Fp& operator+=(const Fp& o);
  Fp& operator-=(const Fp& o);
  Fp& operator*=(const Fp& o);
  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator-(const Fp& a);
  friend bool operator==(const Fp& a, const Fp& b);
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  Fp inv() const;
  Fp pow(std::uint64_t e) const;
  std::int64_t signed_value() const;

 private:
  void bind(std::uint64_t prime);
  friend Fp div_small(const Fp& a, long k);
};

inline bool is_zero(const Fp& a) { return a.v == 0; }
Fp div_small(const Fp& a, long k);

// a + b*sqrt(r) in F_{p^2}, r the smallest quadratic nonresidue mod p.
struct Fp2 {
  std::uint64_t p = 0, r = 0, a = 0, b = 0;

  static std::uint64_t nonresidue(std::uint64_t p);
  static Fp2 make(std::uint64_t p, std::uint64_t a, std::uint64_t b);

  friend Fp2 operator+(const Fp2& x, const Fp2& y);
  friend Fp2 operator-(const Fp2& x, const Fp2& y);
  friend Fp2 operator*(const Fp2& x, const Fp2& y);
  friend bool operator==(const Fp2& x, const Fp2& y) { return x.p == y.p && x.a == y.a && x.b == y.b; }
  Fp2 pow(std::uint64_t e) const;
  Fp2 inv() const;
  bool is_one() const { return a == 1 % p && b == 0; }
};

int quad_char(const Fp& a);

// The square root with the smaller representative, or nothing.
std::optional<Fp> sqrt_mod(const Fp& a);

// Multiplicative order of an element of F_{p^2}^*.
std::uint64_t element_order(const Fp2& z);

// Rotation order: the even order of zeta with zeta + 1/zeta = +-a and
// -1 in <zeta>.
std::uint64_t rotation_order(const Fp& a);

// A root zeta of t^2 - a t + 1 in F_p or F_{p^2}.
Fp2 rotation_root(const Fp& a);

std::string to_string(const Fp& a);

}  // namespace markoff

#endif
