#ifndef MARKOFF_NIELSEN_HPP
#define MARKOFF_NIELSEN_HPP

#include <markoff/markoff.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace markoff {

// A 2x2 matrix of determinant 1 over F_p, entries reduced to [0, p).
struct Sl2Mat {
  std::uint64_t p = 0;
  std::uint64_t a = 1, b = 0, c = 0, d = 1;

  static Sl2Mat identity(std::uint64_t p) { return Sl2Mat{p, 1 % p, 0, 0, 1 % p}; }
  static Sl2Mat make(std::uint64_t p, long long a, long long b, long long c, long long d);

  std::uint64_t trace() const { return (a + d) % p; }
  bool valid() const;
  Sl2Mat inverse() const;

  friend Sl2Mat operator*(const Sl2Mat& x, const Sl2Mat& y);
  friend bool operator==(const Sl2Mat& x, const Sl2Mat& y) {
    return x.p == y.p && x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
};

struct Sl2Pair {
  Sl2Mat A, B;
};

Sl2Mat commutator(const Sl2Mat& A, const Sl2Mat& B);  // A B A^-1 B^-1

// (tr A, tr B, tr AB) as a Markoff triple with k = tr[A,B] + 2.
MarkoffTriple trace_triple(const Sl2Pair& pr);

// The three Nielsen moves of the main pair theorem.
Sl2Pair nielsen_product(const Sl2Pair& pr);  // (A, AB)
Sl2Pair nielsen_swap(const Sl2Pair& pr);     // (B, A)
Sl2Pair nielsen_invert(const Sl2Pair& pr);   // (A^-1, B)

// Subgroup closure test against |SL_2(F_p)| = p(p^2 - 1).
bool generates(const Sl2Pair& pr, std::uint64_t bound = 13);

/*
 * SL_2(F_p) with its elements numbered, a full multiplication table, and
 * inverses.  Sized for desk-scale p.
 */
class Sl2Group {
 public:
  explicit Sl2Group(std::uint64_t p);

  std::uint64_t prime() const { return p_; }
  std::size_t order() const { return elems_.size(); }
  const Sl2Mat& element(std::size_t i) const { return elems_[i]; }
  std::size_t index(const Sl2Mat& m) const;
  std::uint32_t mul(std::size_t i, std::size_t j) const { return table_[i * elems_.size() + j]; }
  std::uint32_t inv(std::size_t i) const { return inverse_[i]; }
  std::uint64_t trace(std::size_t i) const { return elems_[i].trace(); }

  // Order of the subgroup generated by elements i and j.
  std::size_t closure_order(std::size_t i, std::size_t j) const;

 private:
  std::uint64_t p_;
  std::vector<Sl2Mat> elems_;
  std::vector<std::int32_t> lookup_;  // packed entries -> index
  std::vector<std::uint32_t> table_, inverse_;
};

struct NielsenReport {
  std::uint64_t p = 0, kappa = 0;
  std::size_t orbit_count = 0;             // orbits of generating pairs
  std::vector<std::size_t> orbit_sizes;    // descending
  std::size_t stratum_size = 0;            // all pairs with tr[A,B] = k - 2
  std::size_t non_generating_orbits = 0;
  bool trace_constant = true;              // tr[A,B] constant on every orbit
};

// Orbits of generating pairs with tr[A,B] = k - 2 under the three moves.
NielsenReport nielsen_orbits(std::uint64_t p, std::uint64_t kappa, std::uint64_t bound = 11);
NielsenReport nielsen_orbits(const Sl2Group& g, std::uint64_t kappa);

// Orbit count predicted by the main pair theorem: 2 when k = 0 and
// p = 1 mod 4, otherwise 1.
std::size_t expected_nielsen_orbits(std::uint64_t p, std::uint64_t kappa);

// {"p":..,"kappa":..,"orbit_count":..,"orbit_sizes":[..]}
std::string report_json(const NielsenReport& r);

}  // namespace markoff

#endif
