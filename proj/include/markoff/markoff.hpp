#ifndef MARKOFF_MARKOFF_HPP
#define MARKOFF_MARKOFF_HPP

#include <markoff/ffield.hpp>
#include <markoff/tripoly.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace markoff {

// A point of x^2 + y^2 + z^2 = xyz + k over F_p.
struct MarkoffTriple {
  std::uint64_t p = 0;
  std::uint64_t kappa = 0;
  std::uint64_t x = 0, y = 0, z = 0;

  bool on_surface() const;
  std::array<std::uint64_t, 3> coords() const { return {x, y, z}; }
  friend bool operator==(const MarkoffTriple& a, const MarkoffTriple& b) {
    return a.p == b.p && a.kappa == b.kappa && a.x == b.x && a.y == b.y && a.z == b.z;
  }
  friend bool operator<(const MarkoffTriple& a, const MarkoffTriple& b) { return a.coords() < b.coords(); }
};

enum class Axis { X, Y, Z };

MarkoffTriple vieta_move(const MarkoffTriple& t, Axis axis);

enum class Generators {
  VietaOnly,        // the three Vieta involutions
  Full,             // Vieta involutions, permutations, double sign change
  FirstCoordinate,  // sigma_y, sigma_z, the y<->z swap and (x,-y,-z)
};

// All images of t under one application of each generator.
std::vector<MarkoffTriple> neighbours(const MarkoffTriple& t, Generators g);

// BFS closure, sorted lexicographically.
std::vector<MarkoffTriple> gamma_orbit(const MarkoffTriple& t, Generators g);

// Every point of the surface, in lexicographic order.
std::vector<MarkoffTriple> all_triples(std::uint64_t p, std::uint64_t kappa);

// Power sums sum_t x^a y^b z^c over a fixed set of triples, tabulated up to
// a total degree so that polynomial sums reduce to dot products.
class OrbitSums {
 public:
  OrbitSums(const std::vector<MarkoffTriple>& pts, int max_degree);
  Fp sum(const ModPoly& f) const;
  Fp sum(const UPoly<Fp>& f) const;  // polynomial in x alone
  std::size_t count() const { return count_; }

 private:
  std::uint64_t p_ = 0;
  int max_degree_ = 0;
  std::size_t count_ = 0;
  std::map<Exponent, std::uint64_t> sums_;
};

// Exceptional-category tags of the nonessential triples.
enum class Category { Essential, C1, C2, C3, C4, C5a, C5b };
std::string to_string(Category c);

// Lookup table of the nonessential triples for a fixed (p, k), built from the
// listed base triples under all permutations and sign pairs.
class NonessentialTable {
 public:
  NonessentialTable(std::uint64_t p, std::uint64_t kappa);
  Category classify(const MarkoffTriple& t) const;
  std::size_t size() const { return table_.size(); }

 private:
  std::uint64_t p_, kappa_;
  std::map<std::array<std::uint64_t, 3>, Category> table_;
};

Category classify_nonessential(const MarkoffTriple& t);

struct OrbitInfo {
  MarkoffTriple rep;  // lexicographic minimum
  std::size_t size = 0;
  bool essential = true;
  Category category = Category::Essential;
  std::vector<std::uint64_t> first_counts;  // index alpha -> #triples with x = alpha
};

struct OrbitReport {
  std::uint64_t p = 0, kappa = 0;
  Generators generators = Generators::Full;
  std::size_t total = 0;
  std::vector<OrbitInfo> orbits;  // sorted by representative
};

OrbitReport enumerate_orbits(std::uint64_t p, std::uint64_t kappa, Generators g = Generators::Full);

// {"p":..,"kappa":..,"orbits":[{rep,size,essential,category}],"counts":{...}}
std::string report_json(const OrbitReport& r);

// The points from the main-theorem exception list that exist over F_p for
// this k, closed under coordinate permutations.
std::vector<MarkoffTriple> main1_exception_seeds(std::uint64_t p, std::uint64_t kappa);

struct Main1Check {
  std::uint64_t p = 0, kappa = 0;
  std::size_t orbit_count = 0;
  std::size_t exceptional_orbits = 0;
  std::size_t other_orbits = 0;  // orbits meeting no exception seed
  bool matches = false;          // at most one non-exceptional orbit
};

Main1Check verify_main1(std::uint64_t p, std::uint64_t kappa);

// Prop 4.1 style description of a first-coordinate orbit.
struct Parameterization {
  enum class Case { Generic = 1, SquareIsKappa = 2, SquareIsFour = 3 } kind = Case::Generic;
  std::uint64_t p = 0, kappa = 0, alpha = 0;
  Fp2 zeta;    // root of t^2 - alpha t + 1 (generic and square-is-k cases)
  Fp2 scale;   // sqrt((alpha^2 - k)/(alpha^2 - 4)) in the generic case
  Fp2 eta;     // generic case: offset with scale*(eta + 1/eta) = beta
  Fp2 beta;    // square-is-k and square-is-four cases: the seed second coordinate
  Fp2 step;    // square-is-four case: sqrt(k - 4)
  std::uint64_t rotation = 0;

  // All triples described by the parameterization, closed under (x,-y,-z).
  std::vector<MarkoffTriple> enumerate() const;
};

// Descriptor for the first-coordinate orbit through t.
Parameterization first_coord_parameterize(const MarkoffTriple& t);

// Vectors over F_p of length (p+1)/2; coordinate i pairs with x^{2i}.
using SpanVector = std::vector<std::uint64_t>;

SpanVector x_vector(std::uint64_t p, std::uint64_t alpha);
SpanVector y_markoff(std::uint64_t p);

// sum_alpha c_M(alpha) x_{alpha^2} for the whole surface, which is
// y_markoff(p) + e_{(p-1)/2} for every k.
SpanVector surface_vector(std::uint64_t p);

// Rank over F_p of a family of span vectors.
std::size_t span_rank(const std::vector<SpanVector>& vs, std::uint64_t p);

struct PperpCheck {
  std::uint64_t p = 0, kappa = 0;
  std::size_t orbit_span_dim = 0, target_dim = 0, joint_dim = 0;
  bool equal = false;
  std::vector<SpanVector> target;
};

// The orbit-count vectors sum_alpha c_O(alpha) x_{alpha^2} compared with
// the case-specific spanning set, with surface_vector in place of y_M.
PperpCheck pperp_check(std::uint64_t p, std::uint64_t kappa);

}  // namespace markoff

#endif
