#ifndef MARKOFF_CERTIFY_HPP
#define MARKOFF_CERTIFY_HPP

#include <markoff/polymatrix.hpp>
#include <markoff/reduce.hpp>
#include <markoff/spectral.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace markoff {

struct CertifyOptions {
  std::optional<int> nd;        // overrides the default n_d
  int row_lo = 3;               // first stored coefficient index (of x^{2i})
  std::optional<int> row_hi;    // last stored index, n_d by default
  std::optional<int> max_columns;  // n_d by default
  int extra_columns = 8;        // fallback m-columns when the plan is rank deficient
  int max_minors = 16;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct ColumnPlan {
  int d = 0;
  int nd = 0;
  int row_lo = 3, row_hi = 0;
  std::vector<std::pair<int, int>> columns;  // (n, m)
  std::vector<std::string> skipped;
  std::vector<std::pair<int, long>> class_counts;  // (n, good classes)
  std::vector<std::pair<int, long>> printed_m;     // (n, m_{d,n} as printed)

  int rows() const { return row_hi - row_lo + 1; }
};

// Smallest prime q with d = q^a, or 0 if d is not a prime power.
long prime_power_base(long d);
int default_nd(int d);
ColumnPlan make_plan(int d, const CertifyOptions& opts = {});

// The polynomial x^{2m} g_{d,n}(x^2) f_n reduced for one column.
SymPoly column_polynomial(int d, int n, int m);

struct ColumnMatrix {
  PolyMatrix m;                // integral entries
  std::vector<Integer> clear;  // per-column denominator that was cleared
};

ColumnMatrix build_columns(const ColumnPlan& plan, ReductionCache& cache, unsigned threads = 0);
// The same column computed natively over F_p with k fixed.
std::vector<Fp> column_mod_p(const ColumnPlan& plan, int n, int m, std::uint64_t p, std::uint64_t kappa);

struct Factorization {
  std::vector<std::pair<Integer, int>> primes;
  Integer cofactor = 1;  // 1 unless something could not be split
};
Factorization factor_integer(Integer n);

struct StripResult {
  KPoly residual;  // primitive, positive leading coefficient
  int b = 0;
  Integer a = 1;  // 2n_d-smooth part of the content
  std::vector<std::pair<Integer, int>> a_factors;
  int sign = 1;
  Integer residual_content = 1;
  std::vector<std::pair<Integer, int>> residual_primes;
  bool residual_divides_target = false;
  bool primes_exempt = false;
  bool verdict() const { return residual_divides_target && primes_exempt; }
};

// (k-3)^2 (k-2) (k^2-5k+5)
KPoly target_polynomial();
StripResult strip_factors(const KPoly& g, int d, int nd);

struct MinorRecord {
  std::vector<int> columns;
  KPoly det;
};

struct IdealResult {
  KPoly element;
  std::vector<MinorRecord> minors;
  std::vector<KPoly> weights;  // element = sum of weights[i] * minors[i].det
  int rank = 0;
  std::size_t candidates = 0;
};

// Folds maximal minors into one ideal element. Each new minor is paired by
// xgcd with the running element and with a few earlier minors; integer
// multiples of the same gcd are merged by an integer Bezout step. When d and
// nd are given, stops as soon as the stripped element is verdict-compatible.
IdealResult ideal_element(const PolyMatrix& m, const CertifyOptions& opts = {}, int d = 0, int nd = 0);

struct Certificate {
  static constexpr int kSchema = 1;
  ColumnPlan plan;
  ColumnMatrix matrix;
  std::string fingerprint;
  IdealResult ideal;
  StripResult strip;
  bool verdict = false;
  std::uint64_t seed = 1;
  double seconds = 0;  // wall time, kept out of the serialized form
};

Certificate certify(int d, ReductionCache& cache, const CertifyOptions& opts = {});

std::string sha256_hex(const std::string& data);
std::string certificate_json(const Certificate& c);

struct RecheckReport {
  bool ok = false;
  std::vector<std::string> errors;
};

// Independent validation of a serialized certificate. Minor determinants are
// recomputed from the stored matrix unless skip_minors is set.
RecheckReport recheck(const std::string& json_text, bool skip_minors = false);

}  // namespace markoff

#endif
