#ifndef MARKOFF_SELFTEST_HPP
#define MARKOFF_SELFTEST_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace markoff {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// The nine end-to-end checks, numbered 1..9.
CheckResult check_reduction_anchors();
CheckResult check_orbit_sum_preservation(std::uint64_t max_p = 31, int polys = 50, int max_degree = 8);
CheckResult check_first_coordinate_counts(std::uint64_t max_p = 31);
CheckResult check_main_theorem(std::uint64_t max_p = 101);
CheckResult check_nielsen_counts(const std::vector<std::uint64_t>& primes = {5, 7, 11});
CheckResult check_formula_oracles();
CheckResult check_qvector_anchors();
CheckResult check_certification(int d = 5, unsigned threads = 0);
CheckResult check_certificate_integrity(int d = 5, unsigned threads = 0, int flips = 256);

enum class SelftestLevel { Fast, Full };

// Fast: the published anchors (1, 6, 7). Full: all nine checks.
std::vector<CheckResult> run_selftest(SelftestLevel level, unsigned threads = 0);

std::string format_line(const CheckResult& r);

}  // namespace markoff

#endif
