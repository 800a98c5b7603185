#include <markoff/selftest.hpp>

#include <iostream>

int main() {
  int failed = 0;
  for (const auto& r : markoff::run_selftest(markoff::SelftestLevel::Full)) {
    std::cout << markoff::format_line(r) << std::endl;
    if (!r.pass) ++failed;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
  return failed ? 1 : 0;
}
