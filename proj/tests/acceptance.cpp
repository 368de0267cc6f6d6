#include <cstdio>
#include <string>

#include "finmod/verify.hpp"

int main() {
  const finmod::VerificationReport rep = finmod::verify_paper();
  bool all = true;
  for (const auto& c : finmod::criteria()) {
    const auto entries = finmod::criterion_entries(rep, c.number);
    std::size_t passed = 0;
    std::string first_bad;
    for (const auto& e : entries) {
      if (e.passed())
        ++passed;
      else if (first_bad.empty())
        first_bad = e.name + ": " + e.details;
    }
    const bool ok = !entries.empty() && passed == entries.size();
    all = all && ok;
    std::printf("criterion %2d %-46s %s (%zu/%zu checks)%s%s\n", c.number,
                c.name.c_str(), ok ? "PASS" : "FAIL", passed, entries.size(),
                first_bad.empty() ? "" : "; first failure ", first_bad.c_str());
  }
  std::printf("%s\n", all ? "all criteria pass" : "some criteria fail");
  return all ? 0 : 1;
}
