#include <algorithm>
// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Thresholds are pinned in src/verify.cpp.

#include <cstdio>

#include "cll/verify.hpp"

int main() {
  cll::RunConfig cfg;
  const auto results = cll::run_acceptance(cfg);
  bool ok = true;
  int idx = 0;
  for (const auto& r : results) {
    ++idx;
    std::printf("[%s] %2d %-28s residual %.3e (tol %.1e)%s%s\n",
                r.pass ? "PASS" : "FAIL", idx, r.name.c_str(), r.residual, r.tol,
                r.detail.empty() ? "" : " -- ", r.detail.c_str());
    ok = ok && r.pass;
  }
  std::printf("%s: %d/%d criteria passed\n", ok ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              static_cast<int>(std::count_if(results.begin(), results.end(),
                                             [](const auto& r) { return r.pass; })),
              static_cast<int>(results.size()));
  return ok ? 0 : 1;
}
