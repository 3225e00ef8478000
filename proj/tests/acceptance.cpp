// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <cstdio>
#include <map>

#include "okit/verify.hpp"

int main() {
  auto summary = okit::run_verification();
  std::map<std::string, const okit::CheckResult*> byid;
  for (const auto& r : summary.results) byid[r.id] = &r;

  struct Criterion {
    const char* label;
    std::vector<std::string> ids;
    double budget_each;   // seconds per check, 0 = no per-check limit
    double budget_total;  // seconds for the group
  };
  std::vector<Criterion> criteria = {
      {"1 sl2 Borel decompositions (lambda 0..4, depth 10)",
       {"sl2-decomp-l0", "sl2-decomp-l1", "sl2-decomp-l2", "sl2-decomp-l3",
        "sl2-decomp-l4"},
       1.0,
       0},
      {"2 sl2 block tensor table (depth 10)",
       {"sl2-mm", "sl2-mdual", "sl2-mp"},
       0,
       5.0},
      {"3 sl3 Verma Borel decompositions (both orbits, depth 8)",
       {"sl3-decomp-orbit-0", "sl3-decomp-orbit-11"},
       0,
       30.0},
      {"4 sl3 principal-block tensor table (cases 1-7 + vanishing, depth 8)",
       {"sl3-case-1", "sl3-case-2", "sl3-case-3", "sl3-case-4", "sl3-case-5",
        "sl3-case-6", "sl3-case-7", "sl3-vanishing"},
       0,
       120.0},
      {"5 property suites (relations, convolution, maximal-vector "
       "equivalence, head uniqueness, depth stability, center, blocks)",
       {"prop-relations", "prop-convolution", "prop-maximal-equivalence",
        "prop-head-unique", "prop-depth-stability", "prop-center-commutes",
        "prop-block-sum"},
       0,
       120.0},
      {"6 tensor identity at character level (depth 6, both types)",
       {"tensor-identity"},
       0,
       0},
  };

  bool all = true;
  for (const auto& c : criteria) {
    bool pass = true;
    double total = 0;
    std::string why;
    for (const auto& id : c.ids) {
      auto it = byid.find(id);
      if (it == byid.end()) {
        pass = false;
        why = id + " missing";
        break;
      }
      const auto& r = *it->second;
      total += r.seconds;
      if (!r.pass) {
        pass = false;
        why = id + ": " + r.detail;
        break;
      }
      if (c.budget_each > 0 && r.seconds > c.budget_each) {
        pass = false;
        why = id + " exceeded per-case time budget";
        break;
      }
    }
    if (pass && c.budget_total > 0 && total > c.budget_total) {
      pass = false;
      why = "group exceeded time budget";
    }
    std::printf("criterion %s: %s (%.2f s)%s%s\n", c.label,
                pass ? "PASS" : "FAIL", total, why.empty() ? "" : " -- ",
                why.c_str());
    all = all && pass;
  }
  return all ? 0 : 1;
}
