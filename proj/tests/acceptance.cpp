// Acceptance gate: one line per criterion, PASS only when the underlying
// check family holds in full (and, where stated, within its time budget).

#include <chrono>
#include <cstdio>
#include <string>

#include "credal/checks.hpp"
#include "credal/errors.hpp"

int main() {
  using credal::CheckOptions;
  using credal::CheckReport;

  struct Row {
    const char* selector;
    std::size_t cases;
    long budget_ms;
    const char* description;
  };

  const Row rows[] = {
      {"taxi", 0, 1000,
       "built-in witness-report case conditions to prob(E)=29/100 and prob(H)=12/29"},
      {"adamsbayes", 1000, 10000,
       "sequential likelihood installs satisfy all six closed-form identities on 1000 priors"},
      {"simadamsbayes", 1000, 10000,
       "simultaneous installs match the closed forms and every ratio factorization, 1000 priors"},
      {"commute", 1000, 10000,
       "install-then-condition equals condition-then-reweight on full mass vectors, 1000 priors"},
      {"gsfail", 0, 0,
       "the fixed goal-state instance yields 16/35 vs 19/35 under swapped pairings, unequal"},
      {"toc", 1000, 0,
       "self-consistent likelihood installs preserve the transposed conditional, 1000 cases"},
      {"prosecutor", 0, 0,
       "population conditioning gives factor 11111/1121 exactly, above 100/19, naive sum flagged"},
      {"combinators", 200, 0,
       "reduction undoes expansion and the three pipeline theorems hold, 200 cases each"},
      {"lts", 50, 0,
       "trivial bisimulations verify on 50 fragments; witness and bounded search behave"},
      {"modes", 100, 0,
       "notified parallel delivery is ratio-first and pipeline-exact on 100 seeds; a naive race exists"},
  };

  int failures = 0;
  for (std::size_t i = 0; i < sizeof(rows) / sizeof(rows[0]); ++i) {
    const Row& row = rows[i];
    CheckOptions opt;
    if (row.cases != 0) opt.cases = row.cases;

    auto t0 = std::chrono::steady_clock::now();
    CheckReport rep;
    std::string error;
    try {
      rep = credal::run_checks(row.selector, opt).at(0);
    } catch (const std::exception& err) {
      error = err.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    long ms = static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());

    bool timed_out = row.budget_ms != 0 && ms > row.budget_ms;
    bool pass = error.empty() && rep.ok() && !timed_out;
    if (!pass) ++failures;

    std::printf("criterion %2zu: %s — %s (%zu/%zu, %ld ms)", i + 1, pass ? "PASS" : "FAIL",
                row.description, rep.passed, rep.attempted, ms);
    if (!error.empty()) std::printf("  [error: %s]", error.c_str());
    if (!rep.counterexample.empty()) std::printf("  [%s]", rep.counterexample.c_str());
    if (timed_out) std::printf("  [over the %ld ms budget]", row.budget_ms);
    std::printf("\n");
  }

  if (failures == 0) {
    std::printf("acceptance: all %zu criteria PASS\n", sizeof(rows) / sizeof(rows[0]));
    return 0;
  }
  std::printf("acceptance: %d criterion(s) FAILED\n", failures);
  return 1;
}
