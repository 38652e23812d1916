#include "credal/checks.hpp"

#include "credal/errors.hpp"
#include "doctest.h"

using credal::CheckOptions;
using credal::CheckReport;
using credal::check_names;
using credal::run_checks;

namespace {

CheckOptions small() {
  CheckOptions opt;
  opt.cases = 25;
  opt.seed = 7;
  return opt;
}

}  // namespace

TEST_CASE("the check registry is fixed and ordered") {
  std::vector<std::string> names = check_names();
  REQUIRE(names.size() == 11);
  CHECK(names.front() == "taxi");
  CHECK(names[1] == "variants");
  CHECK(names[5] == "gsfail");
  CHECK(names[7] == "prosecutor");
  CHECK(names.back() == "modes");
  CHECK_THROWS_AS(run_checks("no-such-check", small()), credal::ParseError);
}

TEST_CASE("every check passes on a reduced case budget") {
  for (const std::string& name : check_names()) {
    CAPTURE(name);
    auto reports = run_checks(name, small());
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].id == name);
    CHECK(reports[0].attempted > 0);
    INFO(reports[0].counterexample);
    CHECK(reports[0].ok());
  }
}

TEST_CASE("the aggregate selector runs the full registry") {
  CheckOptions opt = small();
  opt.cases = 5;
  auto reports = run_checks("all", opt);
  REQUIRE(reports.size() == 11);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    CHECK(reports[i].id == check_names()[i]);
    CHECK(reports[i].ok());
  }
}

TEST_CASE("reports render as fixed-width status lines") {
  CheckReport rep;
  rep.id = "taxi";
  rep.attempted = 12;
  rep.passed = 12;
  CHECK(rep.str() == "ok    taxi          12/12");
  rep.passed = 11;
  rep.counterexample = "case 3: posterior mismatch";
  CHECK(rep.str() == "FAIL  taxi          11/12  [case 3: posterior mismatch]");
}

TEST_CASE("different seeds replay to identical reports") {
  CheckOptions a = small();
  a.cases = 10;
  auto r1 = run_checks("commute", a);
  auto r2 = run_checks("commute", a);
  REQUIRE(r1.size() == 1);
  CHECK(r1[0].attempted == r2[0].attempted);
  CHECK(r1[0].passed == r2[0].passed);
  CheckOptions b = a;
  b.seed = 99;
  auto r3 = run_checks("commute", b);
  CHECK(r3[0].ok());
}
