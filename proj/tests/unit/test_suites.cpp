#include "cohomlab/suites.hpp"
#include "doctest.h"

using namespace cohomlab::suites;

TEST_CASE("suite reports satisfy their invariants") {
  SuiteOptions opt;
  for (const char* name : {"dk", "duality", "trivimage"}) {
    auto rep = run_suite(name, opt);
    CHECK(rep.name == name);
    CHECK(rep.failed == 0);
    // fail count 0 iff no counterexample recorded
    CHECK((rep.failed == 0) == rep.first_counterexample.empty());
    CHECK(rep.passed == static_cast<int>(rep.checks.size()));
    CHECK(rep.wall_ms >= 0);
    int anomalies = 0;
    for (const auto& c : rep.checks)
      if (c.anomaly) ++anomalies;
    CHECK(anomalies == rep.anomalies);
  }
  CHECK_THROWS(run_suite("unknown", opt));
}

TEST_CASE("grid restrictions narrow the checks") {
  SuiteOptions opt;
  opt.p = 3;
  auto rep = run_suite("dk", opt);
  for (const auto& c : rep.checks)
    CHECK(c.params.find("p=3") != std::string::npos);
  CHECK(rep.checks.size() >= 1);
}

TEST_CASE("deterministic check ordering with worker threads") {
  SuiteOptions a, b;
  a.jobs = 1;
  b.jobs = 4;
  auto ra = run_suite("duality", a);
  auto rb = run_suite("duality", b);
  REQUIRE(ra.checks.size() == rb.checks.size());
  for (size_t i = 0; i < ra.checks.size(); ++i) {
    CHECK(ra.checks[i].params == rb.checks[i].params);
    CHECK(ra.checks[i].pass == rb.checks[i].pass);
  }
}
