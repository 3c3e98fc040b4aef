#include "doctest.h"
#include "planarcut/verify.hpp"

using namespace planarcut;

TEST_CASE("suites pass at reduced sizes") {
  VerifyParams p;
  p.max_edges = 6;
  p.decoupling_samples = 20000;
  p.ldd_samples = 2000;
  p.patch_fixtures = 8;
  p.marginal_samples = 20000;
  for (const std::string& name : suite_names()) {
    const SuiteReport r = run_suite(name, p);
    INFO(r.to_text());
    CHECK(r.passed);
    CHECK(r.suite == name);
    CHECK(r.failure.empty());
    CHECK(r.to_text().find("result pass\n") != std::string::npos);
    // Reports are reproducible.
    CHECK(run_suite(name, p).to_text() == r.to_text());
  }
}

TEST_CASE("unknown suite") { CHECK_THROWS_AS(run_suite("spectral", {}), Error); }

TEST_CASE("patch fixtures stay small and valid") {
  const auto fx = patch_fixtures(32, 1);
  CHECK(fx.size() == 32);
  for (const GraphSpec& s : fx) {
    CHECK(s.n <= 12);
    CHECK(!s.demands.empty());
    CHECK_NOTHROW(EmbeddedPlanarGraph::build(s));
  }
}

TEST_CASE("failed report names the invariant") {
  SuiteReport r{"x", false, {"k 1"}, "something broke"};
  CHECK(r.to_text() == "suite x\nk 1\nresult fail\nfailure something broke\n");
}
