#include <catch_amalgamated.hpp>

#include "gimag/verify.hpp"

using namespace gimag;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("suite names") {
  for (const char* s : {"all", "theorem1", "theorem2", "theorem4", "monotonicity", "oracle"}) {
    CHECK(is_known_suite(s));
  }
  CHECK(!is_known_suite("theorem3"));
  CHECK_THROWS_AS(run_verify("theorem3", 1, 1), Error);
  CHECK_THROWS_AS(run_verify("all", 1, 0), Error);
}

TEST_CASE("trial seeds are distinct and reproducible") {
  CHECK(trial_seed(1, 2, 3) == trial_seed(1, 2, 3));
  CHECK(trial_seed(1, 2, 3) != trial_seed(1, 2, 4));
  CHECK(trial_seed(1, 2, 3) != trial_seed(1, 3, 3));
  CHECK(trial_seed(1, 2, 3) != trial_seed(2, 2, 3));
}

TEST_CASE("oracle states stay within the photon budget") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const GaussianState s = random_oracle_state(seed);
    REQUIRE(s.modes() == 1);
    REQUIRE(mean_photon_number(s, 0) <= kOracleMaxPhotons);
  }
  CHECK(random_oracle_state(5).cov() == random_oracle_state(5).cov());
}

TEST_CASE("fast suites pass and report deterministically") {
  const VerifyReport a = run_verify("monotonicity", 9, 200);
  REQUIRE(a.suites.size() == 1);
  CHECK(a.ok());
  CHECK(a.suites[0].passed == 200);
  CHECK(a.suites[0].worst <= 1e-9);
  CHECK(a.exploratory_samples == 200);

  const VerifyReport t4 = run_verify("theorem4", 9, 200);
  CHECK(t4.ok());

  const std::string text = format_report(a);
  CHECK(text == format_report(run_verify("monotonicity", 9, 200)));
  CHECK_THAT(text, ContainsSubstring("overall       PASS"));
}

TEST_CASE("oracle suites pass on a small sample") {
  for (const char* s : {"theorem1", "theorem2", "oracle"}) {
    const VerifyReport r = run_verify(s, 4, 3);
    INFO(format_report(r));
    CHECK(r.ok());
  }
}
