#include <doctest.h>

#include <cmath>

#include "afst/smdp/types.hpp"
#include "afst/util/rng.hpp"

using namespace afst;

namespace {

smdp::EpisodeBuffer make_episode(std::initializer_list<double> rewards,
                                 std::initializer_list<double> taus) {
  smdp::EpisodeBuffer ep;
  auto r = rewards.begin();
  auto t = taus.begin();
  for (; r != rewards.end(); ++r, ++t) {
    smdp::StepRecord s;
    s.reward = *r;
    s.tau = *t;
    ep.steps.push_back(s);
  }
  return ep;
}

}  // namespace

TEST_SUITE("smdp-core") {

TEST_CASE("normalize_angle wraps into (-pi, pi]") {
  CHECK(smdp::normalize_angle(0.0) == 0.0);
  CHECK(smdp::normalize_angle(M_PI) == doctest::Approx(M_PI));
  CHECK(smdp::normalize_angle(-M_PI) == doctest::Approx(M_PI));
  CHECK(smdp::normalize_angle(3.0 * M_PI) == doctest::Approx(M_PI));
  CHECK(smdp::normalize_angle(M_PI + 0.1) == doctest::Approx(-M_PI + 0.1));
  CHECK(smdp::normalize_angle(-7.5 * M_PI) ==
        doctest::Approx(smdp::normalize_angle(0.5 * M_PI)));
}

TEST_CASE("discount_weight worked examples") {
  smdp::DiscountSpec time{0.99, smdp::DiscountMode::SmdpTime};
  smdp::DiscountSpec step{0.99, smdp::DiscountMode::PerStep};
  CHECK(smdp::discount_weight(time, 0.0, 0) == 1.0);
  CHECK(smdp::discount_weight(time, 2.0, 2) == doctest::Approx(0.9801).epsilon(1e-12));
  // Seconds are ignored in per-step mode.
  CHECK(smdp::discount_weight(step, 2.0, 3) ==
        doctest::Approx(0.970299).epsilon(1e-12));
}

TEST_CASE("discount_weight is monotone for gamma < 1") {
  smdp::DiscountSpec time{0.97, smdp::DiscountMode::SmdpTime};
  smdp::DiscountSpec step{0.97, smdp::DiscountMode::PerStep};
  double prev = 2.0;
  for (int k = 0; k <= 20; ++k) {
    const double wt = smdp::discount_weight(time, 0.3 * k, k);
    CHECK(wt < prev);
    prev = wt;
    CHECK(smdp::discount_weight(step, 0.0, k) ==
          doctest::Approx(std::pow(0.97, k)).epsilon(1e-12));
  }
}

TEST_CASE("cumulative times are prefix sums of tau") {
  auto ep = make_episode({0, 0, 0}, {0.4, 0.25, 1.5});
  const auto t = ep.cumulative_times();
  REQUIRE(t.size() == 4);
  CHECK(t[0] == 0.0);
  for (std::size_t i = 0; i < ep.steps.size(); ++i)
    CHECK(t[i + 1] - t[i] == ep.steps[i].tau);
}

TEST_CASE("discounted_return worked examples") {
  smdp::DiscountSpec g09{0.9, smdp::DiscountMode::SmdpTime};

  auto single = make_episode({5.0}, {0.7});
  CHECK(smdp::discounted_return(single, 0, g09) == 5.0);

  auto two = make_episode({1.0, 2.0}, {1.0, 0.5});
  CHECK(smdp::discounted_return(two, 0, g09) == doctest::Approx(2.8).epsilon(1e-12));
  smdp::DiscountSpec per{0.9, smdp::DiscountMode::PerStep};
  CHECK(smdp::discounted_return(two, 0, per) == doctest::Approx(2.8).epsilon(1e-12));

  CHECK_THROWS_AS((void)smdp::discounted_return(two, 2, g09), std::out_of_range);
}

TEST_CASE("return recursion on random episodes") {
  auto rng = util::make_rng(42);
  smdp::DiscountSpec spec{0.95, smdp::DiscountMode::SmdpTime};
  for (int trial = 0; trial < 50; ++trial) {
    smdp::EpisodeBuffer ep;
    const int n = util::uniform_int(rng, 1, 12);
    for (int i = 0; i < n; ++i) {
      smdp::StepRecord s;
      s.reward = util::uniform(rng, -5.0, 5.0);
      s.tau = util::uniform(rng, 0.05, 3.0);
      ep.steps.push_back(s);
    }
    for (int i = 0; i < n - 1; ++i) {
      const double lhs = smdp::discounted_return(ep, i, spec);
      const double rhs = ep.steps[i].reward +
                         smdp::discount_weight(spec, ep.steps[i].tau, 1) *
                             smdp::discounted_return(ep, i + 1, spec);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
    CHECK(smdp::discounted_return(ep, n - 1, spec) == ep.steps[n - 1].reward);
  }
}

}  // TEST_SUITE
