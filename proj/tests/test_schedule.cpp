#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "wdl/errors.hpp"
#include "wdl/schedule.hpp"
#include "wdl/verify.hpp"

using namespace wdl;

namespace {
const char* const families[] = {"square", "par13", "att12", "identity", "att56", "semi"};
}

TEST_CASE("schedule: construction invariants hold for every family") {
  for (const char* id : families) {
    CAPTURE(std::string(id));
    const Schedule s = build_schedule(id, 10);
    const CheckReport r = check_schedule_invariants(s);
    if (const CheckItem* f = r.first_failure()) FAIL_CHECK(f->name << ": " << f->detail);
    CHECK(r.pass());
    CHECK(s.alpha.size() == 11);
    CHECK(s.inner_gap.size() == ell(10) + 1);
    CHECK(s.eps.size() == ell(10));
    CHECK(s.degrees.size() == 11);
  }
}

TEST_CASE("schedule: eps closed form recomputed independently") {
  const Schedule s = build_schedule("par13", 12);
  for (std::size_t n = 0; n < 12; ++n)
    for (std::size_t k = 0; k <= n + 2 && ell(n) + k < s.eps.size(); ++k) {
      const LogScaled expect = s.alpha[n + 1].square().ldexp(-static_cast<std::int64_t>(k + 1));
      CHECK(relative_difference(s.eps[ell(n) + k], expect) <= 1e-9);
    }
  CHECK(s.eps[0] <= LogScaled(1.0 / 24.0));
  CHECK(s.alpha[0] == LogScaled(1.0));
}

TEST_CASE("schedule: alpha decays doubly exponentially without underflow") {
  const Schedule s = build_schedule("square", 40);
  for (std::size_t n = 1; n <= 40; ++n) {
    CHECK(s.alpha[n] < s.alpha[n - 1]);
    CHECK(s.alpha[n] > LogScaled());
  }
  CHECK(s.alpha[40].log2_magnitude() < -1e9);
  CHECK(std::isfinite(s.alpha[40].log2_magnitude()));
}

TEST_CASE("schedule: image distances against dense sampling") {
  for (const char* id : {"par13", "att12", "square"}) {
    const BlaschkeProduct b = BlaschkeProduct::named(id);
    for (double gap : {0.05, 0.01}) {
      double max_mod = 0.0, min_mod = 1e300;
      for (int i = 0; i < 200000; ++i) {
        const double t = 2.0 * std::numbers::pi * i / 200000.0;
        max_mod = std::max(max_mod, std::abs(oracle::blaschke(b.zeros(), std::polar(1.0 - gap, t))));
        min_mod = std::min(min_mod, std::abs(oracle::blaschke(b.zeros(), std::polar(1.0 + gap, t))));
      }
      CHECK(image_distance(b, LogScaled(gap), false, 1024).value.to_double() ==
            doctest::Approx(1.0 - max_mod).epsilon(1e-6));
      CHECK(image_distance(b, LogScaled(gap), true, 1024).value.to_double() ==
            doctest::Approx(min_mod - 1.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("schedule: circle extremum finds a narrow peak") {
  auto f = [](double t) { return LogScaled(std::exp(-1e4 * (t - 2.0) * (t - 2.0))); };
  const CircleExtremum e = circle_extremum(f, true, 64);
  CHECK(e.value.to_double() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(e.theta == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("schedule: errors") {
  CHECK_THROWS_AS(build_schedule("nope", 3), DomainError);
  const Schedule s = build_schedule("identity", 3);
  CHECK_THROWS(s.inner_gap.at(ell(3) + 1));
}
