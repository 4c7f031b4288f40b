#include <doctest.h>

#include <cstdint>

#include "wdl/errors.hpp"
#include "wdl/itinerary.hpp"

using namespace wdl;

TEST_CASE("itinerary: closed form against the recurrence up to 10^6") {
  CHECK(ell(0) == 1);
  CHECK(ell(1) == 4);
  std::uint64_t l = 1;
  for (std::uint64_t n = 0; n < 1000000; ++n) {
    REQUIRE(ell(n) == l);
    l += n + 3;
  }
  CHECK_THROWS_AS(ell(std::uint64_t(1) << 40), OverflowError);
}

TEST_CASE("itinerary: phases cover every step exactly once") {
  CHECK(phase_of(0) == Phase::delta(0));
  CHECK(phase_of(1) == Phase::g(0));
  CHECK(phase_of(2) == Phase::d(0, 0));
  CHECK(phase_of(3) == Phase::delta(1));
  CHECK(phase_of(4) == Phase::g(1));
  for (std::uint64_t m = 0; m < 200000; ++m) {
    const Phase p = phase_of(m);
    REQUIRE(p.step() == m);
    if (p.kind == PhaseKind::d) REQUIRE(p.k <= p.n);
    if (p.kind == PhaseKind::g) REQUIRE(ell(p.n) == m);
  }
  CHECK(Phase::d(3, 2).name() == "D(3,2)");
}
