#include <doctest.h>

#include <cmath>
#include <random>

#include "wdl/log_scaled.hpp"

using wdl::LogScaled;

TEST_CASE("log_scaled: arithmetic agrees with double inside its range") {
  std::mt19937_64 g(7);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 2000; ++i) {
    const double a = u(g), b = u(g);
    CHECK(LogScaled(a * 1e-3).to_double() == doctest::Approx(a * 1e-3).epsilon(1e-15));
    CHECK((LogScaled(a) + LogScaled(b)).to_double() == doctest::Approx(a + b).epsilon(1e-12));
    CHECK((LogScaled(a) - LogScaled(b)).to_double() == doctest::Approx(a - b).epsilon(1e-12));
    CHECK((LogScaled(a) * LogScaled(b)).to_double() == doctest::Approx(a * b).epsilon(1e-15));
    CHECK((LogScaled(a) / LogScaled(b)).to_double() == doctest::Approx(a / b).epsilon(1e-15));
    CHECK((LogScaled(a) < LogScaled(b)) == (a < b));
  }
}

TEST_CASE("log_scaled: doubly exponential decay keeps exact exponents") {
  LogScaled x(0.5);
  for (int i = 0; i < 80; ++i) x = x.square();
  // 0.5^(2^80): exponent -2^80 exactly, far beyond double
  CHECK(x.mantissa() == 0.5);
  CHECK(x.exponent() == -(static_cast<LogScaled::exp_t>(1) << 80) + 1);
  CHECK(x.to_double() == 0.0);
  CHECK(x > LogScaled());
  CHECK(x.sqrt().square() == x);
  CHECK(wdl::log2_ratio(x, x.square()) == doctest::Approx(std::ldexp(1.0, 80)));
}

TEST_CASE("log_scaled: pow2, ldexp and log2_magnitude") {
  CHECK(LogScaled::pow2(-1100).log2_magnitude() == -1100.0);
  CHECK(LogScaled(3.0).ldexp(-2000).log2_magnitude() == doctest::Approx(std::log2(3.0) - 2000.0));
  CHECK(LogScaled::from_log2(-12.5).log2_magnitude() == doctest::Approx(-12.5));
  CHECK(std::isinf(LogScaled().log2_magnitude()));
  CHECK(wdl::relative_difference(LogScaled(1.0).ldexp(-5000), LogScaled(1.0 + 1e-12).ldexp(-5000)) ==
        doctest::Approx(1e-12).epsilon(1e-3));
}

TEST_CASE("log_scaled: addition across very different scales") {
  const LogScaled big(1.0), tiny = LogScaled::pow2(-4000);
  CHECK(big + tiny == big);
  CHECK((tiny + tiny) == tiny.ldexp(1));
  CHECK((big - big).is_zero());
  CHECK(wdl::min(big, tiny) == tiny);
  CHECK(wdl::max(big, -big) == big);
}
