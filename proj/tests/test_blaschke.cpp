#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "wdl/blaschke.hpp"
#include "wdl/errors.hpp"

using namespace wdl;

namespace {
const char* const ids[] = {"square", "par13", "att12", "identity", "att56"};
}

TEST_CASE("blaschke: evaluation matches the direct product and maps circle to circle") {
  std::mt19937_64 g(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const char* id : ids) {
    const BlaschkeProduct b = BlaschkeProduct::named(id);
    for (int i = 0; i < 200; ++i) {
      const cplx w = std::polar(std::sqrt(u(g)), 2.0 * std::numbers::pi * u(g));
      CHECK(std::abs(b(w) - oracle::blaschke(b.zeros(), w)) < 1e-13);
      const cplx e = std::polar(1.0, 2.0 * std::numbers::pi * u(g));
      CHECK(std::abs(b(e)) == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK(b.real_symmetric());
    CHECK(std::abs(b(cplx(1.0, 0.0)) - 1.0) < 1e-14);
  }
  CHECK_THROWS_AS(BlaschkeProduct::named("nope"), DomainError);
  CHECK_THROWS_AS(BlaschkeProduct::named("semi(x)"), DomainError);
  CHECK(BlaschkeProduct::named("square").degree() == 2);
  CHECK(BlaschkeProduct::named("att56").degree() == 1);
}

TEST_CASE("blaschke: Schwarz-Pick contraction of the hyperbolic metric") {
  std::mt19937_64 g(22);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const char* id : ids) {
    const BlaschkeProduct b = BlaschkeProduct::named(id);
    for (int i = 0; i < 300; ++i) {
      const cplx z = std::polar(0.98 * std::sqrt(u(g)), 6.283 * u(g));
      const cplx w = std::polar(0.98 * std::sqrt(u(g)), 6.283 * u(g));
      const double before = hyp_dist_unit(z, w), after = hyp_dist_unit(b(z), b(w));
      CHECK(after <= before * (1.0 + 1e-12) + 1e-14);
      if (b.degree() == 1) CHECK(after == doctest::Approx(before).epsilon(1e-9));
    }
  }
}

TEST_CASE("blaschke: derivative by finite differences and multipliers at 1") {
  for (const char* id : ids) {
    const BlaschkeProduct b = BlaschkeProduct::named(id);
    for (double x : {-0.6, -0.1, 0.3, 0.8}) {
      const double fd = oracle::derivative([&](double t) { return b(t).real(); }, x);
      CHECK(b.derivative(x).real() == doctest::Approx(fd).epsilon(1e-8));
    }
  }
  // multiplier at the fixed point 1 by one-sided finite differences
  auto fd_one = [](const BlaschkeProduct& b) {
    const double h = 1e-6;
    return (1.0 - b(1.0 - h).real()) / h;
  };
  CHECK(multiplier_at_one(BlaschkeProduct::named("att12")).multiplier == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(fd_one(BlaschkeProduct::named("att12")) == doctest::Approx(2.0 / 3.0).epsilon(1e-5));
  CHECK(multiplier_at_one(BlaschkeProduct::named("att12")).kind == FixedPointKind::attracting);
  CHECK(multiplier_at_one(BlaschkeProduct::named("par13")).kind == FixedPointKind::parabolic);
  CHECK(fd_one(BlaschkeProduct::named("par13")) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(multiplier_at_one(BlaschkeProduct::named("att56")).multiplier == doctest::Approx(1.0 / 11.0).epsilon(1e-12));
  CHECK(multiplier_at_one(BlaschkeProduct::named("square")).kind == FixedPointKind::repelling);
  CHECK(multiplier_at_one(BlaschkeProduct::named("identity")).kind == FixedPointKind::parabolic);
}

TEST_CASE("blaschke: iterate equals repeated evaluation, real symmetry is preserved") {
  const BlaschkeProduct b = BlaschkeProduct::named("par13");
  cplx w(0.2, 0.3);
  for (int i = 0; i < 50; ++i) w = b(w);
  CHECK(std::abs(iterate(b, {0.2, 0.3}, 50) - w) < 1e-14);
  CHECK(std::abs(iterate(b, {0.2, -0.3}, 50) - std::conj(w)) < 1e-14);
  CHECK(iterate(b, 0.5, 0) == cplx(0.5, 0.0));
}

TEST_CASE("blaschke: anchored evaluation follows orbits into the circle") {
  // 1 - b^n(0) for att12 decays like (2/3)^n; compare with a long double
  // iteration of the real map while it still resolves the gap
  const BlaschkeProduct b = BlaschkeProduct::named("att12");
  AnchoredPoint w = AnchoredPoint::at(0.0);
  long double x = 0.0L;
  for (int n = 1; n <= 60; ++n) {
    w = b.evaluate(w);
    const long double y = (x + 0.5L) / (1.0L + 0.5L * x);
    x = y * y;
    if (n <= 40) CHECK(w.boundary_gap() == doctest::Approx(static_cast<double>(1.0L - x)).epsilon(1e-7));
  }
  // further on only the anchored form still sees the gap
  for (int n = 61; n <= 200; ++n) w = b.evaluate(w);
  CHECK(w.boundary_gap() > 0.0);
  CHECK(w.boundary_gap() < 1e-30);
}

TEST_CASE("blaschke: zeros, pole clearance and defects") {
  const BlaschkeProduct b = BlaschkeProduct::named("att12");
  CHECK(b.zeros_inside(LogScaled(0.6)) == 0);
  CHECK(b.zeros_inside(LogScaled(0.4)) == 2);
  CHECK(b.pole_clearance() == doctest::Approx(1.0));
  CHECK(std::isinf(BlaschkeProduct::named("square").pole_clearance()));
  // 1 - |b|^2 on the circle of radius 1 - gap against the direct product
  for (double th : {0.0, 1.0, 2.5})
    for (double gap : {0.1, 1e-3, -1e-3}) {
      const cplx w = std::polar(1.0 - gap, th);
      const double ref = 1.0 - std::norm(oracle::blaschke(b.zeros(), w));
      CHECK(b.defect_sq(th, LogScaled(gap)).to_double() == doctest::Approx(ref).epsilon(1e-9));
    }
}

TEST_CASE("blaschke: cross-ratio inequality spot checks and domain") {
  for (double r : {0.05, 0.5, 0.95}) {
    const double br = BlaschkeProduct::named("par13")(r).real();
    CHECK(br > r);
    CHECK(check_cross_ratio_inequality(r, 0.5 * br).holds);
  }
  CHECK_THROWS_AS(check_cross_ratio_inequality(0.0, 0.1), DomainError);
  CHECK_THROWS_AS(check_cross_ratio_inequality(0.5, 0.99), DomainError);
}

TEST_CASE("blaschke: semi family closed form, zeros and worked value") {
  CHECK(semi_closed_form(0.5, 0.5) == doctest::Approx(13.0 / 28.0).epsilon(1e-15));
  CHECK(semi_composed(0.5, 0.5) == doctest::Approx(13.0 / 28.0).epsilon(1e-15));
  const SemiFamily f = semi_family(0.5);
  CHECK(f.lambda == doctest::Approx(0.8));
  CHECK(f.b(0.5).real() == doctest::Approx(13.0 / 28.0).epsilon(1e-15));
  const BlaschkeFamily fam("semi");
  CHECK(fam.semi_one_minus_s(0) == 0.25);
  CHECK(fam.semi_one_minus_s(10) == std::ldexp(1.0, -12));
  // s_n close to 1: the factored product still agrees with x(x+l)/(1+lx)
  const BlaschkeProduct b60 = fam.at(60);
  const double e = std::ldexp(1.0, -62), s = 1.0 - e, lam = 2.0 * s / (1.0 + s * s);
  CHECK(b60(0.3).real() == doctest::Approx(0.3 * (0.3 + lam) / (1.0 + lam * 0.3)).epsilon(1e-14));
  CHECK_THROWS_AS(semi_family(1.0), DomainError);
}
