#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "wdl/errors.hpp"
#include "wdl/hypgeo.hpp"

using namespace wdl;

namespace {
cplx random_in_disc(std::mt19937_64& g, double r) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(r * std::sqrt(u(g)), 2.0 * std::numbers::pi * u(g));
}
}  // namespace

TEST_CASE("hypgeo: distance matches quadrature of the Poincare density") {
  std::mt19937_64 g(11);
  for (int i = 0; i < 200; ++i) {
    const cplx z = random_in_disc(g, 0.97), w = random_in_disc(g, 0.97);
    CHECK(hyp_dist_unit(z, w) == doctest::Approx(oracle::hyp_dist_quadrature(z, w)).epsilon(1e-9));
  }
  // real segment: 2 artanh
  CHECK(hyp_dist_unit(0.0, 0.5) == doctest::Approx(oracle::real_segment_length(0.5)).epsilon(1e-12));
}

TEST_CASE("hypgeo: metric axioms and Schwarz-Pick for disc automorphisms") {
  std::mt19937_64 g(12);
  for (int i = 0; i < 500; ++i) {
    const cplx z = random_in_disc(g, 0.99), w = random_in_disc(g, 0.99), v = random_in_disc(g, 0.99);
    const double dzw = hyp_dist_unit(z, w);
    CHECK(dzw >= 0.0);
    CHECK(dzw == doctest::Approx(hyp_dist_unit(w, z)));
    CHECK(hyp_dist_unit(z, z) == 0.0);
    CHECK(dzw <= hyp_dist_unit(z, v) + hyp_dist_unit(v, w) + 1e-12);
    const cplx a = random_in_disc(g, 0.9);
    auto M = [&](cplx x) { return (x - a) / (1.0 - std::conj(a) * x); };
    CHECK(hyp_dist_unit(M(z), M(w)) == doctest::Approx(dzw).epsilon(1e-10));
  }
}

TEST_CASE("hypgeo: hyp_dist_disc rescales and rejects outside points") {
  const Disc d({9.0, 0.0}, 0.25);
  CHECK(hyp_dist_disc(d, {9.1, 0.0}, {8.95, 0.05}) ==
        doctest::Approx(hyp_dist_unit(cplx(0.4, 0.0), cplx(-0.2, 0.2))));
  CHECK_THROWS_AS(hyp_dist_disc(d, {9.3, 0.0}, {9.0, 0.0}), DomainError);
}

TEST_CASE("hypgeo: contraction factor is the minimum density ratio on D(0,s)") {
  // density ratio of D(0,R) to D(0,1) at radius t, minimised by brute force
  for (double s : {0.1, 0.5, 0.9, 0.999})
    for (double R : {1.001, 1.1, 2.0, 10.0}) {
      double best = 1e300;
      for (int i = 0; i <= 4000; ++i) {
        const double t = s * i / 4000.0;
        best = std::min(best, (2.0 * R / (R * R - t * t)) / (2.0 / (1.0 - t * t)));
      }
      CHECK(contraction_factor(s, R) == doctest::Approx(best).epsilon(1e-12));
    }
  CHECK(contraction_factor(0.5, 1.0) == 1.0);
  CHECK_THROWS_AS(contraction_factor(1.0, 2.0), DomainError);
  CHECK_THROWS_AS(contraction_factor(0.5, 0.9), DomainError);
}

TEST_CASE("hypgeo: anchored points keep 1 - |w|^2 near the circle") {
  for (double e : {1e-3, 1e-9, 1e-15, 1e-30}) {
    const cplx dir = std::polar(1.0, 0.7);
    AnchoredPoint p = AnchoredPoint::near_circle(dir, {0.0, 0.0});
    p.anchor_defect = e;
    CHECK(p.one_minus_abs2() == doctest::Approx(e).epsilon(1e-12));
    CHECK(p.boundary_gap() == doctest::Approx(e / 2.0).epsilon(1e-6));
  }
  // long double oracle in the resolvable range
  std::mt19937_64 g(13);
  for (int i = 0; i < 200; ++i) {
    const cplx w = random_in_disc(g, 0.999999);
    const long double re = w.real(), im = w.imag();
    const long double ref = 1.0L - re * re - im * im;
    CHECK(AnchoredPoint::at(w).one_minus_abs2() == doctest::Approx(static_cast<double>(ref)).epsilon(1e-9));
    CHECK(unit_defect(w) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
  }
}

TEST_CASE("hypgeo: anchored difference and distance with a shared anchor") {
  AnchoredPoint a = AnchoredPoint::near_circle({1.0, 0.0}, {0.0, 0.0});
  a.anchor_defect = 2e-40;
  AnchoredPoint b = a;
  b.anchor_defect = 8e-40;
  // |a| = 1 - 1e-40, |b| = 1 - 4e-40 on the positive axis
  CHECK(std::abs(difference(a, b) - cplx(3e-40, 0.0)) < 1e-52);
  // dist between 1 - x and 1 - y on the radius tends to log(y / x)
  CHECK(hyp_dist_unit(a, b) == doctest::Approx(std::log(4.0)).epsilon(1e-9));
}

TEST_CASE("hypgeo: winding numbers agree with dense sampling") {
  auto f = [](double t) { return cplx(0.3, 0.1) + std::polar(1.0, 3.0 * t) * (1.0 + 0.2 * std::cos(t)); };
  for (cplx p : {cplx(0.3, 0.1), cplx(0.0, 0.0), cplx(2.0, 0.0)}) {
    CHECK(winding_number_adaptive(f, p) == oracle::winding(f, p));
    CHECK(winding_number(SampledCurve::from_angle(f, 4096), p) == oracle::winding(f, p));
  }
  const SampledCurve c = SampledCurve::circle({0.0, 0.0}, 1.0, 64);
  CHECK(winding_number(c, {0.0, 0.0}) == 1);
  CHECK(winding_number(c.reversed(), {0.0, 0.0}) == -1);
  CHECK(winding_number(c.rotated(17), {0.0, 0.0}) == 1);
  CHECK(winds_around_disc(c, Disc({0.0, 0.0}, 0.5), 1));
  CHECK_FALSE(winds_around_disc(c, Disc({0.8, 0.0}, 0.5), 1));
  CHECK(surrounds(SampledCurve::circle({0.0, 0.0}, 2.0, 256), SampledCurve::circle({0.1, 0.0}, 1.0, 256)));
  CHECK_FALSE(surrounds(SampledCurve::circle({0.0, 0.0}, 1.0, 256), SampledCurve::circle({0.5, 0.0}, 1.0, 256)));
}
