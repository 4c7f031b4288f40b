#include <doctest.h>

#include <cmath>

#include "wdl/classify.hpp"
#include "wdl/errors.hpp"
#include "wdl/hypgeo.hpp"

using namespace wdl;

TEST_CASE("classify: synthetic series") {
  std::vector<double> geometric, flat, slow, constant;
  for (int n = 0; n < 30; ++n) {
    geometric.push_back(std::pow(0.5, n));
    flat.push_back(1.0 + 0.5 * std::pow(0.5, n));
    slow.push_back(0.5 / std::sqrt(n + 1.0));
    constant.push_back(0.7);
  }
  const std::vector<int> deg2(30, 2), deg1(30, 1);
  CHECK(classify_hyperbolic(geometric, deg2).cls == HyperbolicClass::contracting);
  CHECK(classify_hyperbolic(flat, deg2).cls == HyperbolicClass::semi_contracting);
  CHECK(classify_hyperbolic(constant, deg1).cls == HyperbolicClass::eventually_isometric);
  CHECK(classify_hyperbolic(flat, deg1).cls == HyperbolicClass::inconclusive);
  std::vector<double> wobbly = constant;
  wobbly.back() = 0.8;
  CHECK(classify_hyperbolic(wobbly, deg1).cls == HyperbolicClass::inconclusive);
  std::vector<double> small(30, 0.01);
  CHECK(classify_hyperbolic(small, deg2).cls == HyperbolicClass::inconclusive);

  CHECK(classify_boundary(constant).cls == BoundaryClass::bungee);
  CHECK(classify_boundary(geometric).cls == BoundaryClass::converging);
  CHECK(classify_boundary(slow).cls == BoundaryClass::converging);
  std::vector<double> bouncing;
  for (int n = 0; n < 30; ++n) bouncing.push_back(n % 2 ? 0.01 : 0.5);
  CHECK(classify_boundary(bouncing).cls == BoundaryClass::inconclusive);

  CHECK_THROWS_AS(classify_hyperbolic(std::vector<double>(5, 1.0), deg2), InsufficientDataError);
  CHECK_THROWS_AS(classify_boundary(std::vector<double>(5, 1.0)), InsufficientDataError);
}

TEST_CASE("classify: fits on exact and iterated series") {
  std::vector<std::pair<double, double>> sqrt_law;
  std::vector<double> geo;
  for (int n = 1; n <= 50; ++n) {
    sqrt_law.push_back({double(n), 3.0 / std::sqrt(double(n))});
    geo.push_back(std::pow(2.0 / 3.0, n));
  }
  const PowerFit p = fit_power_law(sqrt_law);
  CHECK(p.exponent == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(p.constant == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(p.residual < 1e-12);
  const GeometricFit g = fit_geometric(geo);
  CHECK(g.ratio == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(g.spread < 1e-12);
  sqrt_law[3].second = 0.0;
  CHECK_THROWS_AS(fit_power_law(sqrt_law), DomainError);
  CHECK_THROWS_AS(fit_power_law({{1.0, 1.0}}), InsufficientDataError);
  CHECK_THROWS_AS(fit_geometric({1.0, 2.0}), InsufficientDataError);

  // the anchored series against plain iteration where the latter resolves the gap
  const BlaschkeProduct b = BlaschkeProduct::named("par13");
  const std::vector<double> gaps = boundary_gap_series(b, 2000);
  double x = 0.0;
  for (int n = 1; n <= 2000; ++n) {
    x = b(x).real();
    if (n % 500 == 0) CHECK(gaps[n] == doctest::Approx(1.0 - x).epsilon(1e-9));
  }
}

TEST_CASE("classify: k_n and K_n against the contraction factor in double") {
  const Schedule s = build_schedule("att12", 6);
  for (std::size_t n = 0; n <= 1; ++n) {
    const KnKn b = kn_Kn_bracket(s, n);
    const double sigma = b.sigma.to_double();
    const double r = 1.0 - s.inner_gap[ell(n)].to_double(), R = 1.0 + s.outer_gap[ell(n)].to_double();
    const double sv = 1.0 - sigma;
    CHECK(b.k == doctest::Approx(contraction_factor(sv, R)).epsilon(1e-9));
    CHECK(b.K == doctest::Approx(1.0 / contraction_factor(sv / r, 1.0 / r)).epsilon(1e-9));
  }
  for (std::size_t n = 0; n <= 6; ++n) {
    const KnKn b = kn_Kn_bracket(s, n);
    CHECK(b.one_minus_k > LogScaled());
    CHECK(b.K_minus_one > LogScaled());
  }
  CHECK_THROWS_AS(kn_Kn_bracket(s, 7), DomainError);
}

TEST_CASE("classify: examples at depth 20") {
  for (const ExampleSpec& e : example_specs()) {
    CAPTURE(e.id);
    const ClassificationReport r = run_example(e, 20, PerturbationModel::random(3, 0.9, true));
    CHECK(r.classes_match());
    for (const Marker& m : r.markers) {
      CAPTURE(m.name);
      CHECK(m.pass);
    }
  }
  CHECK_THROWS_AS(run_example(example_spec("1a"), 5, PerturbationModel::zero()), DomainError);
  CHECK_THROWS_AS(example_spec("4c"), DomainError);
}

TEST_CASE("classify: semi products against the stated bounds") {
  const SemiProducts p = semi_products();
  CHECK(p.lambda_lower >= 8.0 / 9.0);
  CHECK(p.expand_upper <= 4.0 / 3.0);
  // truncation at 200 versus 20 terms changes almost nothing
  const SemiProducts q = semi_products(20);
  CHECK(q.lambda_lower <= p.lambda_lower + 1e-12);
  CHECK(q.expand_upper >= p.expand_upper - 1e-12);
}
