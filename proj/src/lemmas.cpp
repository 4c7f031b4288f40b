#include "wdl/lemmas.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "wdl/blaschke.hpp"
#include "wdl/hypgeo.hpp"

namespace wdl {

namespace {

class Tally {
 public:
  Tally(std::string name, bool strict) {
    r_.name = std::move(name);
    r_.strict = strict;
    r_.min_margin = std::numeric_limits<double>::infinity();
  }

  // small <= large (or small < large when strict)
  void add(double small, double large, const std::string& where) {
    const double scale = std::max(std::fabs(large), std::numeric_limits<double>::min());
    const double margin = (large - small) / scale;
    ++r_.checks;
    if (r_.strict ? !(margin > 0.0) : !(margin >= 0.0)) ++r_.failures;
    if (margin < r_.min_margin) {
      r_.min_margin = margin;
      r_.worst = where;
    }
  }

  void add_close(double a, double b, double tolerance, const std::string& where) {
    const double err = std::fabs(a - b);
    add(err, tolerance, where);
  }

  SweepResult result() const { return r_; }

 private:
  SweepResult r_;
};

std::string fmt(std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [k, v] : kv) {
    if (!first) os << ' ';
    os << k << '=' << v;
    first = false;
  }
  return os.str();
}

double uniform(std::mt19937_64& g) { return std::uniform_real_distribution<double>(0.0, 1.0)(g); }

void check_triple(Tally& lower, Tally& upper, double s, double r, double R, cplx z, cplx w) {
  const double d1 = hyp_dist_unit(z, w);
  const double dR = hyp_dist_disc(Disc({0.0, 0.0}, R), z, w);
  const double dr = hyp_dist_disc(Disc({0.0, 0.0}, r), z, w);
  const std::string where = fmt({{"s", s}, {"r", r}, {"R", R}, {"z.re", z.real()}, {"z.im", z.imag()},
                                 {"w.re", w.real()}, {"w.im", w.imag()}});
  lower.add(contraction_factor(s, R) * d1, dR, where);
  upper.add(dr, d1 / contraction_factor(s / r, 1.0 / r), where);
}

}  // namespace

std::vector<SweepResult> sweep_hyperbolic_estimates(std::size_t n, std::size_t pairs, std::uint64_t seed) {
  Tally lower("dist_D(0,R) >= c(s,R) dist_D", false);
  Tally upper("dist_D(0,r) <= dist_D / c(s/r,1/r)", false);
  Tally bracket("log((1-r)/(1-s)) <= dist_D(r,s) <= 2 log((1-r)/(1-s))", false);
  const double step = 1.0 / static_cast<double>(n + 1);
  const cplx rot = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  for (std::size_t i = 1; i <= n; ++i) {
    const double s = static_cast<double>(i) * step;
    for (std::size_t j = 1; j <= n; ++j) {
      const double r = s + (1.0 - s) * static_cast<double>(j) * step;
      for (std::size_t k = 1; k <= n; ++k) {
        const double R = 1.0 + static_cast<double>(k) * 2.0 * step;
        check_triple(lower, upper, s, r, R, s, -s);
        check_triple(lower, upper, s, r, R, s, s * rot);
        check_triple(lower, upper, s, r, R, 0.5 * s, cplx(0.0, s));
      }
      // real-axis bracket for the pair (s, r) with s < r
      const double d = hyp_dist_unit(s, r);
      const double l = std::log((1.0 - s) / (1.0 - r));
      bracket.add(l, d, fmt({{"r", s}, {"s", r}}));
      bracket.add(d, 2.0 * l, fmt({{"r", s}, {"s", r}}));
    }
  }
  std::mt19937_64 g(seed);
  for (std::size_t p = 0; p < pairs; ++p) {
    const double s = 0.001 + 0.998 * uniform(g);
    const double r = s + (1.0 - s) * (0.001 + 0.998 * uniform(g));
    const double R = 1.0 + 4.0 * (0.001 + uniform(g));
    const cplx z = std::polar(s * std::sqrt(uniform(g)), 2.0 * std::numbers::pi * uniform(g));
    const cplx w = std::polar(s * std::sqrt(uniform(g)), 2.0 * std::numbers::pi * uniform(g));
    if (z == w) continue;
    check_triple(lower, upper, s, r, R, z, w);
    const double a = s * uniform(g), b = s + (1.0 - s) * uniform(g);
    if (a < b) {
      const double d = hyp_dist_unit(a, b);
      const double l = std::log((1.0 - a) / (1.0 - b));
      bracket.add(l, d, fmt({{"r", a}, {"s", b}}));
      bracket.add(d, 2.0 * l, fmt({{"r", a}, {"s", b}}));
    }
  }
  return {lower.result(), upper.result(), bracket.result()};
}

SweepResult sweep_mobius_invariance(std::size_t pairs, double tolerance, std::uint64_t seed) {
  Tally t("Mobius invariance of dist_D", false);
  std::mt19937_64 g(seed);
  for (std::size_t p = 0; p < pairs; ++p) {
    const cplx a = std::polar(0.95 * std::sqrt(uniform(g)), 2.0 * std::numbers::pi * uniform(g));
    const cplx u = std::polar(1.0, 2.0 * std::numbers::pi * uniform(g));
    const cplx z = std::polar(0.95 * std::sqrt(uniform(g)), 2.0 * std::numbers::pi * uniform(g));
    const cplx w = std::polar(0.95 * std::sqrt(uniform(g)), 2.0 * std::numbers::pi * uniform(g));
    auto M = [&](cplx x) { return u * (x - a) / (1.0 - std::conj(a) * x); };
    const double before = hyp_dist_unit(z, w), after = hyp_dist_unit(M(z), M(w));
    t.add_close(before, after, tolerance * std::max(1.0, before),
                fmt({{"a.re", a.real()}, {"a.im", a.imag()}, {"z.re", z.real()}, {"w.re", w.real()}}));
  }
  return t.result();
}

SweepResult sweep_cross_ratio(std::size_t nr, std::size_t nx) {
  Tally t("cross-ratio inequality for ((z + 1/3)/(1 + z/3))^2", true);
  static const BlaschkeProduct b = BlaschkeProduct::named("par13");
  for (std::size_t i = 1; i <= nr; ++i) {
    const double r = static_cast<double>(i) / static_cast<double>(nr + 1);
    const double br = b.evaluate(r).real();
    for (std::size_t j = 1; j <= nx; ++j) {
      const double x = br * static_cast<double>(j) / static_cast<double>(nx + 1);
      if (x == r) continue;
      const InequalityCheck c = check_cross_ratio_inequality(r, x);
      t.add(c.lhs, c.rhs, fmt({{"r", r}, {"x", x}}));
    }
  }
  return t.result();
}

std::vector<SweepResult> sweep_semi_bounds(std::size_t ns, std::size_t nx, double tolerance) {
  Tally agree("closed form = mu~(mu(x)^2)", false);
  Tally s1("lambda x <= b(x) <= x", false);
  Tally s2("lambda (y-x) <= b(y)-b(x) <= 2(y-x)/(1+lambda)", false);
  std::vector<double> xs(nx);
  for (std::size_t j = 0; j < nx; ++j) xs[j] = (static_cast<double>(j) + 0.5) / static_cast<double>(nx);
  for (std::size_t i = 0; i < ns; ++i) {
    const double s = (static_cast<double>(i) + 0.5) / static_cast<double>(ns);
    const double lambda = 2.0 * s / (1.0 + s * s);
    std::vector<double> bx(nx);
    for (std::size_t j = 0; j < nx; ++j) {
      const double x = xs[j];
      bx[j] = semi_closed_form(s, x);
      agree.add_close(bx[j], semi_composed(s, x), tolerance, fmt({{"s", s}, {"x", x}}));
      s1.add(lambda * x, bx[j], fmt({{"s", s}, {"x", x}}));
      s1.add(bx[j], x, fmt({{"s", s}, {"x", x}}));
    }
    for (std::size_t j = 0; j < nx; ++j)
      for (std::size_t k = j + 1; k < nx; ++k) {
        const double dx = xs[k] - xs[j], db = bx[k] - bx[j];
        s2.add(lambda * dx, db, fmt({{"s", s}, {"x", xs[j]}, {"y", xs[k]}}));
        s2.add(db, 2.0 * dx / (1.0 + lambda), fmt({{"s", s}, {"x", xs[j]}, {"y", xs[k]}}));
      }
  }
  return {agree.result(), s1.result(), s2.result()};
}

}  // namespace wdl
