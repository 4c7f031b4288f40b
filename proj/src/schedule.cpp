#include "wdl/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wdl/errors.hpp"
#include "wdl/hypgeo.hpp"

namespace wdl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMargin = 0.9;
constexpr double kWindingRadius = 0.51;

EpsBreakdown eps_from_local(const Schedule& s, std::uint64_t m, const LogScaled& inner_local,
                            const LogScaled& outer_local) {
  const LogScaled next = s.rho(m + 1);
  EpsBreakdown e;
  e.inner = (inner_local * next).ldexp(-2);
  e.outer = (outer_local * next).ldexp(-2);
  e.width = s.delta(m + 1).ldexp(-2);
  e.value = e.width;
  e.governing = 2;
  if (e.inner < e.value) {
    e.value = e.inner;
    e.governing = 0;
  }
  if (e.outer < e.value) {
    e.value = e.outer;
    e.governing = 1;
  }
  return e;
}

// Shrinks the inner gap until b(circle) winds deg times around D(0, 0.51).
LogScaled fit_winding(const BlaschkeProduct& b, LogScaled g, std::size_t samples, EntryRecord& rec) {
  const int d = b.degree();
  for (int it = 0; it < 200; ++it) {
    const int inside = b.zeros_inside(g);
    const CircleExtremum worst =
        circle_extremum([&](double t) { return b.defect(t, g); }, true, samples, b.critical_angles());
    const double min_modulus = 1.0 - worst.value.to_double();
    if (inside == d && min_modulus > kWindingRadius) {
      rec.winding = inside;
      rec.min_image_modulus = min_modulus;
      rec.refinements = it;
      double peak = b.poisson_sum(0.0);
      for (double t : b.critical_angles()) peak = std::max(peak, b.poisson_sum(t));
      rec.sampled_winding = -1;
      if (peak * kTwoPi / static_cast<double>(samples) < 0.5) {
        const double r = 1.0 - g.to_double();
        try {
          rec.sampled_winding = winding_number(
              SampledCurve::from_angle([&](double t) { return b.evaluate(std::polar(r, t)); }, samples), 0.0);
        } catch (const AmbiguityError&) {
          rec.sampled_winding = -1;
        }
        if (rec.sampled_winding != -1 && rec.sampled_winding != inside)
          throw InfeasibleError("build_schedule: sampled winding disagrees with the zero count");
      }
      return g;
    }
    g = g.ldexp(-1);
  }
  throw InfeasibleError("build_schedule: winding condition cannot be met");
}

}  // namespace

LogScaled Schedule::rho(std::uint64_t m) const {
  const Phase p = phase_of(m);
  switch (p.kind) {
    case PhaseKind::delta:
      return alpha.at(p.n);
    case PhaseKind::g:
      return LogScaled(1.0);
    case PhaseKind::d:
      return alpha.at(p.n + 1);
  }
  return LogScaled(1.0);
}

LogScaled Schedule::delta(std::uint64_t m) const { return rho(m) * (inner_gap.at(m) + outer_gap.at(m)); }

LogScaled Schedule::eps_rel(std::uint64_t m) const { return eps.at(m) / rho(m + 1); }

CircleExtremum circle_extremum(const std::function<LogScaled(double)>& f, bool maximize, std::size_t samples,
                               const std::vector<double>& extra_angles, bool stabilize) {
  auto better = [maximize](const LogScaled& a, const LogScaled& b) { return maximize ? a > b : a < b; };
  std::size_t n = std::max<std::size_t>(samples, 16);
  CircleExtremum best;
  LogScaled prev;
  bool have_prev = false;
  for (;;) {
    best.theta = 0.0;
    best.value = f(0.0);
    best.samples = n;
    for (std::size_t i = 1; i < n; ++i) {
      const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
      const LogScaled v = f(t);
      if (better(v, best.value)) {
        best.value = v;
        best.theta = t;
      }
    }
    for (double t : extra_angles) {
      const LogScaled v = f(t);
      if (better(v, best.value)) {
        best.value = v;
        best.theta = t;
      }
    }
    // golden-section search on the bracket around the best sample
    const double h = kTwoPi / static_cast<double>(n);
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = best.theta - h, c = best.theta + h;
    double x1 = c - phi * (c - a), x2 = a + phi * (c - a);
    LogScaled f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80 && c - a > 1e-15; ++it) {
      if (better(f1, f2)) {
        c = x2;
        x2 = x1;
        f2 = f1;
        x1 = c - phi * (c - a);
        f1 = f(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + phi * (c - a);
        f2 = f(x2);
      }
    }
    for (auto [t, v] : {std::pair{x1, f1}, std::pair{x2, f2}}) {
      if (better(v, best.value)) {
        best.value = v;
        best.theta = t;
      }
    }
    if (!stabilize) break;
    if (have_prev) {
      const bool stable = prev.is_zero() ? best.value.is_zero() : relative_difference(best.value, prev) <= 1e-12;
      if (stable || n >= (std::size_t(1) << 16)) break;
    }
    prev = best.value;
    have_prev = true;
    n *= 2;
  }
  if (best.theta < 0) best.theta += kTwoPi;
  if (best.theta >= kTwoPi) best.theta -= kTwoPi;
  return best;
}

CircleExtremum image_distance(const BlaschkeProduct& b, const LogScaled& gap, bool outer, std::size_t samples) {
  if (!outer) return circle_extremum([&](double t) { return b.defect(t, gap); }, false, samples);
  const LogScaled neg = -gap;
  return circle_extremum([&](double t) { return -b.defect(t, neg); }, false, samples);
}

EpsBreakdown eps_definition(const Schedule& s, std::uint64_t m, std::size_t samples) {
  if (m >= s.last_step()) throw DomainError("eps_definition: need m < l_N");
  const Phase p = phase_of(m);
  if (p.kind == PhaseKind::g) {
    const BlaschkeProduct& b = s.product(p.n);
    return eps_from_local(s, m, image_distance(b, s.inner_gap[m], false, samples).value,
                          image_distance(b, s.outer_gap[m], true, samples).value);
  }
  return eps_from_local(s, m, s.inner_gap[m], s.outer_gap[m]);
}

Schedule build_schedule(const std::string& family_id, std::size_t depth, std::size_t samples) {
  if (depth < 1) throw DomainError("build_schedule: depth must be at least 1");
  if (samples < 16) throw DomainError("build_schedule: need at least 16 samples");
  const BlaschkeFamily family(family_id);
  Schedule s;
  s.family_id = family_id;
  s.depth = depth;
  s.samples = samples;
  for (std::size_t n = 0; n <= depth; ++n) {
    s.products.push_back(family.at(n));
    s.degrees.push_back(s.products.back().degree());
  }
  const std::uint64_t last = ell(depth);
  s.inner_gap.resize(last + 1);
  s.outer_gap.resize(last + 1);
  s.alpha.push_back(LogScaled(1.0));

  // Delta_0: r = 11/12, R = 13/12.
  s.inner_gap[0] = LogScaled(1.0 / 12.0);
  s.outer_gap[0] = LogScaled(1.0 / 12.0);

  auto enter_g = [&](std::size_t n, std::uint64_t m, const LogScaled& prev_abs_inner, const LogScaled& prev_abs_outer,
                     const LogScaled& prev_local_inner, const LogScaled& prev_local_outer) {
    EntryRecord rec;
    rec.n = n;
    rec.inner_halved = prev_abs_inner.ldexp(-1);
    rec.inner_squared = prev_local_inner.square();
    rec.outer_halved = prev_abs_outer.ldexp(-1);
    rec.outer_image = prev_local_outer;
    rec.outer_cap = kMargin * s.products[n].pole_clearance();
    // Step 1 takes the smaller inner candidate; later entries halve (see README).
    LogScaled inner = n == 0 ? min(rec.inner_halved, rec.inner_squared) : rec.inner_halved;
    inner = fit_winding(s.products[n], inner, samples, rec);
    LogScaled outer = min(rec.outer_halved, rec.outer_image);
    if (std::isfinite(rec.outer_cap)) outer = min(outer, LogScaled(rec.outer_cap));
    rec.inner_gap = inner;
    rec.outer_gap = outer;
    s.inner_gap[m] = inner;
    s.outer_gap[m] = outer;
    s.entries.push_back(rec);
  };

  enter_g(0, 1, s.inner_gap[0], s.outer_gap[0], s.inner_gap[0], s.outer_gap[0]);

  std::vector<EpsBreakdown> g_eps;
  for (std::size_t n = 0; n < depth; ++n) {
    const std::uint64_t m = ell(n);
    const BlaschkeProduct& b = s.products[n];
    LevelRecord lv;
    lv.n = n;
    lv.inner_image_distance = image_distance(b, s.inner_gap[m], false, samples).value;
    lv.outer_image_distance = image_distance(b, s.outer_gap[m], true, samples).value;
    lv.inner_circle = kMargin * min(s.inner_gap[m] / 6.0, lv.inner_image_distance.ldexp(-1));
    lv.outer_circle =
        kMargin * min(min(s.outer_gap[m] / 6.0, lv.inner_circle), lv.outer_image_distance.ldexp(-1));
    const LogScaled a = lv.outer_circle;
    s.alpha.push_back(a);
    s.levels.push_back(lv);
    // offsets alpha^2 absolute, alpha in the local units of D_0
    s.inner_gap[m + 1] = a;
    s.outer_gap[m + 1] = a;
    for (std::uint64_t k = 1; k <= n + 1; ++k) {
      s.inner_gap[m + 1 + k] = s.inner_gap[m + k].ldexp(-1);
      s.outer_gap[m + 1 + k] = s.outer_gap[m + k].ldexp(-1);
    }
    const std::uint64_t prev = m + n + 2;
    enter_g(n + 1, prev + 1, a * s.inner_gap[prev], a * s.outer_gap[prev], s.inner_gap[prev], s.outer_gap[prev]);
  }

  s.eps.resize(last);
  for (std::uint64_t m = 0; m < last; ++m) {
    const Phase p = phase_of(m);
    if (p.kind == PhaseKind::g)
      s.eps[m] = eps_from_local(s, m, s.levels[p.n].inner_image_distance, s.levels[p.n].outer_image_distance).value;
    else
      s.eps[m] = eps_from_local(s, m, s.inner_gap[m], s.outer_gap[m]).value;
  }
  return s;
}

}  // namespace wdl
