#include "wdl/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "wdl/errors.hpp"
#include "wdl/hypgeo.hpp"
#include "wdl/itinerary.hpp"

namespace wdl {

namespace {

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  Line l;
  l.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  l.intercept = my - l.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (l.intercept + l.slope * x[i]);
    ss += r * r;
  }
  l.rms = std::sqrt(ss / n);
  return l;
}

// Slope of log(value) against n over [from, to), skipping zeros.
double log_linear_slope(const std::vector<double>& v, std::size_t from, std::size_t to) {
  std::vector<double> x, y;
  for (std::size_t i = from; i < to; ++i)
    if (v[i] > 0.0) {
      x.push_back(static_cast<double>(i));
      y.push_back(std::log(v[i]));
    }
  if (x.size() < 2) return -std::numeric_limits<double>::infinity();
  return least_squares(x, y).slope;
}

// Slope of log(value) against log(n) over [from, to), n >= 1.
double log_log_slope(const std::vector<double>& v, std::size_t from, std::size_t to) {
  std::vector<double> x, y;
  for (std::size_t i = std::max<std::size_t>(from, 1); i < to; ++i)
    if (v[i] > 0.0) {
      x.push_back(std::log(static_cast<double>(i)));
      y.push_back(std::log(v[i]));
    }
  if (x.size() < 2) return -std::numeric_limits<double>::infinity();
  return least_squares(x, y).slope;
}

double local_start(const Schedule& s, const PerturbationModel& model, const ExampleSpec::Start& st) {
  if (st.solve) return solve_start(s, model, st.value);
  return st.value - 4.0;
}

Marker make_marker(std::string name, bool pass, double worst, double bound, std::string detail = {}) {
  return Marker{std::move(name), pass, worst, bound, std::move(detail)};
}

}  // namespace

std::string to_string(HyperbolicClass c) {
  switch (c) {
    case HyperbolicClass::contracting:
      return "contracting";
    case HyperbolicClass::semi_contracting:
      return "semi_contracting";
    case HyperbolicClass::eventually_isometric:
      return "eventually_isometric";
    case HyperbolicClass::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::string to_string(BoundaryClass c) {
  switch (c) {
    case BoundaryClass::bungee:
      return "bungee";
    case BoundaryClass::converging:
      return "converging";
    case BoundaryClass::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::vector<double> gphase_distances(const OrbitTrace& a, const OrbitTrace& b) {
  const auto ga = a.g_records(), gb = b.g_records();
  std::vector<double> d;
  for (std::size_t i = 0; i < std::min(ga.size(), gb.size()); ++i) {
    if (ga[i]->m != gb[i]->m) throw DomainError("gphase_distances: traces are not aligned");
    d.push_back(hyp_dist_unit(ga[i]->w, gb[i]->w));
  }
  return d;
}

std::vector<double> gphase_boundary_gaps(const OrbitTrace& t) {
  std::vector<double> g;
  for (const OrbitRecord* r : t.g_records()) g.push_back(r->w.boundary_gap());
  return g;
}

HyperbolicDecision classify_hyperbolic(const std::vector<double>& d, const std::vector<int>& degrees,
                                       const ClassifyOptions& opt) {
  if (d.size() < std::max<std::size_t>(opt.window, 2))
    throw InsufficientDataError("classify_hyperbolic: fewer G-phases than the window");
  HyperbolicDecision out;
  const std::size_t n = d.size(), half = n / 2;
  const bool univalent =
      std::all_of(degrees.begin(), degrees.begin() + static_cast<std::ptrdiff_t>(std::min(degrees.size(), n)),
                  [](int k) { return k == 1; });
  if (univalent) {
    const std::size_t tail = std::min(opt.constancy_tail, n);
    const auto [lo, hi] = std::minmax_element(d.end() - static_cast<std::ptrdiff_t>(tail), d.end());
    const double spread = (*hi - *lo) / std::max(*hi, std::numeric_limits<double>::min());
    out.evidence = Evidence{"relative spread of the last G-phase distances", spread, opt.constancy_tolerance,
                            n - tail, n};
    if (*lo > 0.0 && spread <= opt.constancy_tolerance) out.cls = HyperbolicClass::eventually_isometric;
    return out;
  }
  const double first = d.front(), last = d.back();
  const double slope = log_linear_slope(d, half, n);
  if (first > 0.0 && last < opt.decay_factor * first && slope < 0.0) {
    out.cls = HyperbolicClass::contracting;
    out.evidence = Evidence{"last / first distance with negative log-linear trend", last / first, opt.decay_factor,
                            0, n};
    return out;
  }
  const double liminf = *std::min_element(d.begin() + static_cast<std::ptrdiff_t>(half), d.end());
  out.evidence = Evidence{"minimum distance over the second half", liminf, opt.liminf_margin, half, n};
  if (liminf > opt.liminf_margin) out.cls = HyperbolicClass::semi_contracting;
  return out;
}

HyperbolicDecision classify_hyperbolic(const OrbitTrace& a, const OrbitTrace& b, const std::vector<int>& degrees,
                                       const ClassifyOptions& opt) {
  return classify_hyperbolic(gphase_distances(a, b), degrees, opt);
}

BoundaryDecision classify_boundary(const std::vector<double>& g, const ClassifyOptions& opt) {
  if (g.size() < std::max<std::size_t>(opt.window, 2))
    throw InsufficientDataError("classify_boundary: fewer G-phases than the window");
  BoundaryDecision out;
  const std::size_t n = g.size(), half = n / 2;
  // Decay is tested first: a parabolic approach to the circle is slow and
  // can still sit far from it at moderate depth.
  bool monotone = true;
  for (std::size_t i = half + 1; i < n; ++i)
    if (g[i] > g[i - 1]) monotone = false;
  if (monotone && g.front() > 0.0 && g.back() < opt.decay_factor * g.front()) {
    out.cls = BoundaryClass::converging;
    out.evidence = Evidence{"last / first boundary gap, monotone second half", g.back() / g.front(),
                            opt.decay_factor, 0, n};
    return out;
  }
  const double exponent = log_log_slope(g, half, n);
  if (monotone && exponent <= opt.power_exponent) {
    out.cls = BoundaryClass::converging;
    out.evidence = Evidence{"log-log slope of the boundary gap, monotone second half", exponent,
                            opt.power_exponent, half, n};
    return out;
  }
  const double liminf = *std::min_element(g.begin() + static_cast<std::ptrdiff_t>(half), g.end());
  out.evidence = Evidence{"minimum boundary gap over the second half", liminf, opt.liminf_margin, half, n};
  if (liminf > opt.liminf_margin) out.cls = BoundaryClass::bungee;
  return out;
}

BoundaryDecision classify_boundary(const OrbitTrace& t, const ClassifyOptions& opt) {
  return classify_boundary(gphase_boundary_gaps(t), opt);
}

PowerFit fit_power_law(const std::vector<std::pair<double, double>>& series) {
  if (series.size() < 20) throw InsufficientDataError("fit_power_law: need at least 20 entries");
  std::vector<double> x, y;
  for (const auto& [n, v] : series) {
    if (!(n > 0.0) || !(v > 0.0)) throw DomainError("fit_power_law: entries must be positive");
    x.push_back(std::log(n));
    y.push_back(std::log(v));
  }
  const Line l = least_squares(x, y);
  return PowerFit{l.slope, std::exp(l.intercept), l.rms};
}

GeometricFit fit_geometric(const std::vector<double>& series) {
  if (series.size() < 20) throw InsufficientDataError("fit_geometric: need at least 20 entries");
  for (double v : series)
    if (!(v > 0.0)) throw DomainError("fit_geometric: entries must be positive");
  std::vector<double> r;
  for (std::size_t i = 1; i < series.size(); ++i) r.push_back(series[i] / series[i - 1]);
  GeometricFit f;
  f.ratio = std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(r.size());
  const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
  f.spread = *hi - *lo;
  double ss = 0.0;
  for (double q : r) ss += (q - f.ratio) * (q - f.ratio);
  f.residual = std::sqrt(ss / static_cast<double>(r.size()));
  return f;
}

std::vector<double> boundary_gap_series(const BlaschkeProduct& b, std::uint64_t n_max) {
  std::vector<double> out;
  out.reserve(n_max + 1);
  AnchoredPoint w = AnchoredPoint::at(0.0);
  out.push_back(w.boundary_gap());
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    w = b.evaluate(w);
    out.push_back(w.boundary_gap());
  }
  return out;
}

KnKn kn_Kn_bracket(const Schedule& s, std::size_t n) {
  if (n > s.depth) throw DomainError("kn_Kn_bracket: level beyond the schedule depth");
  const std::uint64_t m = ell(n);
  KnKn r;
  r.n = n;
  // phi maps gamma_{l_n - 1} to the circle of radius 1 - gap in G_n units
  r.sigma = 0.75 * s.inner_gap.at(m - 1);
  const LogScaled gr = s.inner_gap.at(m), gR = s.outer_gap.at(m);
  if (!(gr < r.sigma)) throw DomainError("kn_Kn_bracket: s is not inside D(0, r)");
  const LogScaled two(2.0);
  const LogScaled A = r.sigma * (two - r.sigma);  // 1 - s^2
  const LogScaled bR = gR * (two + gR);           // R^2 - 1
  const LogScaled br = gr * (two - gr);           // 1 - r^2
  r.one_minus_k = gR * ((two + gR) - A) / (bR + A);
  const LogScaled c = (A - br) / ((LogScaled(1.0) - gr) * A);
  const LogScaled one_minus_c = gr * ((two - gr) - A) / ((LogScaled(1.0) - gr) * A);
  r.K_minus_one = one_minus_c / c;
  r.k = 1.0 - r.one_minus_k.to_double();
  r.K = 1.0 + r.K_minus_one.to_double();
  return r;
}

const std::vector<ExampleSpec>& example_specs() {
  using H = HyperbolicClass;
  using B = BoundaryClass;
  static const std::vector<ExampleSpec> specs = {
      {"1a", "square", {4.0, false}, {4.0 + 1.0 / 24.0, false}, H::contracting, B::bungee,
       "b_n(z) = z^2; orbits of D(4, 1/12) collapse onto kappa_n"},
      {"1b", "par13", {0.0, true}, {1.0 / 9.0, true}, H::contracting, B::converging,
       "parabolic b at 1; f(x) = kappa_0, f(y) = kappa_0 + 1/9"},
      {"2a", "semi", {4.0, false}, {19.0 / 4.0, false}, H::semi_contracting, B::bungee,
       "b_n = mu~_n(mu_n^2) with s_n = 1 - 2^-(n+2); orbits of 4 and 19/4"},
      {"2b", "att12", {0.0, true}, {0.25, true}, H::semi_contracting, B::converging,
       "attracting b at 1, multiplier 2/3; f(x) = kappa_0, f(y) = kappa_0 + 1/4"},
      {"3a", "identity", {4.0, false}, {4.5, false}, H::eventually_isometric, B::bungee,
       "b_n(z) = z; orbits of 4 and 9/2"},
      {"3b", "att56", {0.0, true}, {4.0, false}, H::eventually_isometric, B::converging,
       "b(z) = (z + 5/6) / (1 + 5z/6); f(x) = kappa_0 and the orbit of 4"},
  };
  return specs;
}

const ExampleSpec& example_spec(const std::string& id) {
  for (const ExampleSpec& e : example_specs())
    if (e.id == id) return e;
  throw DomainError("example_spec: unknown example id " + id);
}

bool ClassificationReport::classes_match() const {
  return hyperbolic.cls == expected_hyperbolic && boundary.cls == expected_boundary;
}

bool ClassificationReport::markers_pass() const {
  return std::all_of(markers.begin(), markers.end(), [](const Marker& m) { return m.pass; });
}

bool ClassificationReport::inconclusive() const {
  return hyperbolic.cls == HyperbolicClass::inconclusive || boundary.cls == BoundaryClass::inconclusive;
}

SemiProducts semi_products(std::size_t terms) {
  const BlaschkeFamily fam("semi");
  double lam = 1.0, expand = 1.0;
  for (std::size_t j = 0; j < terms; ++j) {
    const double e = fam.semi_one_minus_s(j);
    const double one_minus_lambda = e * e / (1.0 + (1.0 - e) * (1.0 - e));
    lam *= 1.0 - one_minus_lambda;
    expand *= 1.0 + one_minus_lambda / (2.0 - one_minus_lambda);
  }
  // 1 - lambda_j <= (1 - s_j)^2 = 4^-(j+2); the tail sums to at most (4/3) 4^-(terms+2)
  const double tail = (4.0 / 3.0) * std::pow(4.0, -static_cast<double>(terms + 2));
  SemiProducts p;
  p.lambda_lower = lam * (1.0 - tail);
  p.expand_upper = expand * std::exp(tail);
  return p;
}

ClassificationReport run_example(const ExampleSpec& spec, std::size_t depth, const PerturbationModel& model,
                                 const ClassifyOptions& opt) {
  if (depth < 10) throw DomainError("run_example: depth must be at least 10");
  return run_example(spec, build_schedule(spec.family_id, depth), model, opt);
}

ClassificationReport run_example(const ExampleSpec& spec, const Schedule& s, const PerturbationModel& model,
                                 const ClassifyOptions& opt) {
  if (s.depth < 10) throw DomainError("run_example: depth must be at least 10");
  if (s.family_id != spec.family_id) throw DomainError("run_example: schedule built for another family");
  ClassificationReport r;
  r.example_id = spec.id;
  r.family_id = spec.family_id;
  r.depth = s.depth;
  r.model = model.name();
  r.expected_hyperbolic = spec.expected_hyperbolic;
  r.expected_boundary = spec.expected_boundary;

  const double xa = local_start(s, model, spec.a), xb = local_start(s, model, spec.b);
  r.start_a = 4.0 + xa;
  r.start_b = 4.0 + xb;
  const std::uint64_t steps = s.last_step();
  const OrbitTrace ta = orbit(local_point(s, 0, xa), steps, model, s);
  const OrbitTrace tb = orbit(local_point(s, 0, xb), steps, model, s);
  r.gphase_distances = gphase_distances(ta, tb);
  r.boundary_gaps = gphase_boundary_gaps(ta);
  r.hyperbolic = classify_hyperbolic(r.gphase_distances, s.degrees, opt);
  r.boundary = classify_boundary(r.boundary_gaps, opt);
  for (std::size_t n = 0; n <= s.depth; ++n) r.kn_Kn.push_back(kn_Kn_bracket(s, n));

  const auto ga = ta.g_records(), gb = tb.g_records();
  const std::size_t G = std::min(ga.size(), gb.size());
  const PerturbationModel zero = PerturbationModel::zero();

  if (spec.id == "1a") {
    const OrbitTrace tgz = orbit(local_point(s, 0, xb), steps, zero, s);
    const auto gz = tgz.g_records();
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < gz.size(); ++n) {
      const double v = std::abs(gz[n]->w.value());
      if (v == 0.0) continue;
      worst = std::max(worst, std::log2(v) - std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(n, 1000))) *
                                                 std::log2(1.0 / 12.0));
    }
    r.markers.push_back(make_marker("phi-orbit |w_n| <= (1/12)^(2^n)", !(worst > 0.0), worst, 0.0,
                                    "worst log2(|w_n| / (1/12)^(2^n)) over nonzero entries"));
    double dev = 0.0;
    for (std::size_t n = 0; n < G; ++n)
      dev = std::max({dev, std::abs(ga[n]->w.value()), std::abs(gb[n]->w.value())});
    r.markers.push_back(make_marker("|f^l_n(z) - kappa_n| <= 1/4", dev <= 0.25, dev, 0.25));
  } else if (spec.id == "1b") {
    const std::size_t N0 = 3;
    if (s.depth >= N0 + 3) {
      const std::uint64_t m0 = ell(N0);
      const BlaschkeProduct& b = s.product(N0);
      const cplx y0 = b.evaluate(cplx(0.0, 0.0));
      const OrbitTrace tgx = orbit(local_point(s, m0, 0.0), steps, model, s);
      const auto gx = tgx.g_records();
      const OrbitTrace tgy = orbit(local_point(s, m0, y0), steps, model, s);
      const auto gy = tgy.g_records();
      const OrbitTrace tgr = orbit(local_point(s, m0, 0.0), steps, zero, s);
      const auto gr = tgr.g_records();
      double worst = 0.0;
      bool ok = true;
      for (std::size_t i = 1; i + 2 < gr.size(); ++i) {
        const double rn = gr[i]->w.value().real(), rn1 = gr[i + 1]->w.value().real(),
                     rn2 = gr[i + 2]->w.value().real();
        const double bound = 0.1 * (rn2 - rn1) + (rn1 - rn) + 0.1 * (rn1 - rn);
        const double lhs = std::abs(difference(gy[i]->w, gx[i]->w));
        worst = std::max(worst, lhs / bound);
        ok = ok && lhs <= bound;
      }
      r.markers.push_back(make_marker("|y_n - x_n| within the three-term bound from G_3", ok, worst, 1.0,
                                      "worst ratio of |y_n - x_n| to the bound"));
    }
  } else if (spec.id == "2a") {
    double sep = std::numeric_limits<double>::infinity(), dev = 0.0;
    for (std::size_t n = 0; n < G; ++n) {
      sep = std::min(sep, std::abs(difference(gb[n]->w, ga[n]->w)));
      dev = std::max(dev, std::abs(ga[n]->w.value()));
    }
    r.markers.push_back(make_marker("|f^l_n(19/4) - f^l_n(4)| >= 1/12", sep >= 1.0 / 12.0, sep, 1.0 / 12.0));
    r.markers.push_back(make_marker("|f^l_n(4) - kappa_n| < 1/4", dev < 0.25, dev, 0.25));
    const OrbitTrace tgz = orbit(local_point(s, 0, 0.75), steps, zero, s);
    const auto gz = tgz.g_records();
    double low = std::numeric_limits<double>::infinity();
    for (const OrbitRecord* q : gz) low = std::min(low, q->w.value().real());
    r.markers.push_back(make_marker("phi^l_n(19/4) - kappa_n >= 2/3", low >= 2.0 / 3.0, low, 2.0 / 3.0));
    const SemiProducts p = semi_products();
    r.markers.push_back(make_marker("prod lambda_j >= 8/9", p.lambda_lower >= 8.0 / 9.0, p.lambda_lower, 8.0 / 9.0));
    r.markers.push_back(
        make_marker("prod 2 / (1 + lambda_j) <= 4/3", p.expand_upper <= 4.0 / 3.0, p.expand_upper, 4.0 / 3.0));
  } else if (spec.id == "2b") {
    const std::size_t half = r.gphase_distances.size() / 2;
    const double low =
        *std::min_element(r.gphase_distances.begin() + static_cast<std::ptrdiff_t>(half), r.gphase_distances.end());
    const double bound = std::log(27.0 / 22.0);
    r.markers.push_back(make_marker("dist_G_n(f^l_n(x), f^l_n(y)) >= log(27/22), second half", low >= bound, low,
                                    bound));
  } else if (spec.id == "3a") {
    double dev = 0.0;
    for (std::size_t n = 0; n < G; ++n) dev = std::max(dev, std::abs(ga[n]->w.value()));
    r.markers.push_back(make_marker("|f^l_n(4) - phi^l_n(4)| <= 1/2", dev <= 0.5, dev, 0.5));
  } else if (spec.id == "3b") {
    const OrbitTrace tgz = orbit(local_point(s, 0, 0.0), steps, zero, s);
    const auto gz = tgz.g_records();
    double worst = 0.0;
    bool ok = true;
    for (std::size_t n = 0; n < std::min<std::size_t>(G, 31); ++n) {
      const double d = std::abs(difference(ga[n]->w, gz[n]->w));
      const double bound = std::ldexp(1.0, -static_cast<int>(n));
      worst = std::max(worst, d / bound);
      ok = ok && d <= bound;
    }
    r.markers.push_back(make_marker("|f^l_n(x) - phi^l_n(4)| <= 2^-n, n <= 30", ok, worst, 1.0,
                                    "worst ratio to 2^-n"));
  }
  return r;
}

}  // namespace wdl
