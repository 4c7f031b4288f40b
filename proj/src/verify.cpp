#include "wdl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "wdl/errors.hpp"
#include "wdl/hypgeo.hpp"

namespace wdl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(double x) {
  std::ostringstream o;
  o.precision(6);
  o << x;
  return o.str();
}

CheckItem log_item(std::string name, const LogScaled& small, const LogScaled& large, std::string detail = {}) {
  // holds when small <= large
  CheckItem c;
  c.name = std::move(name);
  c.margin = large.is_zero() && small.is_zero() ? 0.0 : log2_ratio(large, small);
  c.pass = !(large < small);
  c.detail = std::move(detail);
  return c;
}

CheckItem plain_item(std::string name, double margin, bool pass, std::string detail = {}) {
  return CheckItem{std::move(name), pass, margin, std::move(detail)};
}

// Keeps the worst item of a family of similar checks.
struct Worst {
  CheckItem item;
  bool seen = false;
  void add(CheckItem c) {
    if (!seen || (item.pass && !c.pass) || (item.pass == c.pass && c.margin < item.margin)) item = std::move(c);
    seen = true;
  }
};

std::vector<PerturbationModel> expand_draws(const PerturbationModel& model, std::size_t draws) {
  std::vector<PerturbationModel> out;
  if (model.kind == PerturbationKind::seeded_random) {
    for (std::size_t d = 0; d < std::max<std::size_t>(draws, 1); ++d) {
      PerturbationModel p = model;
      p.seed = model.seed + d;
      out.push_back(p);
    }
  } else {
    out.push_back(model);
  }
  return out;
}

LogScaled sin_half_sq(const LogScaled& a) {
  if (a.abs() < LogScaled(1e-4)) return a.ldexp(-1).square();
  const double s = std::sin(0.5 * a.to_double());
  return LogScaled(s * s);
}

}  // namespace

bool CheckReport::pass() const {
  return std::all_of(items.begin(), items.end(), [](const CheckItem& c) { return c.pass; });
}

const CheckItem* CheckReport::first_failure() const {
  for (const CheckItem& c : items)
    if (!c.pass) return &c;
  return nullptr;
}

CheckReport check_schedule_invariants(const Schedule& s, double eps_tolerance) {
  CheckReport r;
  const std::size_t N = s.depth;
  r.items.push_back(plain_item("alpha_0 = 1", 0.0, s.alpha.at(0) == LogScaled(1.0)));
  r.items.push_back(log_item("alpha_1 <= 1/6", s.alpha.at(1), LogScaled(1.0 / 6.0)));
  r.items.push_back(log_item("eps_0 <= 1/24", s.eps.at(0), LogScaled(1.0 / 24.0)));
  r.items.push_back(plain_item("rhat_0 in (5/6, 1)", std::min(s.rhat(0) - 5.0 / 6.0, 1.0 - s.rhat(0)),
                               s.rhat(0) > 5.0 / 6.0 && s.rhat(0) < 1.0));
  r.items.push_back(plain_item("Rhat_0 in (1, 7/6)", std::min(s.Rhat(0) - 1.0, 7.0 / 6.0 - s.Rhat(0)),
                               s.Rhat(0) > 1.0 && s.Rhat(0) < 7.0 / 6.0));

  Worst ratio, square, gaps, eps, halving, offsets, disc6, dk, delta_prime, g_prime, cap, winding;
  for (std::size_t n = 0; n < N; ++n) {
    const LogScaled a = s.alpha[n], b = s.alpha[n + 1];
    ratio.add(log_item("alpha_{n+1} <= alpha_n / 6", 6.0 * b, a, "n=" + std::to_string(n)));
    square.add(log_item("alpha_{n+1} <= alpha_n^2 / 6", 6.0 * b, a.square(), "n=" + std::to_string(n)));
  }
  for (std::uint64_t m = 0; m <= s.last_step(); ++m) {
    const LogScaled gi = s.inner_gap[m], go = s.outer_gap[m];
    const bool ok = gi.sign() > 0 && go.sign() > 0 && gi < LogScaled(1.0);
    const double margin = std::min(gi.sign() > 0 ? 1.0 : -1.0, go.sign() > 0 ? 1.0 : -1.0);
    gaps.add(plain_item("0 < rhat_m < 1 < Rhat_m", ok ? margin : -1.0, ok, "m=" + std::to_string(m)));
  }
  for (std::size_t n = 0; n < N; ++n) {
    const LogScaled a2 = s.alpha[n + 1].square();
    for (std::uint64_t k = 0; k <= n + 2; ++k) {
      const std::uint64_t m = ell(n) + k;
      if (m >= s.last_step()) break;
      const LogScaled closed = a2.ldexp(-static_cast<std::int64_t>(k + 1));
      const double rel = relative_difference(s.eps[m], closed);
      eps.add(plain_item("eps_{l_n+k} = alpha_{n+1}^2 / 2^{k+1}", eps_tolerance - rel, rel <= eps_tolerance,
                         "n=" + std::to_string(n) + " k=" + std::to_string(k) + " rel=" + fmt(rel)));
    }
    const std::uint64_t first = ell(n) + 1;
    const bool off = s.inner_gap[first] == s.alpha[n + 1] && s.outer_gap[first] == s.alpha[n + 1];
    offsets.add(plain_item("offsets alpha_{n+1}^2 at l_n + 1", off ? 0.0 : -1.0, off, "n=" + std::to_string(n)));
    for (std::uint64_t k = 1; k <= n + 1; ++k) {
      const std::uint64_t m = first + k;
      const bool h = s.inner_gap[m] == s.inner_gap[m - 1].ldexp(-1) && s.outer_gap[m] == s.outer_gap[m - 1].ldexp(-1);
      halving.add(plain_item("gaps halve along the D-run", h ? 0.0 : -1.0, h, "m=" + std::to_string(m)));
    }
    for (std::uint64_t k = 0; k <= n; ++k) {
      const std::uint64_t m = ell(n) + k + 1;
      const double room = 6.0 - 4.0 - s.Rhat(m);
      disc6.add(plain_item("V'_{l_n+k+1} in D(9k, 6 alpha_{n+1})", room, room > 0.0, "m=" + std::to_string(m)));
      dk.add(log_item("D(9k, 6 alpha_{n+1}) in D_k", 6.0 * s.alpha[n + 1], s.alpha[k],
                      "n=" + std::to_string(n) + " k=" + std::to_string(k)));
    }
    const std::uint64_t md = ell(n + 1) - 1;
    delta_prime.add(plain_item("V'_{l_{n+1}-1} in Delta'_{n+1}", 2.0 - s.Rhat(md), s.Rhat(md) < 2.0,
                               "m=" + std::to_string(md)));
  }
  for (std::size_t n = 0; n <= N; ++n) {
    const std::uint64_t m = ell(n);
    g_prime.add(plain_item("V'_{l_n} in G'_n", 1.25 - s.Rhat(m), s.Rhat(m) <= 1.25, "n=" + std::to_string(n)));
    const double clearance = s.product(n).pole_clearance();
    if (std::isfinite(clearance))
      cap.add(log_item("Rhat_{l_n} - 1 below the pole clearance", s.outer_gap[m], LogScaled(clearance),
                       "n=" + std::to_string(n)));
    const EntryRecord& e = s.entries.at(n);
    const bool w = e.winding == s.degrees[n] && (e.sampled_winding == -1 || e.sampled_winding == e.winding);
    winding.add(plain_item("b_n(gamma_{l_n}) winds d_n times round D(0, 1/2)", e.min_image_modulus - 0.5,
                           w && e.min_image_modulus > 0.5, "n=" + std::to_string(n)));
  }
  for (Worst* w : {&ratio, &square, &gaps, &eps, &offsets, &halving, &disc6, &dk, &delta_prime, &g_prime, &cap,
                   &winding})
    if (w->seen) r.items.push_back(w->item);
  return r;
}

CheckReport check_eps_definition(const Schedule& s, std::size_t samples, double tolerance,
                                 std::optional<std::uint64_t> last_m) {
  CheckReport r;
  Worst value, governing;
  const std::uint64_t end = std::min<std::uint64_t>(s.last_step(), last_m ? *last_m + 1 : s.last_step());
  for (std::uint64_t m = 0; m < end; ++m) {
    const EpsBreakdown e = eps_definition(s, m, samples);
    const double rel = relative_difference(e.value, s.eps[m]);
    value.add(plain_item("sampled eps_m matches the stored value", tolerance - rel, rel <= tolerance,
                         "m=" + std::to_string(m) + " rel=" + fmt(rel)));
    if (phase_of(m).kind == PhaseKind::d) {
      const bool w = e.governing == 2 || relative_difference(e.width, e.value) <= tolerance;
      governing.add(plain_item("width term governs eps on D-runs", w ? 0.0 : -1.0, w, "m=" + std::to_string(m)));
    }
  }
  if (value.seen) r.items.push_back(value.item);
  if (governing.seen) r.items.push_back(governing.item);
  return r;
}

SurroundReport verify_surrounds(const Schedule& s, const PerturbationModel& model, std::size_t draws,
                                std::size_t samples, std::optional<std::uint64_t> last_m) {
  SurroundReport rep;
  rep.min_inner_margin = std::numeric_limits<double>::infinity();
  rep.min_outer_margin = std::numeric_limits<double>::infinity();
  const std::uint64_t end = std::min<std::uint64_t>(s.last_step(), last_m ? *last_m + 1 : s.last_step());
  for (const PerturbationModel& pm : expand_draws(model, draws)) {
    ++rep.runs;
    const bool perturbed = pm.kind != PerturbationKind::zero && pm.envelope_fraction != 0.0;
    for (std::uint64_t m = 0; m < end; ++m) {
      const Frame fm = frame_at(s, m);
      const bool g = fm.phase.kind == PhaseKind::g;
      const BlaschkeProduct* b = g ? &s.product(fm.phase.n) : nullptr;
      const StepEnvelope env = perturbed ? pm.step_envelope(s, fm) : StepEnvelope{};
      const PerturbationCoefficients coef = pm.coefficients(m);

      // |Y| - 1 for Y = phi(w) + e(w), w on the circle of radius 1 - gap.
      auto deviation = [&](double theta, const LogScaled& gap) {
        const cplx w = std::polar(1.0 - gap.to_double(), theta);
        LogScaled d2;
        cplx dir;
        if (g) {
          d2 = b->defect_sq(theta, gap);
          const cplx B = b->evaluate_extended(w);
          dir = B / std::abs(B);
        } else {
          d2 = gap * (LogScaled(2.0) - gap);
          dir = std::polar(1.0, theta);
        }
        const double mod = std::sqrt(std::max(0.0, 1.0 - d2.to_double()));
        LogScaled q = -d2;
        if (perturbed) {
          const LocalPerturbation e = pm.at(s, fm, w, mod * dir, coef, env);
          q += e.scale * (2.0 * mod * (e.unit * std::conj(dir)).real()) + e.scale.square() * std::norm(e.unit);
        }
        return q / (1.0 + std::sqrt(std::max(0.0, 1.0 + q.to_double())));
      };

      const std::vector<double> extra = g ? b->critical_angles() : std::vector<double>{};
      const LogScaled gi = s.inner_gap[m], go = s.outer_gap[m];
      const LogScaled ti = s.inner_gap[m + 1], to = s.outer_gap[m + 1];
      const CircleExtremum in =
          circle_extremum([&](double t) { return deviation(t, gi); }, true, samples, extra, false);
      const CircleExtremum out =
          circle_extremum([&](double t) { return deviation(t, -go); }, false, samples, extra, false);

      SurroundItem item;
      item.m = m;
      item.model = pm.name();
      item.inner_margin = ((-ti - in.value) / ti).to_double();
      item.outer_margin = ((out.value - to) / to).to_double();
      item.expected_winding = g ? b->degree() : 1;
      const int zeros = g ? b->zeros_inside(-go) : 1;
      // Rouche: |e| <= env.base < 1 <= |phi| on the outer image
      if (!perturbed || env.base < LogScaled(0.5)) {
        item.winding = zeros;
      } else {
        try {
          item.winding = winding_number_adaptive(
              [&](double t) {
                const cplx w = std::polar(1.0 + go.to_double(), t);
                const cplx B = g ? b->evaluate_extended(w) : w;
                return B + pm.at(s, fm, w, B, coef, env).value();
              },
              0.0, samples, samples * 64);
        } catch (const std::exception&) {
          item.winding = -1;
        }
      }
      item.pass = item.inner_margin > 0.0 && item.outer_margin > 0.0 && item.winding == item.expected_winding;
      ++rep.checked;
      rep.min_inner_margin = std::min(rep.min_inner_margin, item.inner_margin);
      rep.min_outer_margin = std::min(rep.min_outer_margin, item.outer_margin);
      if (!item.pass) {
        ++rep.failures;
        if (!rep.first_failure) rep.first_failure = item;
        break;
      }
    }
  }
  return rep;
}

bool DisjointnessReport::disjoint() const {
  return std::all_of(items.begin(), items.end(), [](const DisjointnessItem& i) { return i.pass; });
}

double DisjointnessReport::min_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (const DisjointnessItem& i : items)
    m = std::min({m, i.hypothesis_margin, i.geometric_margin, i.containment_margin});
  return m;
}

DisjointnessReport verify_disjointness(const Schedule& s) {
  DisjointnessReport r;
  for (std::size_t n = 0; n + 2 <= s.depth; ++n) {
    for (std::size_t k = 0; k <= n; ++k) {
      const std::uint64_t ma = ell(n) + k + 1, mb = ell(n + 1) + k + 1;
      DisjointnessItem it;
      it.n = n;
      it.k = k;
      const LogScaled a1 = s.alpha[n + 1], a2 = s.alpha[n + 2];
      it.hypothesis_margin = log2_ratio(a1, 6.0 * a2);
      it.geometric_margin = log2_ratio((4.0 - s.Rhat(ma)) * a1, (4.0 + s.Rhat(mb)) * a2);
      it.containment_margin = log2_ratio(s.alpha[k], 6.0 * a1);
      it.pass = it.hypothesis_margin > 0.0 && it.geometric_margin > 0.0 && it.containment_margin > 0.0;
      r.items.push_back(it);
    }
  }
  return r;
}

Schedule with_alpha_ratio(const Schedule& s, double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw DomainError("with_alpha_ratio: ratio must lie in (0, 1)");
  Schedule t = s;
  for (std::size_t n = 1; n < t.alpha.size(); ++n) t.alpha[n] = t.alpha[n - 1] * ratio;
  return t;
}

bool ReefReport::positive() const {
  return !items.empty() && std::all_of(items.begin(), items.end(), [](const ReefItem& i) { return i.ratio.sign() > 0; });
}

bool ReefReport::decreasing() const {
  for (std::size_t i = 1; i < items.size(); ++i)
    if (!(items[i].ratio < items[i - 1].ratio)) return false;
  return true;
}

ReefReport build_reefs_and_check_condition_f(const Schedule& s, std::size_t samples) {
  if (samples < 8) throw DomainError("build_reefs_and_check_condition_f: need at least 8 samples");
  ReefReport r;
  for (std::size_t n = 0; n <= s.depth; ++n) {
    const std::uint64_t m = ell(n);
    ReefItem it;
    it.n = n;
    it.delta = s.delta(m);
    const double R = s.Rhat(m);
    const LogScaled t = it.delta.square().ldexp(-1);
    it.angular_gap = it.delta.square();
    it.radius_rel = (LogScaled(R) + t).to_double();
    const LogScaled cross = 4.0 * R * (LogScaled(R) + t);
    // distance from R e^{i theta} to the arc: t on the covered sector, else to the nearer end
    auto dist = [&](double theta) {
      const LogScaled beyond = LogScaled(std::fabs(theta) - std::numbers::pi) + it.angular_gap;
      if (beyond.sign() <= 0) return t;
      return (t.square() + cross * sin_half_sq(beyond)).sqrt();
    };
    it.max_distance = dist(std::numbers::pi);
    for (std::size_t i = 0; i < samples; ++i) {
      const double theta = kTwoPi * static_cast<double>(i) / static_cast<double>(samples) - std::numbers::pi;
      it.sampled_distance = max(it.sampled_distance, dist(theta));
    }
    it.max_distance = max(it.max_distance, it.sampled_distance);
    it.ratio = it.max_distance / it.delta;
    r.items.push_back(it);
  }
  return r;
}

HopReport verify_hop_bound(const Schedule& s, const PerturbationModel& model, std::size_t draws,
                           std::size_t pairs_per_hop, double consistency_tolerance) {
  HopReport rep;
  rep.min_margin_log2 = std::numeric_limits<double>::infinity();
  rep.min_accumulation_margin = std::numeric_limits<double>::infinity();
  auto fail = [&](const std::string& what) {
    ++rep.failures;
    if (rep.first_failure.empty()) rep.first_failure = what;
  };
  std::size_t draw = 0;
  for (const PerturbationModel& pm : expand_draws(model, draws)) {
    for (std::size_t n = 0; n < s.depth; ++n) {
      const std::uint64_t m0 = ell(n);
      const BlaschkeProduct& b = s.product(n);
      const LogScaled alpha = s.alpha[n + 1];
      for (std::size_t j = 0; j < pairs_per_hop; ++j) {
        std::mt19937_64 gen(0x5DEECE66DULL ^ (draw * 1000003ULL + n * 1009ULL + j));
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double rmax = std::min(0.999, s.rhat(m0));
        const cplx w = std::polar(rmax * std::sqrt(u(gen)), kTwoPi * u(gen));
        const cplx w2 = std::polar(rmax * std::sqrt(u(gen)), kTwoPi * u(gen));
        const std::string where = pm.name() + " n=" + std::to_string(n) + " pair=" + std::to_string(j);
        ++rep.hops;
        try {
          LocalPoint p = local_point(s, m0, w), q = local_point(s, m0, w2);
          LogScaled er, ei, budget;
          for (std::uint64_t k = 0; k <= n + 2; ++k) {
            const StepResult st = perturbed_step(p, pm, s);
            er += st.applied.scale * st.applied.unit.real();
            ei += st.applied.scale * st.applied.unit.imag();
            p = st.point;
            q = phi_local(q, s);
            if (k <= n + 1) {
              // partial sums over the D-run, in the units alpha_{n+1} shared by those frames
              budget += s.eps_rel(m0 + k);
              const LogScaled e = (er.square() + ei.square()).sqrt();
              ++rep.accumulation_checks;
              if (budget < e) {
                ++rep.accumulation_failures;
                if (rep.first_failure.empty()) rep.first_failure = "error accumulation at " + where;
              }
              if (!e.is_zero())
                rep.min_accumulation_margin = std::min(rep.min_accumulation_margin, log2_ratio(budget, e));
            }
          }
          if (p.frame.m != ell(n + 1)) throw DomainError("verify_hop_bound: orbit did not reach G_{n+1}");
          const AnchoredPoint bw = b.evaluate(AnchoredPoint::at(w).rebased());
          const AnchoredPoint bw2 = b.evaluate(AnchoredPoint::at(w2).rebased());
          const cplx E(er.to_double(), ei.to_double());
          const double c1 = std::abs(difference(p.w, bw) - E);
          const double c2 = std::abs(difference(q.w, bw2));
          rep.max_consistency = std::max({rep.max_consistency, c1, c2});
          if (c1 > consistency_tolerance || c2 > consistency_tolerance) fail("orbit inconsistent with b_n at " + where);
          // rhs^2 - lhs^2 = (alpha^2 - |E|^2) + 2 (alpha |db| - Re(conj(db) E))
          const cplx db = difference(bw, bw2);
          const LogScaled adb(std::abs(db));
          const LogScaled re = LogScaled(db.real()) * er + LogScaled(db.imag()) * ei;
          const LogScaled margin = (alpha.square() - (er.square() + ei.square())) + (alpha * adb - re).ldexp(1);
          const LogScaled rhs2 = (alpha + adb).square();
          if (margin.sign() < 0)
            fail("hop bound at " + where);
          else if (margin.sign() > 0)
            rep.min_margin_log2 = std::min(rep.min_margin_log2, log2_ratio(margin, rhs2));
        } catch (const RegionError& e) {
          fail(std::string("region escape at ") + where + ": " + e.what());
        }
      }
    }
    ++draw;
  }
  return rep;
}

}  // namespace wdl
