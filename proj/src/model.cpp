#include "wdl/model.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "wdl/errors.hpp"

namespace wdl {

namespace {

double unit_uniform(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

std::uint64_t mix(std::uint64_t seed, std::uint64_t m) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (m + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

cplx Frame::center(const Schedule& s) const {
  return {9.0 * static_cast<double>(k) + offset + gamma * s.alpha.at(alpha_index).to_double(), 0.0};
}

Frame frame_at(const Schedule& s, std::uint64_t m) {
  if (m > s.last_step()) throw DomainError("frame_at: step beyond the schedule");
  Frame f;
  f.m = m;
  f.phase = phase_of(m);
  switch (f.phase.kind) {
    case PhaseKind::delta:
      f.k = static_cast<std::int64_t>(f.phase.n);
      f.alpha_index = f.phase.n;
      break;
    case PhaseKind::g:
      f.k = static_cast<std::int64_t>(f.phase.n);
      f.offset = 3.0;
      f.alpha_index = f.phase.n;
      break;
    case PhaseKind::d:
      f.k = static_cast<std::int64_t>(f.phase.k);
      f.alpha_index = f.phase.n + 1;
      break;
  }
  f.scale = s.rho(m);
  return f;
}

LocalPoint local_point(const Schedule& s, std::uint64_t m, cplx w) {
  return LocalPoint{frame_at(s, m), AnchoredPoint::at(w).rebased()};
}

LocalPoint phi_local(const LocalPoint& p, const Schedule& s) {
  const std::uint64_t m = p.frame.m;
  if (m >= s.last_step()) throw DomainError("phi_local: step beyond the schedule");
  const cplx w = p.w.value();
  LocalPoint q{frame_at(s, m + 1), p.w};
  switch (p.frame.phase.kind) {
    case PhaseKind::delta:
      if (!(std::abs(w) < 2.0)) throw RegionError("phi_local: point outside the enlarged Delta disc");
      break;
    case PhaseKind::g: {
      const BlaschkeProduct& b = s.product(p.frame.phase.n);
      const double limit = std::min(1.25, 1.0 + b.pole_clearance());
      if (!(std::abs(w) < limit)) throw RegionError("phi_local: point outside the enlarged G disc");
      q.w = b.evaluate(p.w);
      break;
    }
    case PhaseKind::d: {
      // inside D_k: |4 alpha_{n+1} + alpha_{n+1} w| < alpha_k
      const double room = log2_ratio(s.alpha.at(p.frame.phase.k), s.alpha.at(p.frame.phase.n + 1));
      if (room < 60.0 && !(std::abs(4.0 + w) < std::exp2(room)))
        throw RegionError("phi_local: point outside D_k");
      break;
    }
  }
  return q;
}

cplx phi_absolute(cplx z, const Schedule& s) {
  for (std::size_t n = 0; n <= s.depth; ++n) {
    const double a = s.alpha[n].to_double();
    const double nine = 9.0 * static_cast<double>(n);
    if (std::abs(z - nine) < a) return z + 9.0;
    const double an = nine + 4.0 * a;
    if (std::abs(z - an) < 2.0 * a) return (z - an) / a + (an + 3.0);
    const double kn = an + 3.0;
    if (std::abs(z - kn) < 1.25 && n < s.depth) {
      const double next = s.alpha[n + 1].to_double();
      return next * s.product(n).evaluate_extended(z - kn) + 4.0 * next;
    }
  }
  throw RegionError("phi_absolute: point outside every branch");
}

AbsolutePosition to_absolute(const LocalPoint& p, const Schedule& s) {
  AbsolutePosition a;
  const cplx c = p.frame.center(s);
  a.scale = p.frame.scale;
  a.approx = c + a.scale.to_double() * p.w.value();
  a.lossy = a.scale < LogScaled(1e-16) * std::max(1.0, std::abs(c));
  return a;
}

PerturbationModel PerturbationModel::random(std::uint64_t seed, double fraction, bool real_only) {
  PerturbationModel p;
  p.kind = PerturbationKind::seeded_random;
  p.seed = seed;
  p.real_only = real_only;
  p.envelope_fraction = fraction;
  return p;
}

PerturbationModel PerturbationModel::extremal(int sign, double fraction) {
  PerturbationModel p;
  p.kind = PerturbationKind::extremal_radial;
  p.sign = sign < 0 ? -1 : 1;
  p.envelope_fraction = fraction;
  return p;
}

std::string PerturbationModel::name() const {
  switch (kind) {
    case PerturbationKind::zero:
      return "zero";
    case PerturbationKind::seeded_random:
      return std::string(real_only ? "random_real(" : "random(") + std::to_string(seed) + ")";
    case PerturbationKind::extremal_radial:
      return sign < 0 ? "extremal(-)" : "extremal(+)";
  }
  return "zero";
}

LogScaled pinning_constant(const Schedule& s, std::uint64_t k) {
  return s.eps.at(ell(k) + k + 1) / s.alpha.at(k).square();
}

StepEnvelope PerturbationModel::step_envelope(const Schedule& s, const Frame& from) const {
  if (!(envelope_fraction >= 0.0) || !std::isfinite(envelope_fraction))
    throw DomainError("PerturbationModel: envelope fraction must be finite and nonnegative");
  StepEnvelope e;
  e.base = envelope_fraction * s.eps_rel(from.m);
  if (from.phase.kind == PhaseKind::d) {
    // (eps / alpha_k^2) |z - 9k|^2 with z - 9k = alpha_{n+1} (4 + w), over rho_{m+1} = alpha_{n+1}
    e.pin = envelope_fraction * pinning_constant(s, from.phase.k) * s.alpha.at(from.phase.n + 1);
    e.pinned = true;
  }
  return e;
}

LogScaled PerturbationModel::envelope(const Schedule& s, const Frame& from, cplx w) const {
  return step_envelope(s, from).at(w);
}

PerturbationCoefficients PerturbationModel::coefficients(std::uint64_t m) const {
  PerturbationCoefficients c;
  if (kind != PerturbationKind::seeded_random) return c;
  std::mt19937_64 gen(mix(seed, m));
  if (real_only) {
    c.c0 = 2.0 * unit_uniform(gen) - 1.0;
    c.c1 = 2.0 * unit_uniform(gen) - 1.0;
  } else {
    const double r0 = std::sqrt(unit_uniform(gen)), t0 = 2.0 * std::numbers::pi * unit_uniform(gen);
    const double r1 = std::sqrt(unit_uniform(gen)), t1 = 2.0 * std::numbers::pi * unit_uniform(gen);
    c.c0 = std::polar(r0, t0);
    c.c1 = std::polar(r1, t1);
  }
  return c;
}

LocalPerturbation PerturbationModel::at(const Schedule& s, const Frame& from, cplx w, cplx image) const {
  if (kind == PerturbationKind::zero || envelope_fraction == 0.0) return {};
  return at(s, from, w, image, coefficients(from.m), step_envelope(s, from));
}

LocalPerturbation PerturbationModel::at(const Schedule& s, const Frame& from, cplx w, cplx image,
                                        const PerturbationCoefficients& c, const StepEnvelope& env) const {
  LocalPerturbation e;
  if (kind == PerturbationKind::zero || envelope_fraction == 0.0) return e;
  e.scale = env.at(w);
  if (kind == PerturbationKind::extremal_radial) {
    const double r = std::abs(image);
    e.unit = static_cast<double>(sign) * (r > 0.0 ? image / r : cplx(1.0, 0.0));
    return e;
  }
  cplx u = 0.5 * (c.c0 + c.c1 * w / s.Rhat(from.m));
  const double mag = std::abs(u);
  if (mag > 1.0) u /= mag;
  e.unit = u;
  return e;
}

StepResult perturbed_step(const LocalPoint& p, const PerturbationModel& model, const Schedule& s) {
  StepResult r;
  r.point = phi_local(p, s);
  const cplx w = p.w.value();
  r.applied = model.at(s, p.frame, w, r.point.w.value());
  r.envelope = model.kind == PerturbationKind::zero ? LogScaled() : model.envelope(s, p.frame, w);
  r.point.w.delta += r.applied.value();
  r.point.w = r.point.w.rebased();
  return r;
}

std::vector<const OrbitRecord*> OrbitTrace::g_records() const {
  std::vector<const OrbitRecord*> out;
  for (const OrbitRecord& r : records)
    if (r.phase.kind == PhaseKind::g) out.push_back(&r);
  return out;
}

OrbitTrace orbit(const LocalPoint& start, std::uint64_t steps, const PerturbationModel& model, const Schedule& s) {
  if (start.frame.m == 0 && !(std::abs(start.w.value()) < s.rhat(0)))
    throw DomainError("orbit: start must lie inside the inner circle of Delta_0");
  OrbitTrace t;
  LocalPoint p = start;
  auto record = [&](const LocalPoint& q) {
    OrbitRecord r;
    r.m = q.frame.m;
    r.phase = q.frame.phase;
    r.w = q.w;
    r.boundary_gap = s.outer_gap[q.frame.m].to_double() + q.w.boundary_gap();
    t.records.push_back(r);
  };
  record(p);
  for (std::uint64_t i = 0; i < steps && p.frame.m < s.last_step(); ++i) {
    StepResult r = perturbed_step(p, model, s);
    t.records.back().eps_rel = r.envelope;
    t.records.back().applied = r.applied.magnitude();
    p = r.point;
    record(p);
  }
  return t;
}

double solve_start(const Schedule& s, const PerturbationModel& model, double target) {
  if (model.kind == PerturbationKind::seeded_random && !model.real_only)
    throw DomainError("solve_start: needs a real-symmetric perturbation model");
  const double lim = s.rhat(0);
  auto g = [&](double x) {
    StepResult r = perturbed_step(local_point(s, 0, x), model, s);
    return r.point.w.value().real() - target;
  };
  const int grid = 64;
  double lo = -lim * (1.0 - 1e-12), glo = g(lo);
  for (int i = 1; i <= grid; ++i) {
    const double hi = lim * (1.0 - 1e-12) * (2.0 * i / grid - 1.0);
    const double ghi = g(hi);
    if (glo == 0.0) return lo;
    if ((glo < 0.0) != (ghi < 0.0)) {
      double a = lo, b = hi, ga = glo;
      for (int it = 0; it < 200 && b - a > 0.0; ++it) {
        const double c = 0.5 * (a + b);
        if (c == a || c == b) break;
        const double gc = g(c);
        if ((gc < 0.0) == (ga < 0.0)) {
          a = c;
          ga = gc;
        } else {
          b = c;
        }
      }
      return 0.5 * (a + b);
    }
    lo = hi;
    glo = ghi;
  }
  throw DomainError("solve_start: no preimage on the real segment");
}

}  // namespace wdl
