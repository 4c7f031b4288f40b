#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wdl/hypgeo.hpp"
#include "wdl/itinerary.hpp"
#include "wdl/log_scaled.hpp"
#include "wdl/schedule.hpp"

namespace wdl {

// V_m = D(zeta_m, rho_m) with zeta_m = 9k + offset + gamma * alpha_j.
struct Frame {
  std::uint64_t m = 0;
  Phase phase;
  std::int64_t k = 0;
  double offset = 0.0;  // 3 on G discs
  double gamma = 4.0;
  std::size_t alpha_index = 0;
  LogScaled scale;

  cplx center(const Schedule& s) const;
};

Frame frame_at(const Schedule& s, std::uint64_t m);

struct LocalPoint {
  Frame frame;
  AnchoredPoint w;
};

LocalPoint local_point(const Schedule& s, std::uint64_t m, cplx w);

// One application of the model map in local coordinates.
LocalPoint phi_local(const LocalPoint& p, const Schedule& s);

// Piecewise model map in plane coordinates; only meaningful while alpha_n is
// well above double resolution.
cplx phi_absolute(cplx z, const Schedule& s);

struct AbsolutePosition {
  cplx approx;
  LogScaled scale;
  bool lossy = false;  // rho_m below 1e-16 |zeta_m|
};

AbsolutePosition to_absolute(const LocalPoint& p, const Schedule& s);

enum class PerturbationKind { zero, seeded_random, extremal_radial };

// Perturbation in the local units of the target frame: scale * unit.
struct LocalPerturbation {
  LogScaled scale;
  cplx unit{0.0, 0.0};
  cplx value() const { return scale.to_double() * unit; }
  LogScaled magnitude() const { return scale * std::abs(unit); }
};

// Random coefficients of e_m(w) = envelope * (c0 + c1 w / Rhat_m) / 2 at one step.
struct PerturbationCoefficients {
  cplx c0{0.0, 0.0};
  cplx c1{0.0, 0.0};
};

// Envelope of one step as a function of the source point w.
struct StepEnvelope {
  LogScaled base;  // envelope_fraction * eps_m / rho_{m+1}
  LogScaled pin;   // quadratic bound over |4 + w|^2, D steps only
  bool pinned = false;
  LogScaled at(cplx w) const { return pinned ? min(base, pin * std::norm(4.0 + w)) : base; }
};

// Stand-in for f - phi: bounded by envelope_fraction * eps_m, and on the D_k
// discs additionally by the quadratic bound vanishing to second order at 9k.
// Envelope fractions above 1 are accepted for negative controls.
struct PerturbationModel {
  PerturbationKind kind = PerturbationKind::zero;
  std::uint64_t seed = 0;
  bool real_only = false;
  int sign = 1;
  double envelope_fraction = 0.9;

  static PerturbationModel zero() { return {}; }
  static PerturbationModel random(std::uint64_t seed, double fraction = 0.9, bool real_only = false);
  static PerturbationModel extremal(int sign, double fraction = 0.9);

  // Bound on |e| at step m for a source point w, in target local units.
  LogScaled envelope(const Schedule& s, const Frame& from, cplx w) const;
  StepEnvelope step_envelope(const Schedule& s, const Frame& from) const;
  // Perturbation added after phi at step m; `image` is phi of the source point
  // in target local units.
  LocalPerturbation at(const Schedule& s, const Frame& from, cplx w, cplx image) const;
  // Same, reusing data computed once for the step.
  LocalPerturbation at(const Schedule& s, const Frame& from, cplx w, cplx image, const PerturbationCoefficients& c,
                       const StepEnvelope& env) const;
  PerturbationCoefficients coefficients(std::uint64_t m) const;
  std::string name() const;
};

// Constants of the quadratic bound on D_k: eps_{l_k + k + 1} / alpha_k^2.
LogScaled pinning_constant(const Schedule& s, std::uint64_t k);

struct StepResult {
  LocalPoint point;
  LocalPerturbation applied;
  LogScaled envelope;
};

StepResult perturbed_step(const LocalPoint& p, const PerturbationModel& model, const Schedule& s);

struct OrbitRecord {
  std::uint64_t m = 0;
  Phase phase;
  AnchoredPoint w;
  double boundary_gap = 0.0;  // Rhat_m - |w|
  LogScaled eps_rel;          // envelope applied on the step out of m
  LogScaled applied;          // magnitude actually applied
};

struct OrbitTrace {
  std::vector<OrbitRecord> records;
  // Records on G discs, in order of n.
  std::vector<const OrbitRecord*> g_records() const;
};

// Iterates the perturbed model from start for `steps` steps (stopping at l_N).
OrbitTrace orbit(const LocalPoint& start, std::uint64_t steps, const PerturbationModel& model, const Schedule& s);

// Real start x in Delta_0 (local coordinate) whose perturbed image in G_0 has
// local coordinate `target`, found by bisection on the real segment.
double solve_start(const Schedule& s, const PerturbationModel& model, double target);

}  // namespace wdl
