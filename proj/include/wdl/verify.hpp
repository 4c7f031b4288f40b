#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wdl/log_scaled.hpp"
#include "wdl/model.hpp"
#include "wdl/schedule.hpp"

namespace wdl {

// One named invariant with a margin; positive margin means it holds.
struct CheckItem {
  std::string name;
  bool pass = false;
  double margin = 0.0;  // log2 margin for LogScaled comparisons, plain otherwise
  std::string detail;
};

struct CheckReport {
  std::vector<CheckItem> items;
  bool pass() const;
  const CheckItem* first_failure() const;
};

// Closed form of eps, eps_0, alpha ratios, gaps in range, halving laws,
// offsets at l_n + 1, containments and the pole cap.
CheckReport check_schedule_invariants(const Schedule& s, double eps_tolerance = 1e-9);

// Recomputes eps_m from sampled image curves for every m < l_N (or up to
// last_m) and compares with the stored value.
CheckReport check_eps_definition(const Schedule& s, std::size_t samples, double tolerance = 1e-9,
                                 std::optional<std::uint64_t> last_m = std::nullopt);

struct SurroundItem {
  std::uint64_t m = 0;
  std::string model;
  // (-g_r(m+1) - max deviation of the inner image) / g_r(m+1), and
  // (min deviation of the outer image - g_R(m+1)) / g_R(m+1). Deviations
  // are |Y| - 1 in the local units of frame m+1.
  double inner_margin = 0.0;
  double outer_margin = 0.0;
  int winding = 0;
  int expected_winding = 0;
  bool pass = false;
};

struct SurroundReport {
  std::size_t runs = 0;
  std::size_t checked = 0;
  std::size_t failures = 0;
  double min_inner_margin = 0.0;
  double min_outer_margin = 0.0;
  std::optional<SurroundItem> first_failure;
  bool pass() const { return failures == 0 && checked > 0; }
};

// For m < min(l_N, last_m + 1): phi(gamma_m) + e lies inside gamma_{m+1} and
// phi(Gamma_m) + e lies outside Gamma_{m+1}, winding q_m times round it.
// A seeded_random model is repeated for `draws` seeds starting at its own;
// other models run once. A run stops at its first failure.
SurroundReport verify_surrounds(const Schedule& s, const PerturbationModel& model, std::size_t draws,
                                std::size_t samples, std::optional<std::uint64_t> last_m = std::nullopt);

struct DisjointnessItem {
  std::size_t n = 0;
  std::size_t k = 0;
  double hypothesis_margin = 0.0;   // log2(alpha_{n+1} / (6 alpha_{n+2}))
  double geometric_margin = 0.0;    // log2((4 - Rhat) alpha_{n+1} / ((4 + Rhat') alpha_{n+2}))
  double containment_margin = 0.0;  // log2(alpha_k / (6 alpha_{n+1}))
  bool pass = false;
};

struct DisjointnessReport {
  std::vector<DisjointnessItem> items;
  bool disjoint() const;
  double min_margin() const;
};

// Pairs V'_{l_n+k+1}, V'_{l_{n+1}+k+1} that share D_k, for n + 2 <= N.
DisjointnessReport verify_disjointness(const Schedule& s);

// Copy of s with alpha_{n+1} = ratio * alpha_n for n >= 1; gaps unchanged.
Schedule with_alpha_ratio(const Schedule& s, double ratio);

struct ReefItem {
  std::size_t n = 0;
  LogScaled delta;        // R_{l_n} - r_{l_n}
  double radius_rel = 0;  // (R + delta^2 / 2) in G_n units, as a double
  LogScaled angular_gap;  // delta^2
  LogScaled max_distance;      // max over Gamma of dist(z, L_n), analytic worst case
  LogScaled sampled_distance;  // max over sampled Gamma
  LogScaled ratio;             // max_distance / delta
};

struct ReefReport {
  std::vector<ReefItem> items;
  bool positive() const;
  bool decreasing() const;
};

// L_n = { kappa_n + (R_{l_n} + delta^2/2) e^{it} : |t| <= pi - delta^2 }.
ReefReport build_reefs_and_check_condition_f(const Schedule& s, std::size_t samples = 1024);

struct HopReport {
  std::size_t hops = 0;
  std::size_t failures = 0;
  double min_margin_log2 = 0.0;     // log2((rhs^2 - lhs^2) / rhs^2) over passing hops
  double max_consistency = 0.0;     // |orbit - (b(w) + sum e)| in G_{n+1} units
  std::size_t accumulation_checks = 0;
  std::size_t accumulation_failures = 0;
  double min_accumulation_margin = 0.0;  // log2(sum eps / |sum e|)
  std::string first_failure;
  bool pass() const { return failures == 0 && accumulation_failures == 0 && hops > 0; }
};

// For pairs of points of D(0, rhat_{l_n}) in G_n: the perturbed orbit of w and
// the model orbit of w' after n + 3 steps satisfy
// |f(w) - phi(w')| <= alpha_{n+1} + |b_n(w) - b_n(w')| in G_{n+1} units, and
// within the D-run the accumulated error is at most sum eps_{l_n + k}.
HopReport verify_hop_bound(const Schedule& s, const PerturbationModel& model, std::size_t draws,
                           std::size_t pairs_per_hop = 1, double consistency_tolerance = 1e-12);

}  // namespace wdl
