#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wdl/blaschke.hpp"
#include "wdl/itinerary.hpp"
#include "wdl/log_scaled.hpp"

namespace wdl {

// Choices made when alpha_{n+1} is fixed at step l_n + 1. Distances are to
// the unit circle in the coordinates of the image disc D_0.
struct LevelRecord {
  std::size_t n = 0;
  LogScaled inner_image_distance;  // dist(B_n(gamma_{l_n}), circle)
  LogScaled outer_image_distance;  // dist(B_n(Gamma_{l_n}), circle)
  LogScaled inner_circle;          // distance of the auxiliary inner circle to the unit circle
  LogScaled outer_circle;          // ... and of the outer one; equals alpha_{n+1}
};

// Radii chosen on entry to G_n (n >= 0; n = 0 is step 1). Gaps are in the
// unit coordinates of G_n.
struct EntryRecord {
  std::size_t n = 0;
  LogScaled inner_halved;   // half the previous inner offset
  LogScaled inner_squared;  // squared distance of the previous inner image to the boundary
  LogScaled outer_halved;
  LogScaled outer_image;    // distance of the previous outer image to the boundary
  double outer_cap = 0.0;   // 0.9 * (1 / max|p| - 1)
  LogScaled inner_gap;      // chosen 1 - r
  LogScaled outer_gap;      // chosen R - 1
  int winding = 0;          // zeros of b_n inside the inner circle
  int sampled_winding = -1; // argument-tracking cross-check, -1 when unresolvable at the sample count
  double min_image_modulus = 0.0;
  int refinements = 0;      // extra halvings needed for the winding condition
};

// Radii are stored as local gaps 1 - r_m / rho_m and R_m / rho_m - 1.
struct Schedule {
  std::string family_id;
  std::size_t depth = 0;
  std::size_t samples = 1024;
  std::vector<LogScaled> alpha;      // alpha_0 .. alpha_N
  std::vector<LogScaled> inner_gap;  // m = 0 .. l_N
  std::vector<LogScaled> outer_gap;
  std::vector<LogScaled> eps;        // absolute eps_m, m = 0 .. l_N - 1
  std::vector<int> degrees;          // d_0 .. d_N
  std::vector<BlaschkeProduct> products;
  std::vector<LevelRecord> levels;   // n = 0 .. N-1
  std::vector<EntryRecord> entries;  // n = 0 .. N

  std::uint64_t last_step() const { return ell(depth); }
  LogScaled rho(std::uint64_t m) const;
  double rhat(std::uint64_t m) const { return 1.0 - inner_gap.at(m).to_double(); }
  double Rhat(std::uint64_t m) const { return 1.0 + outer_gap.at(m).to_double(); }
  // Absolute R_m - r_m.
  LogScaled delta(std::uint64_t m) const;
  // eps_m / rho_{m+1}.
  LogScaled eps_rel(std::uint64_t m) const;
  const BlaschkeProduct& product(std::size_t n) const { return products.at(n); }
};

Schedule build_schedule(const std::string& family_id, std::size_t depth, std::size_t samples = 1024);

struct CircleExtremum {
  LogScaled value;
  double theta = 0.0;
  std::size_t samples = 0;
};

// Extremum of f over [0, 2pi): uniform samples plus extra angles, golden-section
// refinement around the best sample, and (when stabilize is set) sample
// doubling until the value is stable to 1e-12 relative.
CircleExtremum circle_extremum(const std::function<LogScaled(double)>& f, bool maximize, std::size_t samples,
                               const std::vector<double>& extra_angles = {}, bool stabilize = true);

// Distance from b(circle of radius 1 - gap) to the unit circle for gap > 0, or
// from b(circle of radius 1 + gap) when outer is set.
CircleExtremum image_distance(const BlaschkeProduct& b, const LogScaled& gap, bool outer, std::size_t samples);

struct EpsBreakdown {
  LogScaled inner;  // quarter distance of the inner image to the next boundary, absolute
  LogScaled outer;
  LogScaled width;  // quarter of R_{m+1} - r_{m+1}
  LogScaled value;
  int governing = 2;  // 0 inner, 1 outer, 2 width
};

EpsBreakdown eps_definition(const Schedule& s, std::uint64_t m, std::size_t samples);

}  // namespace wdl
