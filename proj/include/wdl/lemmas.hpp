#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace wdl {

// Outcome of a grid sweep of one inequality family. Margins are relative:
// (larger side - smaller side) / |larger side|, so a pass needs margin >= 0
// (> 0 where the inequality is strict).
struct SweepResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  double min_margin = 0.0;
  std::string worst;  // parameters where the minimum margin was met
  bool strict = false;
  bool pass() const { return checks > 0 && failures == 0 && (strict ? min_margin > 0.0 : min_margin >= 0.0); }
};

// Lower bound dist_{D(0,R)} >= c(s,R) dist_D, upper bound
// dist_{D(0,r)} <= dist_D / c(s/r, 1/r), and the real-axis bracket
// log((1-r)/(1-s)) <= dist_D(r,s) <= 2 log((1-r)/(1-s)), on an n^3 grid of
// (s, r, R) with fixed test pairs plus `pairs` random configurations.
std::vector<SweepResult> sweep_hyperbolic_estimates(std::size_t n = 50, std::size_t pairs = 10000,
                                                    std::uint64_t seed = 1);

// Largest |dist(M z, M w) - dist(z, w)| over random disc automorphisms M.
SweepResult sweep_mobius_invariance(std::size_t pairs = 10000, double tolerance = 1e-10, std::uint64_t seed = 2);

// Cross-ratio inequality for ((z + 1/3) / (1 + z/3))^2 with r = i / (nr + 1),
// i = 1..nr, and nx interior samples of (0, b(r)).
SweepResult sweep_cross_ratio(std::size_t nr = 99, std::size_t nx = 999);

// For the semi products: closed form against mu~(mu(x)^2) to `tolerance`,
// lambda x <= b(x) <= x and lambda (y - x) <= b(y) - b(x) <= 2 (y - x) / (1 + lambda)
// on an ns x nx grid.
std::vector<SweepResult> sweep_semi_bounds(std::size_t ns = 100, std::size_t nx = 100, double tolerance = 1e-12);

}  // namespace wdl
