#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wdl/hypgeo.hpp"
#include "wdl/log_scaled.hpp"

namespace wdl {

// e^{i theta} * prod_j (z - a_j) / (1 - conj(a_j) z). Each zero also carries
// its gap 1 - |a_j|, supplied exactly by constructors that know it, so that
// zeros closer to the circle than double resolution remain usable.
class BlaschkeProduct {
 public:
  BlaschkeProduct(std::vector<cplx> zeros, double rotation, std::vector<double> gaps = {});

  // "square", "par13", "att12", "identity", "att56", "semi(<s>)".
  static BlaschkeProduct named(const std::string& id);

  const std::vector<cplx>& zeros() const { return zeros_; }
  const std::vector<double>& gaps() const { return gaps_; }
  double rotation() const { return rotation_; }
  int degree() const { return static_cast<int>(zeros_.size()); }
  bool real_symmetric() const;

  // Checked evaluation on the closed unit disc.
  cplx evaluate(cplx w) const;
  cplx operator()(cplx w) const { return evaluate(w); }
  // Evaluation anywhere except at a pole.
  cplx evaluate_extended(cplx w) const;
  // Evaluation that keeps 1 - |b(w)|^2 accurate near the circle.
  AnchoredPoint evaluate(const AnchoredPoint& w) const;

  // (b(x) - b(y)) / (x - y); the derivative when x == y.
  cplx divided_difference(cplx x, cplx y) const;
  cplx derivative(cplx w) const { return divided_difference(w, w); }

  // sum_j (1 - |a_j|^2) / |zeta - a_j|^2 at zeta = e^{i theta}: |b'| on the circle.
  double poisson_sum(double theta) const;
  // Directions of the nonzero zeros, where poisson_sum peaks.
  std::vector<double> critical_angles() const;

  // 1 - |b(w)|^2 and 1 - |b(w)| for |w| = 1 - gap at angle theta. The gap may be
  // negative (outside the circle); signs follow.
  LogScaled defect_sq(double theta, const LogScaled& gap) const;
  LogScaled defect(double theta, const LogScaled& gap) const;

  // Zeros strictly inside the circle of radius 1 - gap.
  int zeros_inside(const LogScaled& gap) const;
  // 1 / max|a_j| - 1; +infinity when every zero is 0.
  double pole_clearance() const;

 private:
  std::vector<cplx> zeros_;
  std::vector<double> gaps_;
  std::vector<double> defects_;  // 1 - |a_j|^2
  double rotation_;
  cplx rot_;
  cplx apply_rotation(cplx v) const { return rotation_ == 0.0 ? v : rot_ * v; }
};

cplx iterate(const BlaschkeProduct& b, cplx w, std::uint64_t n);

enum class FixedPointKind { attracting, parabolic, repelling };
std::string to_string(FixedPointKind k);

struct FixedPointReport {
  cplx location{1.0, 0.0};
  double multiplier = 0.0;
  FixedPointKind kind = FixedPointKind::repelling;
};

FixedPointReport multiplier_at_one(const BlaschkeProduct& b);

struct InequalityCheck {
  bool holds = false;
  double margin = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

// For b = ((z + 1/3) / (1 + z/3))^2: |b(x) - b(r)| / |x - r| < (b(b(r)) - b(r)) / (b(r) - r).
InequalityCheck check_cross_ratio_inequality(double r, double x);

struct SemiFamily {
  BlaschkeProduct b;
  double lambda;
  double one_minus_s;
};

// b = mu~(mu(z)^2) with mu(z) = (z + s)/(1 + s z), mu~(z) = (z - s^2)/(1 - s^2 z);
// zeros 0 and -lambda, lambda = 2s / (1 + s^2).
SemiFamily semi_family(double s);
// Same family given 1 - s, which stays exact when s is within 1e-16 of 1.
SemiFamily semi_family_from_gap(double one_minus_s);
double semi_closed_form(double s, double x);
double semi_composed(double s, double x);

// Products indexed by level n. "semi" follows s_n = 1 - 2^-(n+2); the other
// ids are constant in n.
class BlaschkeFamily {
 public:
  explicit BlaschkeFamily(std::string id);
  static std::vector<std::string> known_ids();

  const std::string& id() const { return id_; }
  BlaschkeProduct at(std::size_t n) const;
  double semi_one_minus_s(std::size_t n) const;
  bool is_level_dependent() const { return id_ == "semi"; }

 private:
  std::string id_;
};

}  // namespace wdl
