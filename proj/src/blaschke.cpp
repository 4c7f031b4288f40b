#include "wdl/blaschke.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "wdl/errors.hpp"

namespace wdl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sin_half_sq(double a) {
  double s = std::sin(0.5 * a);
  return s * s;
}

// |p - a|^2 from moduli gaps and angles, exact in the radial part.
double separation_sq(double gap_p, double abs_p, double arg_p, double gap_a, double abs_a, double arg_a) {
  double radial = gap_a - gap_p;
  return radial * radial + 4.0 * abs_p * abs_a * sin_half_sq(arg_p - arg_a);
}

}  // namespace

BlaschkeProduct::BlaschkeProduct(std::vector<cplx> zeros, double rotation, std::vector<double> gaps)
    : zeros_(std::move(zeros)), gaps_(std::move(gaps)) {
  if (zeros_.empty()) throw DomainError("BlaschkeProduct: degree must be at least 1");
  if (gaps_.empty()) {
    gaps_.reserve(zeros_.size());
    for (const cplx& a : zeros_) gaps_.push_back(1.0 - std::abs(a));
  }
  if (gaps_.size() != zeros_.size()) throw DomainError("BlaschkeProduct: gap list length mismatch");
  for (std::size_t j = 0; j < zeros_.size(); ++j) {
    if (!std::isfinite(zeros_[j].real()) || !std::isfinite(zeros_[j].imag()))
      throw DomainError("BlaschkeProduct: non-finite zero");
    if (!(gaps_[j] > 0.0) || gaps_[j] > 1.0 || !(std::abs(zeros_[j]) <= 1.0))
      throw DomainError("BlaschkeProduct: zero must lie in the open unit disc");
    defects_.push_back(gaps_[j] * (2.0 - gaps_[j]));
  }
  if (!std::isfinite(rotation)) throw DomainError("BlaschkeProduct: non-finite rotation");
  rotation_ = std::fmod(rotation, kTwoPi);
  if (rotation_ < 0) rotation_ += kTwoPi;
  rot_ = std::polar(1.0, rotation_);
}

BlaschkeProduct BlaschkeProduct::named(const std::string& id) {
  if (id == "square") return BlaschkeProduct({0.0, 0.0}, 0.0);
  if (id == "par13") return BlaschkeProduct({-1.0 / 3.0, -1.0 / 3.0}, 0.0, {2.0 / 3.0, 2.0 / 3.0});
  if (id == "att12") return BlaschkeProduct({-0.5, -0.5}, 0.0, {0.5, 0.5});
  if (id == "identity") return BlaschkeProduct({0.0}, 0.0);
  if (id == "att56") return BlaschkeProduct({-5.0 / 6.0}, 0.0, {1.0 / 6.0});
  if (id.rfind("semi(", 0) == 0 && id.back() == ')') {
    std::string arg = id.substr(5, id.size() - 6);
    std::size_t used = 0;
    double s = 0.0;
    try {
      s = std::stod(arg, &used);
    } catch (const std::exception&) {
      throw DomainError("unknown Blaschke family: " + id);
    }
    if (used != arg.size()) throw DomainError("unknown Blaschke family: " + id);
    return semi_family(s).b;
  }
  throw DomainError("unknown Blaschke family: " + id);
}

bool BlaschkeProduct::real_symmetric() const {
  if (rotation_ != 0.0) return false;
  return std::all_of(zeros_.begin(), zeros_.end(), [](cplx a) { return a.imag() == 0.0; });
}

cplx BlaschkeProduct::evaluate(cplx w) const {
  if (!(std::abs(w) <= 1.0 + 1e-9)) throw DomainError("BlaschkeProduct::evaluate: |w| exceeds 1");
  return evaluate_extended(w);
}

cplx BlaschkeProduct::evaluate_extended(cplx w) const {
  cplx v = 1.0;
  for (const cplx& a : zeros_) {
    cplx den = 1.0 - std::conj(a) * w;
    if (den == 0.0) throw DomainError("BlaschkeProduct: evaluation at a pole");
    v *= (w - a) / den;
  }
  return apply_rotation(v);
}

AnchoredPoint BlaschkeProduct::evaluate(const AnchoredPoint& w) const {
  const cplx p = w.anchor, d = w.delta, z = w.value();
  const double abs_p = std::abs(p);
  const double gap_p = w.anchor_defect / (1.0 + abs_p);
  const double arg_p = abs_p == 0.0 ? 0.0 : std::arg(p);
  cplx P = 1.0, DP = 0.0;
  double D = 0.0;
  for (std::size_t j = 0; j < zeros_.size(); ++j) {
    const cplx a = zeros_[j];
    const double A = defects_[j];
    const cplx den_p = 1.0 - std::conj(a) * p;
    const cplx den_z = 1.0 - std::conj(a) * z;
    if (den_p == 0.0 || den_z == 0.0) throw DomainError("BlaschkeProduct: evaluation at a pole");
    const cplx Mp = (p - a) / den_p;
    const cplx dM = d * A / (den_z * den_p);
    const double abs_a = 1.0 - gaps_[j];
    const double sep = separation_sq(gap_p, abs_p, arg_p, gaps_[j], abs_a, abs_a == 0.0 ? 0.0 : std::arg(a));
    const double Ad = A * w.anchor_defect;
    const double c = Ad / (Ad + sep);
    const cplx nextDP = P * dM + DP * Mp + DP * dM;
    P *= Mp;
    DP = nextDP;
    D = D + (1.0 - D) * c;
  }
  return AnchoredPoint{apply_rotation(P), D, apply_rotation(DP)}.rebased();
}

cplx BlaschkeProduct::divided_difference(cplx x, cplx y) const {
  cplx Gy = 1.0, DD = 0.0;
  for (std::size_t j = 0; j < zeros_.size(); ++j) {
    const cplx a = zeros_[j];
    const cplx dx = 1.0 - std::conj(a) * x, dy = 1.0 - std::conj(a) * y;
    if (dx == 0.0 || dy == 0.0) throw DomainError("BlaschkeProduct: evaluation at a pole");
    const cplx Mx = (x - a) / dx, My = (y - a) / dy;
    DD = DD * Mx + Gy * (defects_[j] / (dx * dy));
    Gy *= My;
  }
  return apply_rotation(DD);
}

double BlaschkeProduct::poisson_sum(double theta) const {
  double s = 0.0;
  for (std::size_t j = 0; j < zeros_.size(); ++j) {
    const double abs_a = 1.0 - gaps_[j];
    const double arg_a = abs_a == 0.0 ? 0.0 : std::arg(zeros_[j]);
    s += defects_[j] / separation_sq(0.0, 1.0, theta, gaps_[j], abs_a, arg_a);
  }
  return s;
}

std::vector<double> BlaschkeProduct::critical_angles() const {
  std::vector<double> out;
  for (const cplx& a : zeros_) {
    if (a == 0.0) continue;
    double t = std::arg(a);
    if (t < 0) t += kTwoPi;
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  return out;
}

LogScaled BlaschkeProduct::defect_sq(double theta, const LogScaled& gap) const {
  const LogScaled one(1.0);
  const LogScaled t = gap * (LogScaled(2.0) - gap);
  const double r = 1.0 - gap.to_double();
  LogScaled D;
  for (std::size_t j = 0; j < zeros_.size(); ++j) {
    const double abs_a = 1.0 - gaps_[j];
    const double arg_a = abs_a == 0.0 ? 0.0 : std::arg(zeros_[j]);
    const LogScaled radial = LogScaled(gaps_[j]) - gap;
    const LogScaled sep = radial.square() + LogScaled(4.0 * r * abs_a * sin_half_sq(theta - arg_a));
    const LogScaled At = LogScaled(defects_[j]) * t;
    const LogScaled c = At / (At + sep);
    D = D + (one - D) * c;
  }
  return D;
}

LogScaled BlaschkeProduct::defect(double theta, const LogScaled& gap) const {
  LogScaled D = defect_sq(theta, gap);
  double modulus = std::sqrt(std::max(0.0, 1.0 - D.to_double()));
  return D / (1.0 + modulus);
}

int BlaschkeProduct::zeros_inside(const LogScaled& gap) const {
  int k = 0;
  for (double g : gaps_)
    if (LogScaled(g) > gap) ++k;
  return k;
}

double BlaschkeProduct::pole_clearance() const {
  double g = *std::min_element(gaps_.begin(), gaps_.end());
  if (g >= 1.0) return std::numeric_limits<double>::infinity();
  return g / (1.0 - g);
}

cplx iterate(const BlaschkeProduct& b, cplx w, std::uint64_t n) {
  if (!(std::abs(w) < 1.0)) throw DomainError("iterate: start must lie in the open unit disc");
  for (std::uint64_t i = 0; i < n; ++i) w = b.evaluate(w);
  return w;
}

std::string to_string(FixedPointKind k) {
  switch (k) {
    case FixedPointKind::attracting:
      return "attracting";
    case FixedPointKind::parabolic:
      return "parabolic";
    case FixedPointKind::repelling:
      return "repelling";
  }
  return "repelling";
}

FixedPointReport multiplier_at_one(const BlaschkeProduct& b) {
  if (std::abs(b.evaluate(cplx(1.0, 0.0)) - 1.0) > 1e-12) throw DomainError("multiplier_at_one: 1 is not fixed");
  FixedPointReport r;
  r.multiplier = b.poisson_sum(0.0);
  if (std::fabs(r.multiplier - 1.0) <= 1e-12)
    r.kind = FixedPointKind::parabolic;
  else
    r.kind = r.multiplier < 1.0 ? FixedPointKind::attracting : FixedPointKind::repelling;
  return r;
}

InequalityCheck check_cross_ratio_inequality(double r, double x) {
  static const BlaschkeProduct b = BlaschkeProduct::named("par13");
  if (!(r > 0.0 && r < 1.0)) throw DomainError("check_cross_ratio_inequality: need 0 < r < 1");
  const double br = b.evaluate(r).real();
  if (!(x > 0.0 && x < br) || x == r) throw DomainError("check_cross_ratio_inequality: need 0 < x < b(r), x != r");
  InequalityCheck c;
  c.lhs = std::abs(b.divided_difference(x, r));
  c.rhs = b.divided_difference(br, r).real();
  c.margin = c.rhs - c.lhs;
  c.holds = c.margin > 0.0;
  return c;
}

SemiFamily semi_family_from_gap(double e) {
  if (!(e > 0.0 && e < 1.0)) throw DomainError("semi_family: need 0 < s < 1");
  const double s = 1.0 - e;
  const double lambda = 2.0 * s / (1.0 + s * s);
  const double lambda_gap = e * e / (1.0 + s * s);
  SemiFamily f{BlaschkeProduct({0.0, -lambda}, 0.0, {1.0, lambda_gap}), lambda, e};
  // The composed form cancels catastrophically as s -> 1, so it is only
  // compared while 1 - s^2 keeps most of its digits.
  const bool composed_ok = e >= 1e-3;
  for (double x : {0.0, 0.25, 0.5, 0.75, 0.95}) {
    const double closed = x * (x + lambda) / (1.0 + lambda * x);
    if ((composed_ok && std::fabs(semi_composed(s, x) - closed) > 1e-12) ||
        std::fabs(f.b.evaluate(x).real() - closed) > 1e-12)
      throw std::logic_error("semi_family: factored and composed forms disagree");
  }
  return f;
}

SemiFamily semi_family(double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("semi_family: need 0 < s < 1");
  return semi_family_from_gap(1.0 - s);
}

double semi_closed_form(double s, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("semi_closed_form: need 0 <= x < 1");
  const double lambda = 2.0 * s / (1.0 + s * s);
  return x * (x + lambda) / (1.0 + lambda * x);
}

double semi_composed(double s, double x) {
  const double u = (x + s) / (1.0 + s * x);
  const double v = u * u;
  return (v - s * s) / (1.0 - s * s * v);
}

BlaschkeFamily::BlaschkeFamily(std::string id) : id_(std::move(id)) {
  if (id_ != "semi") BlaschkeProduct::named(id_);
}

std::vector<std::string> BlaschkeFamily::known_ids() {
  return {"square", "par13", "att12", "identity", "att56", "semi"};
}

double BlaschkeFamily::semi_one_minus_s(std::size_t n) const {
  if (n > 1000) throw OverflowError("semi family: level too large");
  return std::ldexp(1.0, -static_cast<int>(n) - 2);
}

BlaschkeProduct BlaschkeFamily::at(std::size_t n) const {
  if (id_ == "semi") return semi_family_from_gap(semi_one_minus_s(n)).b;
  return BlaschkeProduct::named(id_);
}

}  // namespace wdl
