#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace wdl {

using cplx = std::complex<double>;

struct Disc {
  cplx center;
  double radius;

  Disc(cplx c, double r);
  bool contains(cplx z) const { return std::abs(z - center) < radius; }
  cplx to_unit(cplx z) const { return (z - center) / radius; }
};

class SampledCurve {
 public:
  SampledCurve(std::vector<cplx> points, bool closed = true);

  // n samples of the circle |z - c| = r, counterclockwise, starting at angle 0.
  static SampledCurve circle(cplx c, double r, std::size_t n);
  // n samples of t -> f(2*pi*t/n).
  static SampledCurve from_angle(const std::function<cplx(double)>& f, std::size_t n);

  const std::vector<cplx>& points() const { return pts_; }
  bool closed() const { return closed_; }
  std::size_t size() const { return pts_.size(); }
  // Diagonal of the bounding box; within a factor sqrt(2) of the diameter.
  double extent() const;
  SampledCurve reversed() const;
  SampledCurve rotated(std::size_t shift) const;

 private:
  std::vector<cplx> pts_;
  bool closed_;
};

// Point of the closed unit disc held as anchor + delta. A nonzero anchor sits
// in the direction of the stored double at modulus sqrt(1 - anchor_defect);
// the defect is kept to full relative precision, so 1 - |w|^2 and differences
// stay accurate for w very near the circle.
struct AnchoredPoint {
  cplx anchor{0.0, 0.0};
  double anchor_defect = 1.0;  // 1 - |anchor|^2
  cplx delta{0.0, 0.0};

  static AnchoredPoint at(cplx w);
  // Anchor on the circle in direction u (nonzero); defect computed in double-double.
  static AnchoredPoint near_circle(cplx u, cplx delta);

  cplx value() const { return anchor + delta; }
  // 1 - |w|^2, accurate relative to its own size.
  double one_minus_abs2() const;
  // 1 - |w|.
  double boundary_gap() const;
  // Switch anchors when delta is no longer small relative to the anchor choice.
  AnchoredPoint rebased() const;
  bool same_anchor(const AnchoredPoint& o) const {
    return anchor == o.anchor && anchor_defect == o.anchor_defect;
  }
};

// 1 - |a|^2 for a double-precision complex a, using error-free products.
double unit_defect(cplx a);

cplx difference(const AnchoredPoint& z, const AnchoredPoint& w);

double hyp_dist_unit(cplx z, cplx w);
double hyp_dist_unit(const AnchoredPoint& z, const AnchoredPoint& w);
double hyp_dist_disc(const Disc& d, cplx z, cplx w);

// (1 - s^2) / (R - s^2 / R).
double contraction_factor(double s, double R);

// Argument-tracking winding number of a closed sampled curve around p.
// Throws AmbiguityError if the total is not within 0.1 of an integer or if a
// single step turns by more than 3*pi/4 (the polygon may not follow the curve).
int winding_number(const SampledCurve& c, cplx p);

// Resamples the closed curve t -> f(t), t in [0, 2*pi), doubling the sample
// count from `initial` until the winding number is unambiguous.
int winding_number_adaptive(const std::function<cplx(double)>& f, cplx p,
                            std::size_t initial = 1024, std::size_t max_samples = std::size_t(1) << 20);

bool winds_around_disc(const SampledCurve& c, const Disc& d, int k);

// True iff inner lies in the complement of outer, disjoint from it, inside a
// component where outer has winding number `degree`.
bool surrounds(const SampledCurve& outer, const SampledCurve& inner, int degree = 1);

}  // namespace wdl
