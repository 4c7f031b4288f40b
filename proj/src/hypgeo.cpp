#include "wdl/hypgeo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wdl/errors.hpp"

namespace wdl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void two_sum(double a, double b, double& s, double& err) {
  s = a + b;
  double bb = s - a;
  err = (a - (s - bb)) + (b - bb);
}

// Do segments [a,b] and [c,d] share a point?
bool segments_meet(cplx a, cplx b, cplx c, cplx d) {
  auto cross = [](cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); };
  auto on_segment = [](cplx p, cplx q, cplx r) {
    return std::min(p.real(), q.real()) <= r.real() && r.real() <= std::max(p.real(), q.real()) &&
           std::min(p.imag(), q.imag()) <= r.imag() && r.imag() <= std::max(p.imag(), q.imag());
  };
  double d1 = cross(d - c, a - c);
  double d2 = cross(d - c, b - c);
  double d3 = cross(b - a, c - a);
  double d4 = cross(b - a, d - a);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && on_segment(c, d, a)) return true;
  if (d2 == 0 && on_segment(c, d, b)) return true;
  if (d3 == 0 && on_segment(a, b, c)) return true;
  if (d4 == 0 && on_segment(a, b, d)) return true;
  return false;
}

}  // namespace

Disc::Disc(cplx c, double r) : center(c), radius(r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("Disc: radius must be positive");
}

SampledCurve::SampledCurve(std::vector<cplx> points, bool closed)
    : pts_(std::move(points)), closed_(closed) {
  if (pts_.size() < 8) throw DomainError("SampledCurve: need at least 8 points");
  for (std::size_t i = 0; i + 1 < pts_.size(); ++i)
    if (pts_[i] == pts_[i + 1]) throw DomainError("SampledCurve: repeated consecutive point");
  if (closed_ && pts_.front() == pts_.back())
    throw DomainError("SampledCurve: closing point must not repeat the first sample");
}

SampledCurve SampledCurve::circle(cplx c, double r, std::size_t n) {
  return from_angle([&](double t) { return c + std::polar(r, t); }, n);
}

SampledCurve SampledCurve::from_angle(const std::function<cplx(double)>& f, std::size_t n) {
  std::vector<cplx> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = f(kTwoPi * static_cast<double>(i) / static_cast<double>(n));
  return SampledCurve(std::move(pts), true);
}

double SampledCurve::extent() const {
  double x0 = pts_[0].real(), x1 = x0, y0 = pts_[0].imag(), y1 = y0;
  for (const cplx& p : pts_) {
    x0 = std::min(x0, p.real());
    x1 = std::max(x1, p.real());
    y0 = std::min(y0, p.imag());
    y1 = std::max(y1, p.imag());
  }
  return std::hypot(x1 - x0, y1 - y0);
}

SampledCurve SampledCurve::reversed() const {
  std::vector<cplx> p(pts_.rbegin(), pts_.rend());
  return SampledCurve(std::move(p), closed_);
}

SampledCurve SampledCurve::rotated(std::size_t shift) const {
  std::vector<cplx> p(pts_);
  std::rotate(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(shift % p.size()), p.end());
  return SampledCurve(std::move(p), closed_);
}

double unit_defect(cplx a) {
  double x = a.real(), y = a.imag();
  double px = x * x, ex = std::fma(x, x, -px);
  double py = y * y, ey = std::fma(y, y, -py);
  double hi = 1.0, lo = 0.0, s = 0.0, e = 0.0;
  two_sum(hi, -px, s, e);
  hi = s;
  lo += e;
  two_sum(hi, -py, s, e);
  hi = s;
  lo += e;
  lo -= ex + ey;
  return hi + lo;
}

AnchoredPoint AnchoredPoint::at(cplx w) { return AnchoredPoint{cplx(0.0, 0.0), 1.0, w}; }

AnchoredPoint AnchoredPoint::near_circle(cplx u, cplx delta) {
  double r = std::abs(u);
  if (r == 0.0) throw DomainError("AnchoredPoint: zero direction");
  cplx a = u / r;
  return AnchoredPoint{a, unit_defect(a), delta};
}

double AnchoredPoint::one_minus_abs2() const {
  if (anchor == cplx(0.0, 0.0)) {
    double r = std::abs(delta);
    return (1.0 - r) * (1.0 + r);
  }
  const double r = std::abs(anchor);
  const double t = anchor_defect / (1.0 + std::sqrt(1.0 - anchor_defect));
  return anchor_defect - 2.0 * (1.0 - t) * (std::conj(anchor / r) * delta).real() - std::norm(delta);
}

double AnchoredPoint::boundary_gap() const {
  return one_minus_abs2() / (1.0 + std::abs(value()));
}

AnchoredPoint AnchoredPoint::rebased() const {
  if (std::abs(delta) <= 0.5) return *this;
  cplx v = value();
  if (std::abs(v) > 0.5) {
    AnchoredPoint p = near_circle(v, {});
    p.delta = v - p.anchor;
    return p;
  }
  return at(v);
}

cplx difference(const AnchoredPoint& z, const AnchoredPoint& w) {
  if (z.same_anchor(w)) return z.delta - w.delta;
  const cplx dd = z.delta - w.delta;
  if (z.anchor == cplx(0.0, 0.0) || w.anchor == cplx(0.0, 0.0)) return (z.anchor - w.anchor) + dd;
  // anchors are u (1 - t) with t = 1 - sqrt(1 - defect), kept apart from u
  const cplx uz = z.anchor / std::abs(z.anchor), uw = w.anchor / std::abs(w.anchor);
  const double tz = z.anchor_defect / (1.0 + std::sqrt(1.0 - z.anchor_defect));
  const double tw = w.anchor_defect / (1.0 + std::sqrt(1.0 - w.anchor_defect));
  if (uz == uw) return uz * (tw - tz) + dd;
  return (uz - uw) + (uw * tw - uz * tz) + dd;
}

double hyp_dist_unit(const AnchoredPoint& z, const AnchoredPoint& w) {
  double pz = z.one_minus_abs2(), pw = w.one_minus_abs2();
  if (!(pz > 0.0) || !(pw > 0.0)) throw DomainError("hyp_dist_unit: point not inside the unit disc");
  double D = std::norm(difference(z, w));
  if (D == 0.0) return 0.0;
  double P = pz * pw;
  double q = std::sqrt(D / (D + P));
  return 2.0 * std::log1p(q) + std::log1p(D / P);
}

double hyp_dist_unit(cplx z, cplx w) {
  if (!(std::abs(z) < 1.0) || !(std::abs(w) < 1.0))
    throw DomainError("hyp_dist_unit: point not inside the unit disc");
  return hyp_dist_unit(AnchoredPoint::at(z), AnchoredPoint::at(w));
}

double hyp_dist_disc(const Disc& d, cplx z, cplx w) {
  if (!d.contains(z) || !d.contains(w)) throw DomainError("hyp_dist_disc: point not inside the disc");
  return hyp_dist_unit(d.to_unit(z), d.to_unit(w));
}

double contraction_factor(double s, double R) {
  if (!(s > 0.0 && s < 1.0) || !(R >= 1.0) || !std::isfinite(R))
    throw DomainError("contraction_factor: need 0 < s < 1 <= R");
  if (R == 1.0) return 1.0;
  return (1.0 - s * s) / (R - s * s / R);
}

int winding_number(const SampledCurve& c, cplx p) {
  if (!c.closed()) throw DomainError("winding_number: curve is not closed");
  const auto& pts = c.points();
  const double tol = 1e-9 * c.extent();
  for (const cplx& q : pts)
    if (std::abs(q - p) <= tol) throw ProximityError("winding_number: point lies on the curve");
  double total = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    cplx a = pts[i] - p, b = pts[(i + 1) % n] - p;
    double step = std::arg(b / a);
    if (std::fabs(step) > 0.75 * std::numbers::pi)
      throw AmbiguityError("winding_number: sampling too coarse near the query point");
    total += step;
  }
  double turns = total / kTwoPi;
  double k = std::round(turns);
  if (std::fabs(turns - k) >= 0.1) throw AmbiguityError("winding_number: non-integer total turning");
  return static_cast<int>(k);
}

int winding_number_adaptive(const std::function<cplx(double)>& f, cplx p, std::size_t initial,
                            std::size_t max_samples) {
  for (std::size_t n = std::max<std::size_t>(initial, 8); n <= max_samples; n *= 2) {
    try {
      return winding_number(SampledCurve::from_angle(f, n), p);
    } catch (const AmbiguityError&) {
    }
  }
  throw AmbiguityError("winding_number_adaptive: sample budget exhausted");
}

bool winds_around_disc(const SampledCurve& c, const Disc& d, int k) {
  for (const cplx& q : c.points())
    if (!(std::abs(q - d.center) > d.radius)) return false;
  return winding_number(c, d.center) == k;
}

bool surrounds(const SampledCurve& outer, const SampledCurve& inner, int degree) {
  if (!outer.closed() || !inner.closed()) throw DomainError("surrounds: curves must be closed");
  const auto& A = outer.points();
  const auto& B = inner.points();
  const double tol = 1e-9 * std::max(outer.extent(), inner.extent());
  const std::size_t na = A.size(), nb = B.size();
  // Inner is connected, so if no segments meet it sits in a single
  // complementary component of outer and one winding number decides.
  std::vector<double> bx0(nb), bx1(nb), by0(nb), by1(nb);
  for (std::size_t j = 0; j < nb; ++j) {
    cplx c = B[j], d = B[(j + 1) % nb];
    bx0[j] = std::min(c.real(), d.real()) - tol;
    bx1[j] = std::max(c.real(), d.real()) + tol;
    by0[j] = std::min(c.imag(), d.imag()) - tol;
    by1[j] = std::max(c.imag(), d.imag()) + tol;
  }
  for (std::size_t i = 0; i < na; ++i) {
    cplx a = A[i], b = A[(i + 1) % na];
    double ax0 = std::min(a.real(), b.real()), ax1 = std::max(a.real(), b.real());
    double ay0 = std::min(a.imag(), b.imag()), ay1 = std::max(a.imag(), b.imag());
    for (std::size_t j = 0; j < nb; ++j) {
      if (ax1 < bx0[j] || ax0 > bx1[j] || ay1 < by0[j] || ay0 > by1[j]) continue;
      if (segments_meet(a, b, B[j], B[(j + 1) % nb])) return false;
      if (std::abs(a - B[j]) <= tol) return false;
    }
  }
  int w = 0;
  try {
    w = winding_number(outer, B[0]);
  } catch (const ProximityError&) {
    return false;
  }
  return w == degree;
}

}  // namespace wdl
