#include "wdl/log_scaled.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "wdl/errors.hpp"

namespace wdl {

LogScaled::LogScaled(double x) {
  if (!std::isfinite(x)) throw DomainError("LogScaled: non-finite value");
  int e = 0;
  m_ = std::frexp(x, &e);
  e_ = e;
  if (m_ == 0.0) e_ = 0;
}

LogScaled LogScaled::pow2(std::int64_t e) {
  LogScaled r;
  r.m_ = 0.5;
  r.e_ = static_cast<exp_t>(e) + 1;
  return r;
}

LogScaled LogScaled::from_log2(double l2, int sign) {
  if (std::isinf(l2) && l2 < 0) return LogScaled();
  if (!std::isfinite(l2)) throw DomainError("LogScaled: non-finite log2");
  double fl = std::floor(l2);
  double frac = l2 - fl;
  LogScaled r = from_parts(std::exp2(frac) * (sign < 0 ? -1.0 : 1.0), static_cast<exp_t>(fl));
  return r;
}

LogScaled LogScaled::from_parts(double mantissa, exp_t exponent) {
  LogScaled r;
  r.m_ = mantissa;
  r.e_ = exponent;
  r.normalize();
  return r;
}

void LogScaled::normalize() {
  if (m_ == 0.0) {
    e_ = 0;
    return;
  }
  if (!std::isfinite(m_)) throw DomainError("LogScaled: non-finite mantissa");
  int e = 0;
  m_ = std::frexp(m_, &e);
  e_ += e;
}

double LogScaled::log2_magnitude() const {
  if (m_ == 0.0) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(e_) + std::log2(std::fabs(m_));
}

bool LogScaled::fits_double() const {
  return m_ == 0.0 || (e_ > -1020 && e_ < 1024);
}

double LogScaled::to_double() const {
  if (m_ == 0.0) return 0.0;
  if (e_ < -1100) return std::copysign(0.0, m_);
  if (e_ > 1100) return std::copysign(std::numeric_limits<double>::infinity(), m_);
  return std::ldexp(m_, static_cast<int>(e_));
}

LogScaled LogScaled::abs() const {
  LogScaled r = *this;
  r.m_ = std::fabs(m_);
  return r;
}

LogScaled LogScaled::operator-() const {
  LogScaled r = *this;
  r.m_ = -m_;
  return r;
}

LogScaled LogScaled::sqrt() const {
  if (m_ < 0) throw DomainError("LogScaled: sqrt of negative");
  if (m_ == 0) return {};
  // make the exponent even before halving it
  double m = m_;
  exp_t e = e_;
  if (e % 2 != 0) {
    m *= 2.0;
    e -= 1;
  }
  return from_parts(std::sqrt(m), e / 2);
}

LogScaled LogScaled::ldexp(std::int64_t k) const {
  if (m_ == 0) return *this;
  LogScaled r = *this;
  r.e_ += k;
  return r;
}

LogScaled operator*(const LogScaled& a, const LogScaled& b) {
  if (a.m_ == 0 || b.m_ == 0) return {};
  return LogScaled::from_parts(a.m_ * b.m_, a.e_ + b.e_);
}

LogScaled operator/(const LogScaled& a, const LogScaled& b) {
  if (b.m_ == 0) throw DomainError("LogScaled: division by zero");
  if (a.m_ == 0) return {};
  return LogScaled::from_parts(a.m_ / b.m_, a.e_ - b.e_);
}

LogScaled operator+(const LogScaled& a, const LogScaled& b) {
  if (a.m_ == 0) return b;
  if (b.m_ == 0) return a;
  const LogScaled& big = a.e_ >= b.e_ ? a : b;
  const LogScaled& small = a.e_ >= b.e_ ? b : a;
  LogScaled::exp_t shift = big.e_ - small.e_;
  if (shift > 80) return big;
  double m = big.m_ + std::ldexp(small.m_, -static_cast<int>(shift));
  return LogScaled::from_parts(m, big.e_);
}

std::strong_ordering operator<=>(const LogScaled& a, const LogScaled& b) {
  int sa = a.sign(), sb = b.sign();
  if (sa != sb) return sa <=> sb;
  if (sa == 0) return std::strong_ordering::equal;
  std::strong_ordering mag = std::strong_ordering::equal;
  if (a.e_ != b.e_) {
    mag = a.e_ <=> b.e_;
  } else {
    double ma = std::fabs(a.m_), mb = std::fabs(b.m_);
    mag = ma < mb ? std::strong_ordering::less
                  : (ma > mb ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  if (sa > 0) return mag;
  return 0 <=> mag;
}

std::string LogScaled::to_string() const {
  if (m_ == 0) return "0";
  if (fits_double()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", to_double());
    return buf;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s2^%.17g", m_ < 0 ? "-" : "", log2_magnitude());
  return buf;
}

LogScaled min(const LogScaled& a, const LogScaled& b) { return a < b ? a : b; }
LogScaled max(const LogScaled& a, const LogScaled& b) { return a < b ? b : a; }

double log2_ratio(const LogScaled& a, const LogScaled& b) {
  if (a.is_zero() || b.is_zero()) throw DomainError("log2_ratio: zero argument");
  return static_cast<double>(a.exponent() - b.exponent()) +
         std::log2(std::fabs(a.mantissa()) / std::fabs(b.mantissa()));
}

double relative_difference(const LogScaled& a, const LogScaled& b) {
  if (b.is_zero()) throw DomainError("relative_difference: zero reference");
  LogScaled q = (a - b) / b;
  return std::fabs(q.to_double());
}

}  // namespace wdl
