#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace wdl {

// Real number stored as mantissa * 2^exponent with |mantissa| in [0.5, 1).
// The exponent is 128-bit so doubly exponential decay (log2 near -1e19 at
// depth 60) neither underflows nor loses exactness under multiplication.
class LogScaled {
 public:
  __extension__ typedef __int128 exp_t;

  LogScaled() = default;
  explicit LogScaled(double x);

  static LogScaled pow2(std::int64_t e);
  // Lossy when |l2| exceeds 2^52; used for deserialization only.
  static LogScaled from_log2(double l2, int sign = 1);
  static LogScaled from_parts(double mantissa, exp_t exponent);

  int sign() const { return m_ > 0 ? 1 : (m_ < 0 ? -1 : 0); }
  bool is_zero() const { return m_ == 0.0; }
  double mantissa() const { return m_; }
  exp_t exponent() const { return e_; }

  // log2 |x|; -infinity for zero.
  double log2_magnitude() const;
  // ldexp of the mantissa; flushes to 0 or +-inf outside double range.
  double to_double() const;
  bool fits_double() const;

  LogScaled abs() const;
  LogScaled operator-() const;
  LogScaled square() const { return *this * *this; }
  LogScaled sqrt() const;
  LogScaled ldexp(std::int64_t k) const;

  friend LogScaled operator*(const LogScaled& a, const LogScaled& b);
  friend LogScaled operator/(const LogScaled& a, const LogScaled& b);
  friend LogScaled operator+(const LogScaled& a, const LogScaled& b);
  friend LogScaled operator-(const LogScaled& a, const LogScaled& b) { return a + (-b); }
  friend LogScaled operator*(const LogScaled& a, double b) { return a * LogScaled(b); }
  friend LogScaled operator*(double a, const LogScaled& b) { return LogScaled(a) * b; }
  friend LogScaled operator/(const LogScaled& a, double b) { return a / LogScaled(b); }

  LogScaled& operator*=(const LogScaled& o) { return *this = *this * o; }
  LogScaled& operator+=(const LogScaled& o) { return *this = *this + o; }
  LogScaled& operator-=(const LogScaled& o) { return *this = *this - o; }

  friend std::strong_ordering operator<=>(const LogScaled& a, const LogScaled& b);
  friend bool operator==(const LogScaled& a, const LogScaled& b) { return a.m_ == b.m_ && a.e_ == b.e_; }

  std::string to_string() const;

 private:
  double m_ = 0.0;
  exp_t e_ = 0;
  void normalize();
};

LogScaled min(const LogScaled& a, const LogScaled& b);
LogScaled max(const LogScaled& a, const LogScaled& b);

// log2(|a| / |b|) computed from exponent differences, accurate even when both
// magnitudes are far outside double range.
double log2_ratio(const LogScaled& a, const LogScaled& b);

// |a/b - 1| for nonzero b, computed without leaving LogScaled arithmetic.
double relative_difference(const LogScaled& a, const LogScaled& b);

}  // namespace wdl
