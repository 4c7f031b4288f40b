#pragma once

#include <cstdint>
#include <string>

namespace wdl {

// Step index of the n-th visit to the G discs: l_0 = 1, l_{n+1} = l_n + n + 3.
std::uint64_t ell(std::uint64_t n);

enum class PhaseKind { delta, g, d };

// Position of step m in the itinerary:
//   delta(n)  for m = l_n - 1,
//   g(n)      for m = l_n,
//   d(n, k)   for m = l_n + k + 1, 0 <= k <= n.
struct Phase {
  PhaseKind kind = PhaseKind::delta;
  std::uint64_t n = 0;
  std::uint64_t k = 0;

  static Phase delta(std::uint64_t n) { return {PhaseKind::delta, n, 0}; }
  static Phase g(std::uint64_t n) { return {PhaseKind::g, n, 0}; }
  static Phase d(std::uint64_t n, std::uint64_t k) { return {PhaseKind::d, n, k}; }

  bool operator==(const Phase&) const = default;
  std::string name() const;
  // Inverse of phase_of.
  std::uint64_t step() const;
};

Phase phase_of(std::uint64_t m);

}  // namespace wdl
