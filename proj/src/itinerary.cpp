#include "wdl/itinerary.hpp"

#include <cmath>
#include <limits>

#include "wdl/errors.hpp"

namespace wdl {

std::uint64_t ell(std::uint64_t n) {
  __extension__ typedef unsigned __int128 u128;
  u128 v = 1 + 3 * static_cast<u128>(n) + static_cast<u128>(n) * (n == 0 ? 0 : n - 1) / 2;
  if (v > std::numeric_limits<std::uint64_t>::max()) throw OverflowError("ell: index too large");
  return static_cast<std::uint64_t>(v);
}

std::string Phase::name() const {
  switch (kind) {
    case PhaseKind::delta:
      return "Delta(" + std::to_string(n) + ")";
    case PhaseKind::g:
      return "G(" + std::to_string(n) + ")";
    case PhaseKind::d:
      return "D(" + std::to_string(n) + "," + std::to_string(k) + ")";
  }
  return {};
}

std::uint64_t Phase::step() const {
  switch (kind) {
    case PhaseKind::delta:
      return ell(n) - 1;
    case PhaseKind::g:
      return ell(n);
    case PhaseKind::d:
      return ell(n) + k + 1;
  }
  return 0;
}

Phase phase_of(std::uint64_t m) {
  // l_n grows like n^2 / 2; start from the estimate and correct.
  std::uint64_t n = static_cast<std::uint64_t>(std::sqrt(2.0 * static_cast<double>(m)));
  while (n > 0 && ell(n) - 1 > m) --n;
  while (ell(n + 1) - 1 <= m) ++n;
  std::uint64_t j = m - (ell(n) - 1);
  if (j == 0) return Phase::delta(n);
  if (j == 1) return Phase::g(n);
  return Phase::d(n, j - 2);
}

}  // namespace wdl
