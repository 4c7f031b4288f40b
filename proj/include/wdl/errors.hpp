#pragma once

#include <stdexcept>
#include <string>

namespace wdl {

// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Sampled argument tracking could not settle on an integer.
struct AmbiguityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Query point too close to a sampled curve.
struct ProximityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An orbit point left the region where the current branch of the model map is defined.
struct RegionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No admissible radius could be found while building a schedule.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InsufficientDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OverflowError : std::overflow_error {
  using std::overflow_error::overflow_error;
};

}  // namespace wdl
