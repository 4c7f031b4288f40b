#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wdl/blaschke.hpp"
#include "wdl/log_scaled.hpp"
#include "wdl/model.hpp"
#include "wdl/schedule.hpp"

namespace wdl {

enum class HyperbolicClass { contracting, semi_contracting, eventually_isometric, inconclusive };
enum class BoundaryClass { bungee, converging, inconclusive };

std::string to_string(HyperbolicClass c);
std::string to_string(BoundaryClass c);

// Decision thresholds. The limits they stand for are asymptotic; finite runs
// that miss every margin are reported inconclusive.
struct ClassifyOptions {
  std::size_t window = 10;          // minimum number of G-phases
  double decay_factor = 0.1;        // last < decay_factor * first
  double liminf_margin = 0.05;      // min over the second half must exceed this
  double constancy_tolerance = 1e-9;
  std::size_t constancy_tail = 10;
  double power_exponent = -0.25;    // log-log slope that still counts as decay to 0
};

// Which rule fired and the statistic it looked at.
struct Evidence {
  std::string rule;
  double value = 0.0;
  double threshold = 0.0;
  std::size_t from = 0;  // index range of the series used
  std::size_t to = 0;
};

struct HyperbolicDecision {
  HyperbolicClass cls = HyperbolicClass::inconclusive;
  Evidence evidence;
};

struct BoundaryDecision {
  BoundaryClass cls = BoundaryClass::inconclusive;
  Evidence evidence;
};

// Hyperbolic distances in G_n between the G-phase points of two traces.
std::vector<double> gphase_distances(const OrbitTrace& a, const OrbitTrace& b);
// dist(w, boundary of G_n) = 1 - |w| at the G-phases of a trace.
std::vector<double> gphase_boundary_gaps(const OrbitTrace& t);

// degrees[n] is the degree of b_n for each observed pass.
HyperbolicDecision classify_hyperbolic(const std::vector<double>& distances, const std::vector<int>& degrees,
                                       const ClassifyOptions& opt = {});
HyperbolicDecision classify_hyperbolic(const OrbitTrace& a, const OrbitTrace& b, const std::vector<int>& degrees,
                                       const ClassifyOptions& opt = {});
BoundaryDecision classify_boundary(const std::vector<double>& gaps, const ClassifyOptions& opt = {});
BoundaryDecision classify_boundary(const OrbitTrace& t, const ClassifyOptions& opt = {});

struct PowerFit {
  double exponent = 0.0;
  double constant = 0.0;
  double residual = 0.0;  // RMS of the log residuals
};

// value ~ constant * x^exponent by least squares on log-log data.
PowerFit fit_power_law(const std::vector<std::pair<double, double>>& series);

struct GeometricFit {
  double ratio = 0.0;     // mean of consecutive ratios
  double spread = 0.0;    // max - min of the consecutive ratios
  double residual = 0.0;  // standard deviation of the consecutive ratios
};

GeometricFit fit_geometric(const std::vector<double>& series);

// 1 - b^n(0) for n = 0 .. n_max, kept accurate near the circle.
std::vector<double> boundary_gap_series(const BlaschkeProduct& b, std::uint64_t n_max);

struct KnKn {
  std::size_t n = 0;
  LogScaled sigma;        // (3/4) dist(phi(gamma_{l_n - 1}), boundary of G_n)
  LogScaled one_minus_k;  // 1 - k_n
  LogScaled K_minus_one;  // K_n - 1
  double k = 0.0;
  double K = 0.0;
};

// k_n = contraction_factor(s, R_{l_n}) and K_n = 1 / contraction_factor(s / r, 1 / r)
// with s = 1 - sigma, evaluated in closed form so that tiny gaps keep their digits.
KnKn kn_Kn_bracket(const Schedule& s, std::size_t n);

struct Marker {
  std::string name;
  bool pass = false;
  double worst = 0.0;  // the extreme value met, compared with the bound
  double bound = 0.0;
  std::string detail;
};

struct ExampleSpec {
  std::string id;
  std::string family_id;
  // Start points: an absolute real in Delta_0, or a target for f(x) in G_0
  // solved on the real axis when solve is set.
  struct Start {
    double value = 4.0;
    bool solve = false;
  };
  Start a, b;
  HyperbolicClass expected_hyperbolic = HyperbolicClass::inconclusive;
  BoundaryClass expected_boundary = BoundaryClass::inconclusive;
  std::string summary;
};

const std::vector<ExampleSpec>& example_specs();
const ExampleSpec& example_spec(const std::string& id);

struct ClassificationReport {
  std::string example_id;
  std::string family_id;
  std::size_t depth = 0;
  std::string model;
  double start_a = 0.0;  // absolute starts used
  double start_b = 0.0;
  HyperbolicClass expected_hyperbolic = HyperbolicClass::inconclusive;
  BoundaryClass expected_boundary = BoundaryClass::inconclusive;
  HyperbolicDecision hyperbolic;
  BoundaryDecision boundary;
  std::vector<double> gphase_distances;
  std::vector<double> boundary_gaps;
  std::vector<KnKn> kn_Kn;
  std::vector<Marker> markers;

  bool classes_match() const;
  bool markers_pass() const;
  bool inconclusive() const;
  bool pass() const { return classes_match() && markers_pass(); }
};

// Builds the schedule (or uses the one given), runs the paired orbits,
// classifies both ways and evaluates the example's markers.
ClassificationReport run_example(const ExampleSpec& spec, std::size_t depth, const PerturbationModel& model,
                                 const ClassifyOptions& opt = {});
ClassificationReport run_example(const ExampleSpec& spec, const Schedule& s, const PerturbationModel& model,
                                 const ClassifyOptions& opt = {});

// Partial products of lambda_j and 2 / (1 + lambda_j) for the semi family,
// with rigorous tail bounds beyond j = terms.
struct SemiProducts {
  double lambda_lower = 0.0;  // lower bound of prod lambda_j
  double expand_upper = 0.0;  // upper bound of prod 2 / (1 + lambda_j)
};
SemiProducts semi_products(std::size_t terms = 200);

}  // namespace wdl
