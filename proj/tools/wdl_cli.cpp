#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "wdl/classify.hpp"
#include "wdl/errors.hpp"
#include "wdl/io.hpp"
#include "wdl/lemmas.hpp"
#include "wdl/model.hpp"
#include "wdl/schedule.hpp"
#include "wdl/verify.hpp"

namespace {

using wdl::io::json;

enum Exit { ok = 0, failure = 1, inconclusive = 2, io_error = 3 };

constexpr const char* output_dir_env = "WDL_OUTPUT_DIR";

struct Config {
  std::string family = "square";
  std::size_t depth = 12;
  std::uint64_t seed = 0;
  std::string perturbation = "random";
  double envelope = 0.9;
  std::size_t samples = 1024;
  std::size_t draws = 20;
  std::string format = "json";
  std::string out;
  // orbit
  double start = 4.0;
  double start_im = 0.0;
  std::optional<double> target;
  std::optional<std::uint64_t> steps;
  // example / report
  std::string id;
  std::size_t seeds = 10;
  // verify
  std::string lemma;
  std::string grid;
};

wdl::PerturbationModel make_model(const Config& c, bool force_real = false) {
  if (c.perturbation == "zero") return wdl::PerturbationModel::zero();
  if (c.perturbation == "random") return wdl::PerturbationModel::random(c.seed, c.envelope, force_real);
  if (c.perturbation == "random-real") return wdl::PerturbationModel::random(c.seed, c.envelope, true);
  if (c.perturbation == "extremal+") return wdl::PerturbationModel::extremal(1, c.envelope);
  if (c.perturbation == "extremal-") return wdl::PerturbationModel::extremal(-1, c.envelope);
  throw wdl::DomainError("unknown perturbation " + c.perturbation);
}

// Writes to --out, else to $WDL_OUTPUT_DIR/<name>, else to stdout.
int emit(const Config& c, const std::string& text, const std::string& name) {
  std::filesystem::path path;
  if (!c.out.empty()) {
    path = c.out;
  } else if (const char* dir = std::getenv(output_dir_env); dir != nullptr && *dir != '\0') {
    path = std::filesystem::path(dir) / name;
  } else {
    std::cout << text;
    std::cout.flush();
    return std::cout ? ok : io_error;
  }
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text) || !f.flush()) {
    std::cerr << "error: cannot write " << path.string() << "\n";
    return io_error;
  }
  return ok;
}

std::string extension(const Config& c) {
  if (c.format == "md") return ".md";
  if (c.format == "csv") return ".csv";
  return ".json";
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& g, std::size_t a, std::size_t b) {
  if (g.empty()) return {a, b};
  const auto x = g.find('x');
  try {
    if (x == std::string::npos) return {std::stoul(g), b};
    return {std::stoul(g.substr(0, x)), std::stoul(g.substr(x + 1))};
  } catch (const std::exception&) {
    throw wdl::DomainError("grid must look like 99x999");
  }
}

int cmd_schedule(const Config& c) {
  const wdl::Schedule s = wdl::build_schedule(c.family, c.depth, c.samples);
  return emit(c, wdl::io::to_json(s).dump(1) + "\n", "schedule-" + c.family + "-" + std::to_string(c.depth) + ".json");
}

int cmd_orbit(const Config& c) {
  const wdl::Schedule s = wdl::build_schedule(c.family, c.depth, c.samples);
  const wdl::PerturbationModel model = make_model(c, c.target.has_value());
  const wdl::cplx w = c.target ? wdl::cplx(wdl::solve_start(s, model, *c.target), 0.0)
                               : wdl::cplx(c.start - 4.0, c.start_im);
  const std::uint64_t steps = c.steps.value_or(s.last_step());
  const wdl::OrbitTrace t = wdl::orbit(wdl::local_point(s, 0, w), steps, model, s);
  const std::string stem = "orbit-" + c.family + "-" + std::to_string(c.depth);
  if (c.format == "csv") return emit(c, wdl::io::orbit_gphase_csv(t), stem + ".csv");
  json header{{"schema", wdl::io::schema},
              {"family", c.family},
              {"depth", c.depth},
              {"model", model.name()},
              {"envelope", c.envelope},
              {"start", json::array({4.0 + w.real(), w.imag()})},
              {"steps", t.records.size() - 1}};
  return emit(c, wdl::io::orbit_jsonl(t, header), stem + ".jsonl");
}

wdl::io::SummaryRow summarize(const wdl::ExampleSpec& e, const std::vector<wdl::ClassificationReport>& runs) {
  wdl::io::SummaryRow row;
  row.id = e.id;
  row.expected = wdl::to_string(e.expected_hyperbolic) + "+" + wdl::to_string(e.expected_boundary);
  row.markers = true;
  row.seeds = runs.size();
  for (const auto& r : runs) {
    const std::string obs = wdl::to_string(r.hyperbolic.cls) + "+" + wdl::to_string(r.boundary.cls);
    if (row.observed.empty()) row.observed = obs;
    else if (row.observed != obs) row.observed = "mixed";
    row.markers = row.markers && r.markers_pass();
    if (r.pass()) ++row.seeds_passing;
  }
  return row;
}

std::string render_rows(const Config& c, const std::vector<wdl::io::SummaryRow>& rows) {
  if (c.format == "csv") return wdl::io::summary_csv(rows);
  if (c.format == "md") return wdl::io::summary_markdown(rows);
  return wdl::io::summary_json(rows, c.depth).dump(1) + "\n";
}

int example_status(const wdl::ClassificationReport& r) {
  if (!r.markers_pass()) return failure;
  if (r.inconclusive()) return inconclusive;
  return r.classes_match() ? ok : failure;
}

int cmd_example(const Config& c) {
  const wdl::ExampleSpec& e = wdl::example_spec(c.id);
  const wdl::ClassificationReport r = wdl::run_example(e, c.depth, make_model(c, true));
  const std::string stem = "example-" + e.id + "-" + std::to_string(c.depth);
  int w = ok;
  if (c.format == "json") {
    w = emit(c, wdl::io::to_json(r).dump(1) + "\n", stem + ".json");
  } else {
    w = emit(c, render_rows(c, {summarize(e, {r})}), stem + extension(c));
  }
  if (w != ok) return w;
  const int status = example_status(r);
  if (status != ok)
    std::cerr << e.id << ": observed " << wdl::to_string(r.hyperbolic.cls) << "+" << wdl::to_string(r.boundary.cls)
              << (r.markers_pass() ? "" : ", marker failure") << "\n";
  return status;
}

int cmd_report(const Config& c) {
  std::vector<wdl::io::SummaryRow> rows;
  bool any_fail = false, any_inconclusive = false;
  for (const wdl::ExampleSpec& e : wdl::example_specs()) {
    const wdl::Schedule s = wdl::build_schedule(e.family_id, c.depth, c.samples);
    std::vector<wdl::ClassificationReport> runs;
    for (std::size_t i = 0; i < c.seeds; ++i) {
      Config ci = c;
      ci.seed = c.seed + i;
      runs.push_back(wdl::run_example(e, s, make_model(ci, true)));
      const int st = example_status(runs.back());
      any_fail = any_fail || st == failure;
      any_inconclusive = any_inconclusive || st == inconclusive;
    }
    rows.push_back(summarize(e, runs));
  }
  const int w = emit(c, render_rows(c, rows), "report-" + std::to_string(c.depth) + extension(c));
  if (w != ok) return w;
  if (any_fail) return failure;
  return any_inconclusive ? inconclusive : ok;
}

int cmd_verify_lemma(const Config& c) {
  std::vector<wdl::SweepResult> results;
  if (c.lemma == "2.4") {
    const auto [n, pairs] = parse_grid(c.grid, 50, 10000);
    results = wdl::sweep_hyperbolic_estimates(n, pairs, c.seed + 1);
    results.push_back(wdl::sweep_mobius_invariance(pairs, 1e-10, c.seed + 2));
  } else if (c.lemma == "4.2") {
    const auto [nr, nx] = parse_grid(c.grid, 99, 999);
    results.push_back(wdl::sweep_cross_ratio(nr, nx));
  } else if (c.lemma == "4.4") {
    const auto [ns, nx] = parse_grid(c.grid, 100, 100);
    results = wdl::sweep_semi_bounds(ns, nx);
  } else {
    throw wdl::DomainError("unknown lemma " + c.lemma + " (expected 2.4, 4.2 or 4.4)");
  }
  json items = json::array();
  bool pass = true;
  double min_margin = std::numeric_limits<double>::infinity();
  for (const auto& r : results) {
    items.push_back(wdl::io::to_json(r));
    pass = pass && r.pass();
    min_margin = std::min(min_margin, r.min_margin);
    if (!r.pass()) std::cerr << "failed: " << r.name << " at " << r.worst << "\n";
  }
  json j{{"schema", wdl::io::schema},
         {"lemma", c.lemma},
         {"pass", pass},
         {"min_margin", min_margin},
         {"sweeps", items}};
  const int w = emit(c, j.dump(1) + "\n", "verify-lemma-" + c.lemma + ".json");
  if (w != ok) return w;
  return pass ? ok : failure;
}

int cmd_verify(const Config& c) {
  if (!c.lemma.empty()) return cmd_verify_lemma(c);
  const wdl::Schedule s = wdl::build_schedule(c.family, c.depth, c.samples);
  const wdl::PerturbationModel model = make_model(c);
  json reports;
  std::vector<std::string> failed;
  auto record = [&](const std::string& name, json report, bool pass) {
    report["pass"] = pass;
    reports[name] = std::move(report);
    if (!pass) failed.push_back(name);
  };
  const wdl::CheckReport inv = wdl::check_schedule_invariants(s);
  record("schedule_invariants", wdl::io::to_json(inv), inv.pass());
  const wdl::CheckReport eps = wdl::check_eps_definition(s, c.samples);
  record("eps_definition", wdl::io::to_json(eps), eps.pass());
  const wdl::SurroundReport sur = wdl::verify_surrounds(s, model, c.draws, c.samples);
  record("surrounds", wdl::io::to_json(sur), sur.pass());
  const wdl::DisjointnessReport dis = wdl::verify_disjointness(s);
  record("disjointness", wdl::io::to_json(dis), dis.disjoint());
  const wdl::ReefReport reef = wdl::build_reefs_and_check_condition_f(s, c.samples);
  record("reefs", wdl::io::to_json(reef), reef.positive() && reef.decreasing());
  const wdl::HopReport hop = wdl::verify_hop_bound(s, model, c.draws);
  record("hop_bound", wdl::io::to_json(hop), hop.pass());
  json j{{"schema", wdl::io::schema},
         {"family", c.family},
         {"depth", c.depth},
         {"model", model.name()},
         {"envelope", c.envelope},
         {"draws", c.draws},
         {"samples", c.samples},
         {"pass", failed.empty()},
         {"failed", failed},
         {"reports", reports}};
  const int w = emit(c, j.dump(1) + "\n", "verify-" + c.family + "-" + std::to_string(c.depth) + ".json");
  if (w != ok) return w;
  for (const auto& f : failed) std::cerr << "failed: " << f << "\n";
  return failed.empty() ? ok : failure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schedules, orbits, verification sweeps and example classification for the wandering-domain model"};
  app.require_subcommand(1);
  Config c;

  const std::vector<std::string> families = wdl::BlaschkeFamily::known_ids();
  auto common = [&](CLI::App* sub, bool family) {
    if (family) sub->add_option("--family", c.family, "Blaschke family id")->check(CLI::IsMember(families));
    sub->add_option("--depth", c.depth, "schedule depth N")->check(CLI::PositiveNumber);
    sub->add_option("--samples", c.samples, "curve samples")->check(CLI::PositiveNumber);
    sub->add_option("--out", c.out, "output file (default: $WDL_OUTPUT_DIR or stdout)");
  };
  auto perturbation = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "perturbation seed");
    sub->add_option("--perturbation", c.perturbation, "zero, random, random-real, extremal+ or extremal-")
        ->check(CLI::IsMember({"zero", "random", "random-real", "extremal+", "extremal-"}));
    sub->add_option("--envelope", c.envelope, "fraction of eps used by the perturbation")
        ->check(CLI::NonNegativeNumber);
  };

  CLI::App* schedule = app.add_subcommand("schedule", "build a schedule and write it as JSON");
  common(schedule, true);

  CLI::App* orbit = app.add_subcommand("orbit", "simulate one perturbed orbit");
  common(orbit, true);
  perturbation(orbit);
  orbit->add_option("--start", c.start, "real part of the start in Delta_0 (absolute)");
  orbit->add_option("--start-im", c.start_im, "imaginary part of the start");
  orbit->add_option("--target", c.target, "solve f(x) = kappa_0 + target for the start instead");
  orbit->add_option("--steps", c.steps, "number of steps (default: to the end of the schedule)");
  orbit->add_option("--format", c.format, "jsonl or csv (G-phases only)")
      ->check(CLI::IsMember({"json", "jsonl", "csv"}));

  CLI::App* example = app.add_subcommand("example", "run one of the six examples");
  common(example, false);
  perturbation(example);
  example->add_option("--id", c.id, "1a, 1b, 2a, 2b, 3a or 3b")
      ->required()
      ->check(CLI::IsMember({"1a", "1b", "2a", "2b", "3a", "3b"}));
  example->add_option("--format", c.format, "json, csv or md")->check(CLI::IsMember({"json", "csv", "md"}));

  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite or a lemma sweep");
  common(verify, true);
  perturbation(verify);
  verify->add_option("--draws", c.draws, "perturbation draws")->check(CLI::PositiveNumber);
  verify->add_option("--lemma", c.lemma, "sweep a lemma instead: 2.4, 4.2 or 4.4");
  verify->add_option("--grid", c.grid, "sweep grid, e.g. 99x999");

  CLI::App* report = app.add_subcommand("report", "six-example summary table across seeds");
  common(report, false);
  perturbation(report);
  report->add_option("--seeds", c.seeds, "number of consecutive seeds")->check(CLI::PositiveNumber);
  report->add_option("--format", c.format, "json, csv or md")->check(CLI::IsMember({"json", "csv", "md"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  if (c.envelope > 1.0) std::cerr << "note: envelope fraction above 1 violates the perturbation bound\n";

  try {
    if (*schedule) return cmd_schedule(c);
    if (*orbit) return cmd_orbit(c);
    if (*example) return cmd_example(c);
    if (*verify) return cmd_verify(c);
    if (*report) return cmd_report(c);
  } catch (const wdl::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return inconclusive;
  } catch (const wdl::InsufficientDataError& e) {
    std::cerr << "insufficient data: " << e.what() << "\n";
    return inconclusive;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return failure;
  }
  return failure;
}
