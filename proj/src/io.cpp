#include "wdl/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace wdl::io {

namespace {

json point(cplx w) { return json::array({w.real(), w.imag()}); }

std::string phase_kind(PhaseKind k) {
  switch (k) {
    case PhaseKind::delta:
      return "delta";
    case PhaseKind::g:
      return "G";
    case PhaseKind::d:
      return "D";
  }
  return "delta";
}

// Shortest representation that round-trips, as nlohmann prints it.
std::string num(double x) { return json(x).dump(); }

// JSON has no infinities; write them as null so that output parses back unchanged.
json real(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

}  // namespace

json log2_value(const LogScaled& x) {
  if (x.is_zero()) return nullptr;
  return x.log2_magnitude();
}

json to_json(const BlaschkeProduct& b) {
  json zeros = json::array();
  for (cplx a : b.zeros()) zeros.push_back(point(a));
  return json{{"zeros", zeros}, {"rotation", b.rotation()}, {"degree", b.degree()}};
}

json to_json(const Schedule& s) {
  json j;
  j["schema"] = schema;
  j["family"] = s.family_id;
  j["depth"] = s.depth;
  j["samples"] = s.samples;
  json alpha = json::array(), rhat = json::array(), Rhat = json::array(), ig = json::array(), og = json::array(),
       eps = json::array();
  for (const LogScaled& a : s.alpha) alpha.push_back(log2_value(a));
  for (std::size_t m = 0; m < s.inner_gap.size(); ++m) {
    rhat.push_back(s.rhat(m));
    Rhat.push_back(s.Rhat(m));
    ig.push_back(log2_value(s.inner_gap[m]));
    og.push_back(log2_value(s.outer_gap[m]));
  }
  for (const LogScaled& e : s.eps) eps.push_back(log2_value(e));
  j["alpha_log2"] = alpha;
  j["rhat"] = rhat;
  j["Rhat"] = Rhat;
  j["inner_gap_log2"] = ig;
  j["outer_gap_log2"] = og;
  j["eps_log2"] = eps;
  j["degrees"] = s.degrees;
  json products = json::array();
  for (const BlaschkeProduct& b : s.products) products.push_back(to_json(b));
  j["products"] = products;
  json entries = json::array();
  for (const EntryRecord& e : s.entries)
    entries.push_back(json{{"n", e.n},
                           {"inner_gap_log2", log2_value(e.inner_gap)},
                           {"outer_gap_log2", log2_value(e.outer_gap)},
                           {"inner_halved_log2", log2_value(e.inner_halved)},
                           {"inner_squared_log2", log2_value(e.inner_squared)},
                           {"outer_halved_log2", log2_value(e.outer_halved)},
                           {"outer_image_log2", log2_value(e.outer_image)},
                           {"outer_cap", real(e.outer_cap)},
                           {"winding", e.winding},
                           {"sampled_winding", e.sampled_winding},
                           {"min_image_modulus", e.min_image_modulus},
                           {"refinements", e.refinements}});
  j["entries"] = entries;
  return j;
}

json to_json(const OrbitRecord& r) {
  return json{{"m", r.m},
              {"n", r.phase.n},
              {"k", r.phase.k},
              {"phase", phase_kind(r.phase.kind)},
              {"w", point(r.w.value())},
              {"boundary_gap", r.boundary_gap},
              {"eps_rel_log2", log2_value(r.eps_rel)},
              {"applied_log2", log2_value(r.applied)}};
}

json to_json(const CheckReport& r) {
  json items = json::array();
  for (const CheckItem& c : r.items)
    items.push_back(json{{"name", c.name}, {"pass", c.pass}, {"margin", c.margin}, {"detail", c.detail}});
  return json{{"pass", r.pass()}, {"items", items}};
}

json to_json(const SurroundReport& r) {
  json j{{"pass", r.pass()},
         {"runs", r.runs},
         {"checked", r.checked},
         {"failures", r.failures},
         {"min_inner_margin", real(r.min_inner_margin)},
         {"min_outer_margin", real(r.min_outer_margin)}};
  if (r.first_failure) {
    const SurroundItem& f = *r.first_failure;
    j["first_failure"] = json{{"m", f.m},
                              {"model", f.model},
                              {"inner_margin", f.inner_margin},
                              {"outer_margin", f.outer_margin},
                              {"winding", f.winding},
                              {"expected_winding", f.expected_winding}};
  } else {
    j["first_failure"] = nullptr;
  }
  return j;
}

json to_json(const DisjointnessReport& r) {
  json items = json::array();
  for (const DisjointnessItem& i : r.items)
    items.push_back(json{{"n", i.n},
                         {"k", i.k},
                         {"hypothesis_margin", i.hypothesis_margin},
                         {"geometric_margin", i.geometric_margin},
                         {"containment_margin", i.containment_margin},
                         {"pass", i.pass}});
  return json{{"pass", r.disjoint()}, {"min_margin", real(r.min_margin())}, {"items", items}};
}

json to_json(const ReefReport& r) {
  json items = json::array();
  for (const ReefItem& i : r.items)
    items.push_back(json{{"n", i.n},
                         {"delta_log2", log2_value(i.delta)},
                         {"radius_rel", i.radius_rel},
                         {"angular_gap_log2", log2_value(i.angular_gap)},
                         {"max_distance_log2", log2_value(i.max_distance)},
                         {"sampled_distance_log2", log2_value(i.sampled_distance)},
                         {"ratio_log2", log2_value(i.ratio)}});
  return json{{"positive", r.positive()}, {"decreasing", r.decreasing()}, {"items", items}};
}

json to_json(const HopReport& r) {
  return json{{"pass", r.pass()},
              {"hops", r.hops},
              {"failures", r.failures},
              {"min_margin_log2", real(r.min_margin_log2)},
              {"max_consistency", r.max_consistency},
              {"accumulation_checks", r.accumulation_checks},
              {"accumulation_failures", r.accumulation_failures},
              {"min_accumulation_margin_log2", real(r.min_accumulation_margin)},
              {"first_failure", r.first_failure}};
}

json to_json(const SweepResult& r) {
  return json{{"name", r.name},
              {"pass", r.pass()},
              {"strict", r.strict},
              {"checks", r.checks},
              {"failures", r.failures},
              {"min_margin", real(r.min_margin)},
              {"worst", r.worst}};
}

json to_json(const ClassificationReport& r) {
  json j;
  j["schema"] = schema;
  j["example"] = r.example_id;
  j["family"] = r.family_id;
  j["depth"] = r.depth;
  j["model"] = r.model;
  j["start_a"] = r.start_a;
  j["start_b"] = r.start_b;
  j["expected"] = json{{"hyperbolic", to_string(r.expected_hyperbolic)}, {"boundary", to_string(r.expected_boundary)}};
  auto evidence = [](const Evidence& e) {
    return json{{"rule", e.rule}, {"value", real(e.value)}, {"threshold", e.threshold}, {"window", json::array({e.from, e.to})}};
  };
  j["hyperbolic_class"] = to_string(r.hyperbolic.cls);
  j["hyperbolic_evidence"] = evidence(r.hyperbolic.evidence);
  j["boundary_class"] = to_string(r.boundary.cls);
  j["boundary_evidence"] = evidence(r.boundary.evidence);
  json markers = json::array();
  for (const Marker& m : r.markers)
    markers.push_back(
        json{{"name", m.name}, {"pass", m.pass}, {"worst", real(m.worst)}, {"bound", m.bound}, {"detail", m.detail}});
  j["markers"] = markers;
  j["classes_match"] = r.classes_match();
  j["markers_pass"] = r.markers_pass();
  j["pass"] = r.pass();
  j["gphase_distances"] = r.gphase_distances;
  j["boundary_gaps"] = r.boundary_gaps;
  json kn = json::array();
  for (const KnKn& k : r.kn_Kn)
    kn.push_back(json{{"n", k.n},
                      {"k", k.k},
                      {"K", k.K},
                      {"one_minus_k_log2", log2_value(k.one_minus_k)},
                      {"K_minus_one_log2", log2_value(k.K_minus_one)}});
  j["kn_Kn"] = kn;
  return j;
}

std::string orbit_jsonl(const OrbitTrace& t, const json& header) {
  std::string out = header.dump() + "\n";
  for (const OrbitRecord& r : t.records) out += to_json(r).dump() + "\n";
  return out;
}

std::string orbit_gphase_csv(const OrbitTrace& t) {
  std::string out = "n,m,w_re,w_im,boundary_gap,eps_rel_log2\n";
  for (const OrbitRecord* r : t.g_records()) {
    const cplx w = r->w.value();
    const json e = log2_value(r->eps_rel);
    out += std::to_string(r->phase.n) + "," + std::to_string(r->m) + "," + num(w.real()) + "," + num(w.imag()) + "," +
           num(r->boundary_gap) + "," + (e.is_null() ? std::string() : num(e.get<double>())) + "\n";
  }
  return out;
}

json summary_json(const std::vector<SummaryRow>& rows, std::size_t depth) {
  json items = json::array();
  bool all = true;
  for (const SummaryRow& r : rows) {
    items.push_back(json{{"example", r.id},
                         {"expected", r.expected},
                         {"observed", r.observed},
                         {"markers_pass", r.markers},
                         {"seeds", r.seeds},
                         {"seeds_passing", r.seeds_passing},
                         {"pass", r.pass()}});
    all = all && r.pass();
  }
  return json{{"schema", schema}, {"depth", depth}, {"pass", all}, {"examples", items}};
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out = "example,expected,observed,markers,seeds_passing,seeds\n";
  for (const SummaryRow& r : rows)
    out += r.id + "," + r.expected + "," + r.observed + "," + (r.markers ? "pass" : "fail") + "," +
           std::to_string(r.seeds_passing) + "," + std::to_string(r.seeds) + "\n";
  return out;
}

std::string summary_markdown(const std::vector<SummaryRow>& rows) {
  std::string out = "| example | expected | observed | markers | seeds |\n|---|---|---|---|---|\n";
  for (const SummaryRow& r : rows)
    out += "| " + r.id + " | " + r.expected + " | " + r.observed + " | " + (r.markers ? "pass" : "fail") + " | " +
           std::to_string(r.seeds_passing) + "/" + std::to_string(r.seeds) + " |\n";
  return out;
}

}  // namespace wdl::io
