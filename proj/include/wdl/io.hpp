#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "wdl/classify.hpp"
#include "wdl/lemmas.hpp"
#include "wdl/model.hpp"
#include "wdl/schedule.hpp"
#include "wdl/verify.hpp"

namespace wdl::io {

using json = nlohmann::ordered_json;

inline constexpr const char* schema = "wdl/1";

// log2 |x|, or null for zero.
json log2_value(const LogScaled& x);

json to_json(const BlaschkeProduct& b);
json to_json(const Schedule& s);
json to_json(const OrbitRecord& r);
json to_json(const CheckReport& r);
json to_json(const SurroundReport& r);
json to_json(const DisjointnessReport& r);
json to_json(const ReefReport& r);
json to_json(const HopReport& r);
json to_json(const SweepResult& r);
json to_json(const ClassificationReport& r);

// One JSON object per line, the first a header naming the run.
std::string orbit_jsonl(const OrbitTrace& t, const json& header);
// G-phase subsequence: n, m, w_re, w_im, boundary_gap, eps_rel_log2.
std::string orbit_gphase_csv(const OrbitTrace& t);

// Six-row summary: id, expected pair, observed pair, markers, seeds agreeing.
struct SummaryRow {
  std::string id;
  std::string expected;
  std::string observed;
  bool markers = false;
  std::size_t seeds = 0;
  std::size_t seeds_passing = 0;
  bool pass() const { return seeds > 0 && seeds_passing == seeds; }
};

json summary_json(const std::vector<SummaryRow>& rows, std::size_t depth);
std::string summary_csv(const std::vector<SummaryRow>& rows);
std::string summary_markdown(const std::vector<SummaryRow>& rows);

}  // namespace wdl::io
