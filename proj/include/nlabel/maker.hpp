#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nlabel/build.hpp"
#include "nlabel/canonical_json.hpp"
#include "nlabel/column_kind.hpp"
#include "nlabel/error.hpp"
#include "nlabel/ground_truth.hpp"
#include "nlabel/label.hpp"
#include "nlabel/pair_plots.hpp"
#include "nlabel/prob_model.hpp"
#include "nlabel/stats.hpp"
#include "nlabel/table.hpp"

namespace nlabel {

struct MakeConfig {
  std::string dataset_path;  // "-" reads standard input
  std::string out_path;      // empty writes to standard output
  std::vector<std::string> modules{"metadata", "statistics", "pair_plots"};
  std::string meta_path;
  std::string overrides_path;

  // ground_truth_correlations
  std::string gt_path;
  std::string gt_key;       // empty: first column of the ground-truth file
  std::string dataset_key;
  std::string value_column;
  std::vector<std::string> aggregates{"sum"};
  std::vector<std::string> demographics;  // empty: every numeric column
  std::string population_column = "population";
  bool zip_pad = true;

  // probabilistic_model
  std::string target;
  std::vector<std::string> target_values;
  std::string condition;
  double alpha = 1.0;
  std::uint64_t seed = 0;
  std::size_t mc_samples = 10000;
  double level = 0.90;
  std::size_t synthetic = 0;

  // ingest and pair plots
  std::optional<std::vector<std::string>> missing_tokens;
  char delimiter = ',';
  std::size_t max_rows = 100000;
  std::size_t pair_limit = 25;
  std::size_t pair_bins = 20;
  std::vector<std::pair<std::string, std::string>> pairs;

  std::string timestamp;  // pins generated_at; empty uses the current time
};

struct MakeOutcome {
  BuildResult result;
  std::vector<std::string> warnings;
};

inline bool wants_module(const MakeConfig& config, std::string_view name) {
  return std::find(config.modules.begin(), config.modules.end(), name) != config.modules.end();
}

// Rejects configurations that cannot succeed before any data is read.
inline void check_config(const MakeConfig& config) {
  if (config.dataset_path.empty()) throw ConfigError("no dataset given");
  std::set<std::string> seen;
  for (const auto& m : config.modules) {
    if (!is_module_name(m))
      throw ConfigError("unknown module '" + m + "' (known: " +
                        text::join(std::vector<std::string>(kModuleNames.begin(), kModuleNames.end()), ", ") + ")");
    if (!seen.insert(m).second) throw ConfigError("module '" + m + "' listed twice");
  }
  if (wants_module(config, "ground_truth_correlations")) {
    std::vector<std::string> missing;
    if (config.gt_path.empty()) missing.push_back("--gt");
    if (config.dataset_key.empty()) missing.push_back("--dataset-key");
    if (config.value_column.empty()) missing.push_back("--value-column");
    if (config.aggregates.empty()) missing.push_back("--aggregates");
    if (!missing.empty())
      throw ConfigError("ground_truth_correlations requires " + text::join(missing, ", "));
    for (const auto& a : config.aggregates)
      if (!parse_aggregate(a)) throw ConfigError("unknown aggregate '" + a + "' (sum, mean, count, per_capita)");
  }
  if (wants_module(config, "probabilistic_model")) {
    std::vector<std::string> missing;
    if (config.target.empty()) missing.push_back("--target");
    if (config.target_values.empty()) missing.push_back("--target-values");
    if (config.condition.empty()) missing.push_back("--condition");
    if (!missing.empty()) throw ConfigError("probabilistic_model requires " + text::join(missing, ", "));
    if (!(config.alpha > 0.0)) throw ConfigError("--alpha must be positive");
    if (config.mc_samples < 1000) throw ConfigError("--mc-samples must be at least 1000");
    if (!(config.level > 0.0 && config.level < 1.0)) throw ConfigError("--level must lie in (0, 1)");
  }
  if (config.pair_bins < 1 || config.pair_bins > 20) throw ConfigError("--pair-bins must lie in [1, 20]");
  if (!config.timestamp.empty()) {
    static const std::regex iso(R"(^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}(\.\d+)?Z$)");
    if (!std::regex_match(config.timestamp, iso))
      throw ConfigError("--timestamp must be an ISO-8601 UTC time such as 2017-01-01T00:00:00Z");
  }
}

inline std::string utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

inline Json read_json_file(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

// {"column": {"stratum": "nominal", "subtype": "number"}, ...}
inline std::map<std::string, ColumnKind> parse_overrides(const Json& j) {
  if (!j.is_object()) throw ConfigError("type overrides must be a JSON object keyed by column name");
  std::map<std::string, ColumnKind> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = it.value();
    if (!v.is_object() || !v.contains("stratum") || !v["stratum"].is_string() || !v.contains("subtype") ||
        !v["subtype"].is_string())
      throw ConfigError("type override for '" + it.key() + "' needs string fields 'stratum' and 'subtype'");
    auto stratum = parse_stratum(v["stratum"].get<std::string>());
    auto subtype = parse_subtype(v["subtype"].get<std::string>());
    if (!stratum || !subtype) throw ConfigError("type override for '" + it.key() + "' has an unknown stratum or subtype");
    out[it.key()] = make_override(*stratum, *subtype);
  }
  return out;
}

// ingest -> infer -> profile -> build. Nothing is written here; the caller
// serializes the label or reports the action list.
inline MakeOutcome run_make(const MakeConfig& config, std::istream& standard_input = std::cin) {
  check_config(config);

  IngestOptions ingest;
  ingest.delimiter = config.delimiter;
  ingest.max_rows = config.max_rows;
  if (config.missing_tokens)
    ingest.missing_tokens = std::set<std::string>(config.missing_tokens->begin(), config.missing_tokens->end());
  if (!config.overrides_path.empty()) ingest.type_overrides = parse_overrides(read_json_file(config.overrides_path));

  DataTable table = config.dataset_path == "-" ? parse_csv(standard_input, ingest, "stdin")
                                               : read_csv_file(config.dataset_path, ingest);
  if (table.row_count() == 0) throw ProfileError("dataset has a header but no rows");

  MakeOutcome outcome;
  std::vector<ColumnKind> kinds;
  for (auto& inference : infer_kinds(table, ingest.type_overrides)) {
    if (inference.warning) outcome.warnings.push_back(*inference.warning);
    kinds.push_back(inference.kind);
  }

  DatasetProfile profile = profile_dataset(table, kinds);
  AutoPayloads payloads;
  payloads.metadata.filename = table.source_name();
  payloads.metadata.rows = table.row_count();
  payloads.metadata.columns = table.column_count();
  payloads.metadata.missing_pct = profile.missing_pct;
  payloads.metadata.missing_fraction = profile.missing_fraction;
  if (wants_module(config, "statistics")) payloads.statistics = profile.statistics;

  if (wants_module(config, "pair_plots")) {
    PairOptions options;
    options.max_bins = config.pair_bins;
    options.column_limit = config.pair_limit;
    payloads.pair_plots =
        config.pairs.empty() ? all_pairs(table, kinds, options) : pair_plots_for(table, kinds, config.pairs, options);
    for (const auto& s : payloads.pair_plots->skipped)
      outcome.warnings.push_back("pair (" + s.column_a + ", " + s.column_b + ") skipped: " + s.reason);
  }

  if (wants_module(config, "probabilistic_model")) {
    FitOptions fit{config.alpha, config.level, config.seed, config.mc_samples};
    ProbabilisticPayload prob;
    for (const auto& value : config.target_values) {
      auto post = fit_conditional(table, kinds, config.target, value, config.condition, fit);
      if (config.synthetic > 0) post.synthetic = summarize_synthetic(post, config.synthetic, config.seed);
      prob.posteriors.push_back(std::move(post));
    }
    payloads.probabilistic_model = std::move(prob);
  }

  if (wants_module(config, "ground_truth_correlations")) {
    IngestOptions gt_ingest;
    gt_ingest.delimiter = config.delimiter;
    gt_ingest.missing_tokens = ingest.missing_tokens;
    GroundTruthSpec spec;
    spec.key_column = config.gt_key;
    spec.population_column = config.population_column;
    spec.demographics = config.demographics;
    spec.keys.zip_pad = config.zip_pad;
    auto gt = load_ground_truth(read_csv_file(config.gt_path, gt_ingest), spec);
    GroundTruthPayload payload;
    for (const auto& name : config.aggregates) {
      auto aggregates = aggregate_by_key(table, config.dataset_key, config.value_column, *parse_aggregate(name), &gt,
                                         spec.keys);
      payload.reports.push_back(correlate(aggregates, gt));
    }
    payloads.ground_truth_correlations = std::move(payload);
  }

  Json manual = config.meta_path.empty() ? Json(nullptr) : read_json_file(config.meta_path);
  BuildRequest request{config.modules, table.columns(), config.timestamp.empty() ? utc_now() : config.timestamp};
  outcome.result = build_label(payloads, manual, request);
  return outcome;
}

}  // namespace nlabel
