// nlabel: build, validate and inspect dataset nutrition labels.
//
//   nlabel make data.csv --meta meta.json --out label.json
//   nlabel validate label.json
//   nlabel inspect label.json --module statistics
//
// Exit status: 0 success, 1 error, 2 manual input still required.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "nlabel.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitAction = 2;

std::vector<std::string> comma_list(const std::string& s) {
  std::vector<std::string> out;
  for (auto& part : nlabel::text::split(s, ','))
    if (!part.empty()) out.push_back(part);
  return out;
}

std::pair<std::string, std::string> parse_pair(const std::string& s) {
  auto parts = nlabel::text::split(s, ',');
  if (parts.size() != 2 || parts[0].empty() || parts[1].empty())
    throw nlabel::ConfigError("--pair expects two column names separated by a comma, got '" + s + "'");
  return {parts[0], parts[1]};
}

std::string canonical_module(const std::string& name) {
  if (name == "ground_truth") return "ground_truth_correlations";
  if (name == "probabilistic") return "probabilistic_model";
  return name;
}

struct MakeArgs {
  nlabel::MakeConfig config;
  std::string modules = "metadata,statistics,pair_plots";
  std::string aggregates = "sum";
  std::string demographics;
  std::string target_values;
  std::string missing_tokens;
  std::string delimiter = ",";
  std::vector<std::string> pairs;
  bool no_zip_pad = false;
};

int run_make(MakeArgs& args) {
  auto& config = args.config;
  config.modules.clear();
  for (const auto& m : comma_list(args.modules)) config.modules.push_back(canonical_module(m));
  config.aggregates = comma_list(args.aggregates);
  config.demographics = comma_list(args.demographics);
  config.target_values = comma_list(args.target_values);
  if (!args.missing_tokens.empty()) {
    std::vector<std::string> tokens;
    for (auto& t : nlabel::text::split(args.missing_tokens, ',')) tokens.push_back(t);
    config.missing_tokens = tokens;
  }
  if (args.delimiter == "\\t" || args.delimiter == "tab") args.delimiter = "\t";
  if (args.delimiter.size() != 1) throw nlabel::ConfigError("--delimiter must be a single character");
  config.delimiter = args.delimiter[0];
  for (const auto& p : args.pairs) config.pairs.push_back(parse_pair(p));
  config.zip_pad = !args.no_zip_pad;

  auto outcome = nlabel::run_make(config, std::cin);
  for (const auto& w : outcome.warnings) std::cerr << "warning: " << w << "\n";

  if (const auto* actions = std::get_if<nlabel::ActionList>(&outcome.result)) {
    for (const auto& path : actions->paths) std::cout << "ACTION: " << path << "\n";
    std::cerr << actions->paths.size() << " manual field(s) required; no label written\n";
    return kExitAction;
  }
  const auto bytes = nlabel::serialize(std::get<nlabel::LabelDocument>(outcome.result));
  if (config.out_path.empty()) {
    std::cout << bytes;
  } else {
    std::ofstream out(config.out_path, std::ios::binary);
    if (!out || !(out << bytes) || !(out.flush()))
      throw nlabel::Error("cannot write '" + config.out_path + "'");
  }
  return kExitOk;
}

int run_validate(const std::string& path) {
  const auto bytes = nlabel::read_file(path);
  auto report = nlabel::validate(bytes);
  for (const auto& v : report.violations) std::cout << v.path << "\t" << v.rule << "\t" << v.message << "\n";
  return report.ok() ? kExitOk : kExitError;
}

int run_inspect(const std::string& path, const std::string& module, const std::string& pair) {
  const auto bytes = nlabel::read_file(path);
  auto report = nlabel::validate(bytes);
  if (!report.ok()) {
    for (const auto& v : report.violations) std::cerr << v.path << "\t" << v.rule << "\t" << v.message << "\n";
    throw nlabel::Error("'" + path + "' is not a valid label");
  }
  auto doc = nlabel::deserialize(bytes);
  std::optional<std::pair<std::string, std::string>> selected;
  if (!pair.empty()) selected = parse_pair(pair);
  if (module.empty()) {
    std::cout << "modules: " << nlabel::text::join(nlabel::present_modules(doc), ", ") << "\n";
    return kExitOk;
  }
  std::cout << nlabel::render_module(doc, canonical_module(module), selected);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build, validate and inspect dataset nutrition labels", "nlabel"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(nlabel::kGeneratorName) + " " + std::string(nlabel::kGeneratorVersion));

  MakeArgs make;
  auto& c = make.config;
  auto* cmd_make = app.add_subcommand("make", "Profile a CSV dataset and write a label");
  cmd_make->add_option("dataset", c.dataset_path, "CSV file, or - for standard input")->required();
  cmd_make->add_option("--out,-o", c.out_path, "Label path (default: standard output)");
  cmd_make->add_option("--modules", make.modules, "Comma-separated modules")->capture_default_str();
  cmd_make->add_option("--meta", c.meta_path, "Manual input JSON");
  cmd_make->add_option("--overrides", c.overrides_path, "Column type overrides JSON");
  cmd_make->add_option("--gt", c.gt_path, "Ground-truth CSV");
  cmd_make->add_option("--gt-key", c.gt_key, "Key column of the ground-truth CSV (default: first column)");
  cmd_make->add_option("--dataset-key", c.dataset_key, "Dataset column joined to the ground-truth key");
  cmd_make->add_option("--value-column", c.value_column, "Dataset column aggregated per key");
  cmd_make->add_option("--aggregates", make.aggregates, "sum, mean, count, per_capita")->capture_default_str();
  cmd_make->add_option("--demographics", make.demographics, "Ground-truth columns to correlate (default: all numeric)");
  cmd_make->add_option("--population-column", c.population_column, "Population column for per_capita")
      ->capture_default_str();
  cmd_make->add_flag("--no-zip-pad", make.no_zip_pad, "Do not left-pad short all-digit keys to five digits");
  cmd_make->add_option("--target", c.target, "Column conditioned on");
  cmd_make->add_option("--target-values", make.target_values, "Comma-separated values of --target");
  cmd_make->add_option("--condition", c.condition, "Categorical column whose distribution is estimated");
  cmd_make->add_option("--alpha", c.alpha, "Symmetric Dirichlet prior")->capture_default_str();
  cmd_make->add_option("--seed", c.seed, "Monte Carlo seed")->capture_default_str();
  cmd_make->add_option("--mc-samples", c.mc_samples, "Posterior draws for intervals")->capture_default_str();
  cmd_make->add_option("--level", c.level, "Credible interval mass")->capture_default_str();
  cmd_make->add_option("--synthetic", c.synthetic, "Synthetic draws summarised in the label (0: none)");
  cmd_make->add_option("--missing-tokens", make.missing_tokens, "Comma-separated tokens read as missing");
  cmd_make->add_option("--delimiter", make.delimiter, "Field delimiter")->capture_default_str();
  cmd_make->add_option("--max-rows", c.max_rows, "Row limit")->capture_default_str();
  cmd_make->add_option("--pair-limit", c.pair_limit, "Most columns for all-pairs plots")->capture_default_str();
  cmd_make->add_option("--pair-bins", c.pair_bins, "Bins per numeric axis, 1 to 20")->capture_default_str();
  cmd_make->add_option("--pair", make.pairs, "Restrict pair plots to a,b (repeatable)");
  cmd_make->add_option("--timestamp", c.timestamp, "Pin generated_at, e.g. 2017-01-01T00:00:00Z");

  std::string validate_path;
  auto* cmd_validate = app.add_subcommand("validate", "Check a label against the schema");
  cmd_validate->add_option("label", validate_path, "Label JSON")->required();

  std::string inspect_path, inspect_module, inspect_pair;
  auto* cmd_inspect = app.add_subcommand("inspect", "Render one module of a label as text");
  cmd_inspect->add_option("label", inspect_path, "Label JSON")->required();
  cmd_inspect->add_option("--module,-m", inspect_module, "Module to render (default: list modules)");
  cmd_inspect->add_option("--pair", inspect_pair, "Pair plot cell a,b");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*cmd_make) return run_make(make);
    if (*cmd_validate) return run_validate(validate_path);
    if (*cmd_inspect) return run_inspect(inspect_path, inspect_module, inspect_pair);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitError;
}
