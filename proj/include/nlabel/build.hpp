#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nlabel/canonical_json.hpp"
#include "nlabel/error.hpp"
#include "nlabel/label.hpp"
#include "nlabel/text.hpp"

namespace nlabel {

// Fields a human still has to supply, as JSON paths into the label.
struct ActionList {
  std::vector<std::string> paths;
};

// Payloads computed from the data. `metadata` carries the automated fields
// (filename, format, type, rows, columns, missing); the rest are present
// when their module was requested.
struct AutoPayloads {
  MetadataPayload metadata;
  std::optional<StatisticsPayload> statistics;
  std::optional<PairPlotsPayload> pair_plots;
  std::optional<ProbabilisticPayload> probabilistic_model;
  std::optional<GroundTruthPayload> ground_truth_correlations;
};

struct BuildRequest {
  std::vector<std::string> modules;          // requested module names
  std::vector<std::string> dataset_columns;  // for the variables module
  std::string generated_at;
};

using BuildResult = std::variant<LabelDocument, ActionList>;

namespace detail {

// Manual input mirrors the label: {"modules": {"metadata": {...}, ...}}.
class ManualInput {
 public:
  explicit ManualInput(const Json& root) : root_(root) {
    if (!root_.is_object() && !root_.is_null()) throw ConfigError("manual input must be a JSON object");
    if (root_.is_object() && root_.contains("modules") && !root_["modules"].is_object())
      throw ConfigError("manual input: 'modules' must be an object");
  }

  // The object at modules.<name>, or nullptr.
  const Json* module(std::string_view name) const {
    if (!root_.is_object() || !root_.contains("modules")) return nullptr;
    const auto& m = root_["modules"];
    auto it = m.find(std::string(name));
    if (it == m.end()) return nullptr;
    if (!it->is_object()) throw ConfigError("manual input: modules." + std::string(name) + " must be an object");
    return &*it;
  }

 private:
  const Json& root_;
};

inline const Json* find(const Json* obj, std::string_view key) {
  if (!obj) return nullptr;
  auto it = obj->find(std::string(key));
  return it == obj->end() ? nullptr : &*it;
}

// Resolves a nullable string field: absent -> action; null -> nullopt.
inline std::optional<std::string> nullable_string(const Json* obj, std::string_view key, const std::string& path,
                                                  ActionList& actions) {
  const Json* v = find(obj, key);
  if (!v) {
    actions.paths.push_back(path);
    return std::nullopt;
  }
  if (v->is_null()) return std::nullopt;
  if (!v->is_string()) throw ConfigError("manual input: " + path + " must be a string or null");
  return v->get<std::string>();
}

inline std::string required_string(const Json* obj, std::string_view key, const std::string& path,
                                   ActionList& actions) {
  const Json* v = find(obj, key);
  if (v && !v->is_null() && !v->is_string()) throw ConfigError("manual input: " + path + " must be a string");
  if (!v || v->is_null() || text::trim(v->get<std::string>()).empty()) {
    actions.paths.push_back(path);
    return {};
  }
  return v->get<std::string>();
}

inline std::optional<std::string> optional_string(const Json* obj, std::string_view key, const std::string& path) {
  const Json* v = find(obj, key);
  if (!v || v->is_null()) return std::nullopt;
  if (!v->is_string()) throw ConfigError("manual input: " + path + " must be a string or null");
  return v->get<std::string>();
}

inline Contact contact(const Json* prov, std::string_view role, ActionList& actions) {
  const std::string base = "modules.provenance." + std::string(role);
  const Json* obj = find(prov, role);
  if (obj && !obj->is_object()) throw ConfigError("manual input: " + base + " must be an object");
  Contact c;
  c.name = required_string(obj, "name", base + ".name", actions);
  c.url = optional_string(obj, "url", base + ".url");
  c.email = optional_string(obj, "email", base + ".email");
  return c;
}

}  // namespace detail

// Merges automated payloads with manual input. Returns the label when every
// required manual field resolves; otherwise the list of unresolved paths.
// Manual metadata fields (url, domain, keywords, license, released, range,
// description) must be present, with null meaning "not applicable";
// description must be a non-empty string.
inline BuildResult build_label(const AutoPayloads& auto_payloads, const Json& manual_json, const BuildRequest& request) {
  for (const auto& m : request.modules)
    if (!is_module_name(m)) throw ConfigError("unknown module '" + m + "'");
  auto wants = [&](std::string_view name) {
    return name == "metadata" ||
           std::find(request.modules.begin(), request.modules.end(), name) != request.modules.end();
  };

  detail::ManualInput manual(manual_json);
  ActionList actions;
  LabelDocument doc;
  doc.generated_at = request.generated_at;

  // metadata
  const Json* meta = manual.module("metadata");
  doc.metadata = auto_payloads.metadata;
  if (auto v = detail::optional_string(meta, "filename", "modules.metadata.filename")) doc.metadata.filename = *v;
  if (auto v = detail::optional_string(meta, "format", "modules.metadata.format")) doc.metadata.format = *v;
  if (auto v = detail::optional_string(meta, "type", "modules.metadata.type")) doc.metadata.type = *v;
  doc.metadata.url = detail::nullable_string(meta, "url", "modules.metadata.url", actions);
  doc.metadata.domain = detail::nullable_string(meta, "domain", "modules.metadata.domain", actions);
  if (const Json* kw = detail::find(meta, "keywords")) {
    if (!kw->is_array() || !std::all_of(kw->begin(), kw->end(), [](const Json& k) { return k.is_string(); }))
      throw ConfigError("manual input: modules.metadata.keywords must be an array of strings");
    doc.metadata.keywords = kw->get<std::vector<std::string>>();
  } else {
    actions.paths.push_back("modules.metadata.keywords");
  }
  doc.metadata.license = detail::nullable_string(meta, "license", "modules.metadata.license", actions);
  doc.metadata.released = detail::nullable_string(meta, "released", "modules.metadata.released", actions);
  if (const Json* range = detail::find(meta, "range")) {
    if (!range->is_object()) throw ConfigError("manual input: modules.metadata.range must be an object");
    doc.metadata.range.from = detail::nullable_string(range, "from", "modules.metadata.range.from", actions);
    doc.metadata.range.to = detail::nullable_string(range, "to", "modules.metadata.range.to", actions);
  } else {
    actions.paths.push_back("modules.metadata.range");
  }
  doc.metadata.description = detail::required_string(meta, "description", "modules.metadata.description", actions);

  if (wants("provenance")) {
    const Json* prov = manual.module("provenance");
    doc.provenance = ProvenancePayload{detail::contact(prov, "source", actions), detail::contact(prov, "author", actions)};
  }

  if (wants("variables")) {
    const Json* vars = manual.module("variables");
    const Json* entries = detail::find(vars, "entries");
    if (entries && !entries->is_array()) throw ConfigError("manual input: modules.variables.entries must be an array");
    std::map<std::string, std::string> described;
    std::vector<std::string> unknown;
    if (entries) {
      for (const auto& e : *entries) {
        if (!e.is_object() || !e.contains("name") || !e["name"].is_string())
          throw ConfigError("manual input: every modules.variables.entries item needs a string 'name'");
        const auto name = e["name"].get<std::string>();
        if (described.count(name)) throw ConfigError("manual input: variable '" + name + "' is described twice");
        const Json* d = detail::find(&e, "description");
        if (d && !d->is_null() && !d->is_string())
          throw ConfigError("manual input: description of variable '" + name + "' must be a string");
        described[name] = d && d->is_string() ? d->get<std::string>() : "";
        if (std::find(request.dataset_columns.begin(), request.dataset_columns.end(), name) ==
            request.dataset_columns.end())
          unknown.push_back(name);
      }
    }
    if (!unknown.empty())
      throw ConfigError("manual input describes variables that are not dataset columns: " + text::join(unknown, ", "));
    VariablesPayload payload;
    for (const auto& col : request.dataset_columns) {
      auto it = described.find(col);
      if (it == described.end() || text::trim(it->second).empty())
        actions.paths.push_back("modules.variables.entries[name=" + col + "].description");
      else
        payload.entries.push_back({col, it->second});
    }
    doc.variables = std::move(payload);
  }

  if (wants("statistics")) {
    if (!auto_payloads.statistics) throw ConfigError("statistics requested but not computed");
    doc.statistics = auto_payloads.statistics;
  }
  if (wants("pair_plots")) {
    if (!auto_payloads.pair_plots) throw ConfigError("pair_plots requested but not computed");
    doc.pair_plots = auto_payloads.pair_plots;
  }
  if (wants("probabilistic_model")) {
    if (!auto_payloads.probabilistic_model) throw ConfigError("probabilistic_model requested but not computed");
    doc.probabilistic_model = auto_payloads.probabilistic_model;
  }
  if (wants("ground_truth_correlations")) {
    if (!auto_payloads.ground_truth_correlations)
      throw ConfigError("ground_truth_correlations requested but not computed");
    GroundTruthPayload gt = *auto_payloads.ground_truth_correlations;
    const Json* ref = detail::find(manual.module("ground_truth_correlations"), "reference");
    if (ref && !ref->is_object())
      throw ConfigError("manual input: modules.ground_truth_correlations.reference must be an object");
    ReferenceInfo info;
    info.name = detail::required_string(ref, "name", "modules.ground_truth_correlations.reference.name", actions);
    info.url = detail::optional_string(ref, "url", "modules.ground_truth_correlations.reference.url");
    for (auto& report : gt.reports) report.reference = info;
    doc.ground_truth_correlations = std::move(gt);
  }

  if (!actions.paths.empty()) return actions;
  return doc;
}

}  // namespace nlabel
