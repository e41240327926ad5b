#pragma once

#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nlabel/canonical_json.hpp"
#include "nlabel/label.hpp"

namespace nlabel {

struct Violation {
  std::string path;
  std::string rule;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

// Rule ids reported by validate().
namespace rule {
inline constexpr std::string_view malformed = "json.malformed";
inline constexpr std::string_view required = "required";
inline constexpr std::string_view type = "type";
inline constexpr std::string_view version = "schema.version";
inline constexpr std::string_view unknown_module = "module.unknown";
inline constexpr std::string_view enum_value = "enum";
inline constexpr std::string_view percent = "pattern.percent";
inline constexpr std::string_view probability_sum = "probability.sum";
inline constexpr std::string_view histogram_sum = "histogram.sum";
inline constexpr std::string_view pearson_range = "pearson.range";
}  // namespace rule

namespace detail {

enum class Want { object, array, string, number, uinteger, boolean, string_or_null, number_or_null, object_or_null };

inline bool matches(const Json& j, Want w) {
  switch (w) {
    case Want::object: return j.is_object();
    case Want::array: return j.is_array();
    case Want::string: return j.is_string();
    case Want::number: return j.is_number();
    case Want::uinteger:
      return j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0);
    case Want::boolean: return j.is_boolean();
    case Want::string_or_null: return j.is_null() || j.is_string();
    case Want::number_or_null: return j.is_null() || j.is_number();
    case Want::object_or_null: return j.is_null() || j.is_object();
  }
  return false;
}

inline std::string_view describe(Want w) {
  switch (w) {
    case Want::object: return "an object";
    case Want::array: return "an array";
    case Want::string: return "a string";
    case Want::number: return "a number";
    case Want::uinteger: return "a non-negative integer";
    case Want::boolean: return "a boolean";
    case Want::string_or_null: return "a string or null";
    case Want::number_or_null: return "a number or null";
    case Want::object_or_null: return "an object or null";
  }
  return "a value";
}

class Checker {
 public:
  explicit Checker(ValidationReport& report) : report_(report) {}

  // Paths are reported relative to the document root ("modules.metadata");
  // "$" alone names the root itself.
  void add(std::string path, std::string_view rule, std::string message) {
    if (path.rfind("$.", 0) == 0) path.erase(0, 2);
    report_.violations.push_back({std::move(path), std::string(rule), std::move(message)});
  }

  // The field if present with the wanted type; otherwise records a violation
  // and returns nullptr.
  const Json* field(const Json& obj, std::string_view key, const std::string& path, Want want) {
    const std::string p = path + "." + std::string(key);
    auto it = obj.find(std::string(key));
    if (it == obj.end()) {
      add(p, rule::required, "required field is missing");
      return nullptr;
    }
    if (!matches(*it, want)) {
      add(p, rule::type, "expected " + std::string(describe(want)));
      return nullptr;
    }
    return &*it;
  }

  bool is(const Json& j, const std::string& path, Want want) {
    if (matches(j, want)) return true;
    add(path, rule::type, "expected " + std::string(describe(want)));
    return false;
  }

  template <typename F>
  void each(const Json* arr, const std::string& path, Want want, F&& f) {
    if (!arr) return;
    for (std::size_t i = 0; i < arr->size(); ++i) {
      std::string p = path + "[" + std::to_string(i) + "]";
      if (is((*arr)[i], p, want)) f((*arr)[i], p);
    }
  }

  void one_of(const Json* j, const std::string& path, std::initializer_list<std::string_view> allowed) {
    if (!j) return;
    for (auto a : allowed)
      if (j->get<std::string>() == a) return;
    add(path, rule::enum_value, "unexpected value '" + j->get<std::string>() + "'");
  }

  void percent(const Json* j, const std::string& path, int decimals) {
    if (!j) return;
    static const std::regex one(R"(^\d+\.\d%$)");
    static const std::regex two(R"(^\d+\.\d\d%$)");
    if (!std::regex_match(j->get<std::string>(), decimals == 1 ? one : two))
      add(path, rule::percent,
          "'" + j->get<std::string>() + "' is not a " + std::to_string(decimals) + "-decimal percent string");
  }

  void pearson(const Json* j, const std::string& path) {
    if (!j || j->is_null()) return;
    double r = j->get<double>();
    if (!(r >= -1.0 && r <= 1.0)) add(path, rule::pearson_range, "correlation " + j->dump() + " lies outside [-1, 1]");
  }

 private:
  ValidationReport& report_;
};

inline void check_metadata(Checker& c, const Json& m, const std::string& p) {
  c.field(m, "filename", p, Want::string);
  c.field(m, "format", p, Want::string);
  c.field(m, "url", p, Want::string_or_null);
  c.field(m, "domain", p, Want::string_or_null);
  c.each(c.field(m, "keywords", p, Want::array), p + ".keywords", Want::string, [](auto&, auto&) {});
  c.field(m, "type", p, Want::string);
  c.field(m, "rows", p, Want::uinteger);
  c.field(m, "columns", p, Want::uinteger);
  c.percent(c.field(m, "missing_pct", p, Want::string), p + ".missing_pct", 1);
  c.field(m, "missing_fraction", p, Want::number);
  c.field(m, "license", p, Want::string_or_null);
  c.field(m, "released", p, Want::string_or_null);
  if (auto* range = c.field(m, "range", p, Want::object)) {
    c.field(*range, "from", p + ".range", Want::string_or_null);
    c.field(*range, "to", p + ".range", Want::string_or_null);
  }
  c.field(m, "description", p, Want::string_or_null);
}

inline void check_contact(Checker& c, const Json* j, const std::string& p) {
  if (!j || j->is_null()) return;
  if (auto* name = c.field(*j, "name", p, Want::string); name && name->get<std::string>().empty())
    c.add(p + ".name", rule::required, "contact name must not be empty");
  c.field(*j, "url", p, Want::string_or_null);
  c.field(*j, "email", p, Want::string_or_null);
}

inline void check_frequency(Checker& c, const Json* j, const std::string& p) {
  if (!j) return;
  c.one_of(c.field(*j, "kind", p, Want::string), p + ".kind", {"value", "missing_pseudo", "tie"});
  c.field(*j, "display", p, Want::string);
  c.field(*j, "value", p, Want::string_or_null);
  c.field(*j, "frequency", p, Want::number_or_null);
}

inline void check_statistics(Checker& c, const Json& s, const std::string& p) {
  auto categorical = [&](const Json& col, const std::string& cp) {
    c.field(col, "name", cp, Want::string);
    c.field(col, "type", cp, Want::string);
    c.field(col, "count", cp, Want::uinteger);
    c.field(col, "unique_entries", cp, Want::uinteger);
    c.field(col, "unique_includes_missing", cp, Want::boolean);
    check_frequency(c, c.field(col, "most_frequent", cp, Want::object), cp + ".most_frequent");
    check_frequency(c, c.field(col, "least_frequent", cp, Want::object), cp + ".least_frequent");
    c.field(col, "missing_count", cp, Want::uinteger);
    c.percent(c.field(col, "missing_pct", cp, Want::string), cp + ".missing_pct", 2);
    c.field(col, "missing_fraction", cp, Want::number);
  };
  auto numeric = [&](const Json& col, const std::string& cp) {
    c.field(col, "name", cp, Want::string);
    c.field(col, "type", cp, Want::string);
    c.field(col, "count", cp, Want::uinteger);
    for (auto key : {"min", "median", "max", "mean"}) c.field(col, key, cp, Want::number);
    c.field(col, "standard_deviation", cp, Want::number_or_null);
    c.field(col, "missing_count", cp, Want::uinteger);
    c.percent(c.field(col, "missing_pct", cp, Want::string), cp + ".missing_pct", 2);
    c.field(col, "missing_fraction", cp, Want::number);
    c.field(col, "zeros_count", cp, Want::uinteger);
    c.percent(c.field(col, "zeros_pct", cp, Want::string), cp + ".zeros_pct", 2);
  };
  c.each(c.field(s, "ordinal", p, Want::array), p + ".ordinal", Want::object, categorical);
  c.each(c.field(s, "nominal", p, Want::array), p + ".nominal", Want::object, categorical);
  c.each(c.field(s, "continuous", p, Want::array), p + ".continuous", Want::object, numeric);
  c.each(c.field(s, "discrete", p, Want::array), p + ".discrete", Want::object, numeric);
}

inline std::size_t sum_counts(const Json& arr) {
  std::size_t total = 0;
  for (const auto& v : arr)
    if (matches(v, Want::uinteger)) total += v.get<std::size_t>();
  return total;
}

inline void check_pair_plots(Checker& c, const Json& pp, const std::string& p) {
  c.field(pp, "max_bins", p, Want::uinteger);
  c.each(c.field(pp, "histograms", p, Want::array), p + ".histograms", Want::object,
         [&](const Json& h, const std::string& hp) {
           c.field(h, "column", hp, Want::string);
           c.one_of(c.field(h, "kind", hp, Want::string), hp + ".kind", {"numeric", "categorical"});
           auto* counts = c.field(h, "counts", hp, Want::array);
           auto* other = c.field(h, "other_count", hp, Want::uinteger);
           c.field(h, "missing_count", hp, Want::uinteger);
           auto* non_missing = c.field(h, "non_missing_count", hp, Want::uinteger);
           if (counts && other && non_missing) {
             std::size_t total = sum_counts(*counts) + other->get<std::size_t>();
             if (total != non_missing->get<std::size_t>())
               c.add(hp + ".counts", rule::histogram_sum,
                     "bin counts plus other_count total " + std::to_string(total) + ", expected non_missing_count " +
                         std::to_string(non_missing->get<std::size_t>()));
           }
         });
  c.each(c.field(pp, "cells", p, Want::array), p + ".cells", Want::object, [&](const Json& cell, const std::string& cp) {
    c.field(cell, "column_a", cp, Want::string);
    c.field(cell, "column_b", cp, Want::string);
    auto* kind = c.field(cell, "kind", cp, Want::string);
    c.one_of(kind, cp + ".kind", {"cont_cont", "cat_cat", "cat_cont"});
    c.field(cell, "complete_rows", cp, Want::uinteger);
    c.field(cell, "excluded_rows", cp, Want::uinteger);
    auto* payload = c.field(cell, "payload", cp, Want::object);
    if (!payload || !kind) return;
    const std::string pl = cp + ".payload";
    const auto k = kind->get<std::string>();
    if (k == "cont_cont") {
      c.field(*payload, "x_edges", pl, Want::array);
      c.field(*payload, "y_edges", pl, Want::array);
      c.field(*payload, "counts", pl, Want::array);
      c.pearson(c.field(*payload, "pearson_r", pl, Want::number_or_null), pl + ".pearson_r");
    } else if (k == "cat_cat") {
      c.field(*payload, "a_categories", pl, Want::array);
      c.field(*payload, "b_categories", pl, Want::array);
      c.field(*payload, "counts", pl, Want::array);
    } else if (k == "cat_cont") {
      c.field(*payload, "category_column", pl, Want::string);
      c.field(*payload, "value_column", pl, Want::string);
      c.field(*payload, "categories", pl, Want::array);
      c.field(*payload, "other", pl, Want::object_or_null);
    }
  });
  c.field(pp, "skipped", p, Want::array);
}

inline void check_probabilistic(Checker& c, const Json& pm, const std::string& p) {
  c.each(c.field(pm, "posteriors", p, Want::array), p + ".posteriors", Want::object,
         [&](const Json& d, const std::string& dp) {
           c.field(d, "target_column", dp, Want::string);
           c.field(d, "target_value", dp, Want::string);
           c.field(d, "condition_column", dp, Want::string);
           c.field(d, "alpha", dp, Want::number);
           c.field(d, "level", dp, Want::number);
           c.field(d, "seed", dp, Want::uinteger);
           c.field(d, "mc_samples", dp, Want::uinteger);
           auto* support = c.field(d, "support", dp, Want::array);
           c.field(d, "counts", dp, Want::array);
           c.field(d, "intervals", dp, Want::array);
           auto* estimates = c.field(d, "point_estimates", dp, Want::array);
           if (!estimates) return;
           double total = 0.0;
           for (std::size_t i = 0; i < estimates->size(); ++i) {
             const auto& v = (*estimates)[i];
             if (!c.is(v, dp + ".point_estimates[" + std::to_string(i) + "]", Want::number)) return;
             total += v.get<double>();
           }
           if (support && support->size() != estimates->size())
             c.add(dp + ".point_estimates", rule::type, "length differs from support");
           if (std::fabs(total - 1.0) > 1e-6)
             c.add(dp + ".point_estimates", rule::probability_sum,
                   "probabilities sum to " + canonical_number(total) + ", expected 1 within 1e-6");
         });
}

inline void check_ground_truth(Checker& c, const Json& gt, const std::string& p) {
  c.each(c.field(gt, "reports", p, Want::array), p + ".reports", Want::object, [&](const Json& r, const std::string& rp) {
    c.one_of(c.field(r, "aggregate", rp, Want::string), rp + ".aggregate", {"sum", "mean", "count", "per_capita"});
    c.field(r, "value_column", rp, Want::string);
    c.field(r, "key_column", rp, Want::string);
    c.field(r, "reference", rp, Want::object_or_null);
    for (auto key : {"joined_keys", "unmatched_dataset_keys", "unmatched_ground_truth_keys", "excluded_rows"})
      c.field(r, key, rp, Want::uinteger);
    c.each(c.field(r, "entries", rp, Want::array), rp + ".entries", Want::object, [&](const Json& e, const std::string& ep) {
      c.field(e, "demographic", ep, Want::string);
      c.pearson(c.field(e, "r", ep, Want::number_or_null), ep + ".r");
    });
    c.field(r, "positive", rp, Want::array);
    c.field(r, "negative", rp, Want::array);
  });
}

}  // namespace detail

// Checks a label document; every problem becomes a report entry, never an
// exception.
inline ValidationReport validate(std::string_view document) {
  using detail::Want;
  ValidationReport report;
  detail::Checker c(report);
  Json j;
  try {
    j = Json::parse(document);
  } catch (const Json::parse_error& e) {
    c.add("$", rule::malformed, e.what());
    return report;
  }
  if (!c.is(j, "$", Want::object)) return report;

  if (auto* v = c.field(j, "schema_version", "$", Want::string)) {
    const auto s = v->get<std::string>();
    static const std::regex semver(R"(^(\d+)\.(\d+)\.(\d+)$)");
    std::smatch m;
    if (!std::regex_match(s, m, semver) || std::stoi(m[1].str()) != kSchemaMajor)
      c.add("$.schema_version", rule::version,
            "unsupported schema version '" + s + "' (supported: " + std::to_string(kSchemaMajor) + ".x.y)");
  }
  c.field(j, "generated_at", "$", Want::string);
  if (auto* g = c.field(j, "generator", "$", Want::object)) {
    c.field(*g, "name", "$.generator", Want::string);
    c.field(*g, "version", "$.generator", Want::string);
  }
  auto* modules = c.field(j, "modules", "$", Want::object);
  if (!modules) return report;
  const std::string mp = "$.modules";
  for (auto it = modules->begin(); it != modules->end(); ++it)
    if (!is_module_name(it.key())) c.add(mp + "." + it.key(), rule::unknown_module, "not a known module name");

  if (auto it = modules->find("metadata"); it == modules->end())
    c.add(mp + ".metadata", rule::required, "the metadata module is required");
  else if (c.is(*it, mp + ".metadata", Want::object))
    detail::check_metadata(c, *it, mp + ".metadata");

  auto module = [&](std::string_view name) -> const Json* {
    auto it = modules->find(std::string(name));
    if (it == modules->end()) return nullptr;
    return c.is(*it, mp + "." + std::string(name), Want::object) ? &*it : nullptr;
  };
  if (auto* prov = module("provenance")) {
    detail::check_contact(c, c.field(*prov, "source", mp + ".provenance", Want::object_or_null), mp + ".provenance.source");
    detail::check_contact(c, c.field(*prov, "author", mp + ".provenance", Want::object_or_null), mp + ".provenance.author");
  }
  if (auto* vars = module("variables")) {
    std::set<std::string> seen;
    c.each(c.field(*vars, "entries", mp + ".variables", Want::array), mp + ".variables.entries", Want::object,
           [&](const Json& e, const std::string& ep) {
             if (auto* name = c.field(e, "name", ep, Want::string); name && !seen.insert(name->get<std::string>()).second)
               c.add(ep + ".name", rule::enum_value, "duplicate variable '" + name->get<std::string>() + "'");
             c.field(e, "description", ep, Want::string);
           });
  }
  if (auto* s = module("statistics")) detail::check_statistics(c, *s, mp + ".statistics");
  if (auto* pp = module("pair_plots")) detail::check_pair_plots(c, *pp, mp + ".pair_plots");
  if (auto* pm = module("probabilistic_model")) detail::check_probabilistic(c, *pm, mp + ".probabilistic_model");
  if (auto* gt = module("ground_truth_correlations")) detail::check_ground_truth(c, *gt, mp + ".ground_truth_correlations");
  return report;
}

}  // namespace nlabel
