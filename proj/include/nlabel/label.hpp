#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlabel/canonical_json.hpp"
#include "nlabel/error.hpp"
#include "nlabel/ground_truth.hpp"
#include "nlabel/pair_plots.hpp"
#include "nlabel/prob_model.hpp"
#include "nlabel/stats.hpp"

namespace nlabel {

inline constexpr std::string_view kSchemaVersion = "1.0.0";
inline constexpr int kSchemaMajor = 1;
inline constexpr std::string_view kGeneratorName = "nlabel";
inline constexpr std::string_view kGeneratorVersion = "1.0.0";

// Module names in canonical order. Only metadata is required.
inline constexpr std::array<std::string_view, 7> kModuleNames{
    "metadata", "provenance", "variables", "statistics", "pair_plots", "probabilistic_model",
    "ground_truth_correlations"};

inline bool is_module_name(std::string_view name) {
  for (auto m : kModuleNames)
    if (m == name) return true;
  return false;
}

struct DateRange {
  std::optional<std::string> from;
  std::optional<std::string> to;

  friend bool operator==(const DateRange&, const DateRange&) = default;
};

struct MetadataPayload {
  std::string filename;
  std::string format = "csv";
  std::optional<std::string> url;
  std::optional<std::string> domain;
  std::vector<std::string> keywords;
  std::string type = "tabular";
  std::size_t rows = 0;
  std::size_t columns = 0;
  std::string missing_pct = "0.0%";
  double missing_fraction = 0.0;
  std::optional<std::string> license;
  std::optional<std::string> released;  // free-form, e.g. "JAN 2017"
  DateRange range;
  std::optional<std::string> description;

  friend bool operator==(const MetadataPayload&, const MetadataPayload&) = default;
};

struct Contact {
  std::string name;
  std::optional<std::string> url;
  std::optional<std::string> email;

  friend bool operator==(const Contact&, const Contact&) = default;
};

struct ProvenancePayload {
  std::optional<Contact> source;
  std::optional<Contact> author;

  friend bool operator==(const ProvenancePayload&, const ProvenancePayload&) = default;
};

struct VariableEntry {
  std::string name;
  std::string description;

  friend bool operator==(const VariableEntry&, const VariableEntry&) = default;
};

struct VariablesPayload {
  std::vector<VariableEntry> entries;

  friend bool operator==(const VariablesPayload&, const VariablesPayload&) = default;
};

struct Generator {
  std::string name{kGeneratorName};
  std::string version{kGeneratorVersion};

  friend bool operator==(const Generator&, const Generator&) = default;
};

struct LabelDocument {
  std::string schema_version{kSchemaVersion};
  std::string generated_at;
  Generator generator;
  MetadataPayload metadata;
  std::optional<ProvenancePayload> provenance;
  std::optional<VariablesPayload> variables;
  std::optional<StatisticsPayload> statistics;
  std::optional<PairPlotsPayload> pair_plots;
  std::optional<ProbabilisticPayload> probabilistic_model;
  std::optional<GroundTruthPayload> ground_truth_correlations;

  std::size_t module_count() const {
    return 1 + provenance.has_value() + variables.has_value() + statistics.has_value() + pair_plots.has_value() +
           probabilistic_model.has_value() + ground_truth_correlations.has_value();
  }

  friend bool operator==(const LabelDocument&, const LabelDocument&) = default;
};

// ---------------------------------------------------------------------------
// JSON encoding. Key order below is the canonical order.

namespace json_io {

template <typename T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

inline Json number(double x) { return Json(x); }

inline Json encode(const FrequencyCell& c) {
  Json j;
  j["kind"] = to_string(c.kind);
  j["display"] = c.display;
  j["value"] = opt(c.value);
  j["frequency"] = opt(c.frequency);
  return j;
}

inline Json encode(const CategoricalProfile& p) {
  Json j;
  j["name"] = p.name;
  j["type"] = to_string(p.subtype);
  j["origin"] = to_string(p.origin);
  j["count"] = p.count;
  j["unique_entries"] = p.unique_entries;
  j["unique_includes_missing"] = p.unique_includes_missing;
  j["most_frequent"] = encode(p.most_frequent);
  j["least_frequent"] = encode(p.least_frequent);
  j["missing_count"] = p.missing_count;
  j["missing_pct"] = p.missing_pct;
  j["missing_fraction"] = number(p.missing_fraction);
  return j;
}

inline Json encode(const NumericProfile& p) {
  Json j;
  j["name"] = p.name;
  j["type"] = to_string(p.subtype);
  j["origin"] = to_string(p.origin);
  j["count"] = p.count;
  j["min"] = number(p.min);
  j["median"] = number(p.median);
  j["max"] = number(p.max);
  j["mean"] = number(p.mean);
  j["standard_deviation"] = p.standard_deviation ? number(*p.standard_deviation) : Json(nullptr);
  j["missing_count"] = p.missing_count;
  j["missing_pct"] = p.missing_pct;
  j["missing_fraction"] = number(p.missing_fraction);
  j["zeros_count"] = p.zeros_count;
  j["zeros_pct"] = p.zeros_pct;
  return j;
}

inline Json encode(const Histogram& h);
inline Json encode(const CategoryAggregate& a);
inline Json encode(const PairPlotCell& c);
inline Json encode(const SkippedPair& s);
inline Json encode(const PosteriorDistribution& d);
inline Json encode(const CorrelationEntry& e);
inline Json encode(const CorrelationReport& r);
inline Json encode(const VariableEntry& e);

template <typename T>
Json encode_list(const std::vector<T>& items) {
  Json j = Json::array();
  for (const auto& item : items) j.push_back(encode(item));
  return j;
}

inline Json encode(const StatisticsPayload& s) {
  Json j;
  j["ordinal"] = encode_list(s.ordinal);
  j["nominal"] = encode_list(s.nominal);
  j["continuous"] = encode_list(s.continuous);
  j["discrete"] = encode_list(s.discrete);
  return j;
}

inline Json doubles(const std::vector<double>& xs) {
  Json j = Json::array();
  for (double x : xs) j.push_back(number(x));
  return j;
}

inline Json encode(const Histogram& h) {
  Json j;
  j["column"] = h.column;
  j["kind"] = h.numeric ? "numeric" : "categorical";
  if (h.numeric)
    j["bin_edges"] = doubles(h.bin_edges);
  else
    j["categories"] = h.categories;
  j["counts"] = h.counts;
  j["other_count"] = h.other_count;
  j["missing_count"] = h.missing_count;
  j["non_missing_count"] = h.non_missing_count;
  return j;
}

inline Json encode(const CategoryAggregate& a) {
  Json j;
  j["category"] = a.category;
  j["count"] = a.count;
  j["sum"] = number(a.sum);
  j["mean"] = number(a.mean);
  return j;
}

inline Json encode_payload(const JointBins& b) {
  Json j;
  j["x_edges"] = doubles(b.x_edges);
  j["y_edges"] = doubles(b.y_edges);
  j["counts"] = b.counts;
  j["pearson_r"] = b.pearson_r ? number(*b.pearson_r) : Json(nullptr);
  return j;
}

inline Json encode_payload(const Contingency& c) {
  Json j;
  j["a_categories"] = c.a_categories;
  j["b_categories"] = c.b_categories;
  j["a_other"] = c.a_other;
  j["b_other"] = c.b_other;
  j["counts"] = c.counts;
  return j;
}

inline Json encode_payload(const CategoryMeans& m) {
  Json j;
  j["category_column"] = m.category_column;
  j["value_column"] = m.value_column;
  j["categories"] = encode_list(m.categories);
  j["other"] = m.other ? encode(*m.other) : Json(nullptr);
  return j;
}

inline Json encode(const PairPlotCell& c) {
  Json j;
  j["column_a"] = c.column_a;
  j["column_b"] = c.column_b;
  j["kind"] = to_string(c.kind);
  j["complete_rows"] = c.complete_rows;
  j["excluded_rows"] = c.excluded_rows;
  j["payload"] = std::visit([](const auto& p) { return encode_payload(p); }, c.payload);
  return j;
}

inline Json encode(const SkippedPair& s) {
  Json j;
  j["column_a"] = s.column_a;
  j["column_b"] = s.column_b;
  j["reason"] = s.reason;
  return j;
}

inline Json encode(const PairPlotsPayload& p) {
  Json j;
  j["max_bins"] = p.max_bins;
  j["histograms"] = encode_list(p.histograms);
  j["cells"] = encode_list(p.cells);
  j["skipped"] = encode_list(p.skipped);
  return j;
}

inline Json encode(const PosteriorDistribution& d) {
  Json j;
  j["target_column"] = d.target_column;
  j["target_value"] = d.target_value;
  j["condition_column"] = d.condition_column;
  j["alpha"] = number(d.alpha);
  j["level"] = number(d.level);
  j["seed"] = d.seed;
  j["mc_samples"] = d.mc_samples;
  j["support"] = d.support;
  j["counts"] = d.counts;
  j["point_estimates"] = doubles(quantize_simplex(d.point_estimates));
  Json intervals = Json::array();
  for (const auto& iv : d.intervals) intervals.push_back(Json::array({number(iv.lo), number(iv.hi)}));
  j["intervals"] = std::move(intervals);
  if (d.synthetic) {
    Json s;
    s["size"] = d.synthetic->size;
    s["seed"] = d.synthetic->seed;
    s["counts"] = d.synthetic->counts;
    j["synthetic"] = std::move(s);
  }
  return j;
}

inline Json encode(const ProbabilisticPayload& p) {
  Json j;
  j["posteriors"] = encode_list(p.posteriors);
  return j;
}

inline Json encode(const CorrelationEntry& e) {
  Json j;
  j["demographic"] = e.demographic;
  j["r"] = e.r ? number(*e.r) : Json(nullptr);
  return j;
}

inline Json encode(const CorrelationReport& r) {
  Json j;
  j["aggregate"] = to_string(r.aggregate);
  j["value_column"] = r.value_column;
  j["key_column"] = r.key_column;
  if (r.reference) {
    Json ref;
    ref["name"] = r.reference->name;
    ref["url"] = opt(r.reference->url);
    j["reference"] = std::move(ref);
  } else {
    j["reference"] = nullptr;
  }
  j["joined_keys"] = r.joined_keys;
  j["unmatched_dataset_keys"] = r.unmatched_dataset_keys;
  j["unmatched_ground_truth_keys"] = r.unmatched_ground_truth_keys;
  j["excluded_rows"] = r.excluded_rows;
  j["entries"] = encode_list(r.entries);
  j["positive"] = r.positive;
  j["negative"] = r.negative;
  return j;
}

inline Json encode(const GroundTruthPayload& p) {
  Json j;
  j["reports"] = encode_list(p.reports);
  return j;
}

inline Json encode(const MetadataPayload& m) {
  Json j;
  j["filename"] = m.filename;
  j["format"] = m.format;
  j["url"] = opt(m.url);
  j["domain"] = opt(m.domain);
  j["keywords"] = m.keywords;
  j["type"] = m.type;
  j["rows"] = m.rows;
  j["columns"] = m.columns;
  j["missing_pct"] = m.missing_pct;
  j["missing_fraction"] = number(m.missing_fraction);
  j["license"] = opt(m.license);
  j["released"] = opt(m.released);
  Json range;
  range["from"] = opt(m.range.from);
  range["to"] = opt(m.range.to);
  j["range"] = std::move(range);
  j["description"] = opt(m.description);
  return j;
}

inline Json encode(const Contact& c) {
  Json j;
  j["name"] = c.name;
  j["url"] = opt(c.url);
  j["email"] = opt(c.email);
  return j;
}

inline Json encode(const ProvenancePayload& p) {
  Json j;
  j["source"] = p.source ? encode(*p.source) : Json(nullptr);
  j["author"] = p.author ? encode(*p.author) : Json(nullptr);
  return j;
}

inline Json encode(const VariableEntry& e) {
  Json j;
  j["name"] = e.name;
  j["description"] = e.description;
  return j;
}

inline Json encode(const VariablesPayload& v) {
  Json j;
  j["entries"] = encode_list(v.entries);
  return j;
}

inline Json encode(const LabelDocument& doc) {
  Json j;
  j["schema_version"] = doc.schema_version;
  j["generated_at"] = doc.generated_at;
  Json gen;
  gen["name"] = doc.generator.name;
  gen["version"] = doc.generator.version;
  j["generator"] = std::move(gen);
  Json modules;
  modules["metadata"] = encode(doc.metadata);
  if (doc.provenance) modules["provenance"] = encode(*doc.provenance);
  if (doc.variables) modules["variables"] = encode(*doc.variables);
  if (doc.statistics) modules["statistics"] = encode(*doc.statistics);
  if (doc.pair_plots) modules["pair_plots"] = encode(*doc.pair_plots);
  if (doc.probabilistic_model) modules["probabilistic_model"] = encode(*doc.probabilistic_model);
  if (doc.ground_truth_correlations) modules["ground_truth_correlations"] = encode(*doc.ground_truth_correlations);
  j["modules"] = std::move(modules);
  return j;
}

// ---------------------------------------------------------------------------
// Decoding. Shape errors throw Error with the offending path; run validate()
// first for a full report.

class Reader {
 public:
  Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {}

  const Json& json() const { return j_; }
  const std::string& path() const { return path_; }

  Reader at(std::string_view key) const {
    if (!j_.is_object()) fail("expected an object");
    auto it = j_.find(std::string(key));
    if (it == j_.end()) throw Error(path_ + "." + std::string(key) + ": required field is missing");
    return Reader(*it, path_ + "." + std::string(key));
  }
  Reader at(std::size_t i) const {
    if (!j_.is_array() || i >= j_.size()) fail("index out of range");
    return Reader(j_[i], path_ + "[" + std::to_string(i) + "]");
  }
  bool has(std::string_view key) const { return j_.is_object() && j_.contains(std::string(key)); }
  bool is_null() const { return j_.is_null(); }
  std::size_t size() const {
    if (!j_.is_array()) fail("expected an array");
    return j_.size();
  }

  std::string str() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }
  std::optional<std::string> opt_str() const { return is_null() ? std::nullopt : std::optional(str()); }
  double num() const {
    if (!j_.is_number()) fail("expected a number");
    return j_.get<double>();
  }
  std::optional<double> opt_num() const { return is_null() ? std::nullopt : std::optional(num()); }
  std::uint64_t uint() const {
    if (!j_.is_number_unsigned() && !(j_.is_number_integer() && j_.get<std::int64_t>() >= 0))
      fail("expected a non-negative integer");
    return j_.get<std::uint64_t>();
  }
  std::size_t size_value() const { return static_cast<std::size_t>(uint()); }
  bool boolean() const {
    if (!j_.is_boolean()) fail("expected a boolean");
    return j_.get<bool>();
  }

  template <typename F>
  auto list(F&& decode) const {
    std::vector<decltype(decode(std::declval<Reader>()))> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(decode(at(i)));
    return out;
  }
  std::vector<std::string> strings() const {
    return list([](const Reader& r) { return r.str(); });
  }
  std::vector<double> numbers() const {
    return list([](const Reader& r) { return r.num(); });
  }
  std::vector<std::size_t> sizes() const {
    return list([](const Reader& r) { return r.size_value(); });
  }

  [[noreturn]] void fail(const std::string& what) const { throw Error(path_ + ": " + what); }

 private:
  const Json& j_;
  std::string path_;
};

template <typename E>
E parse_enum(const Reader& r, std::optional<E> (*parse)(std::string_view)) {
  auto v = parse(r.str());
  if (!v) r.fail("unknown value '" + r.str() + "'");
  return *v;
}

inline std::optional<Origin> parse_origin(std::string_view s) {
  if (s == "inferred") return Origin::inferred;
  if (s == "override") return Origin::override;
  return std::nullopt;
}

inline std::optional<FrequencyCell::Kind> parse_frequency_kind(std::string_view s) {
  if (s == "value") return FrequencyCell::Kind::value;
  if (s == "missing_pseudo") return FrequencyCell::Kind::missing_pseudo;
  if (s == "tie") return FrequencyCell::Kind::tie;
  return std::nullopt;
}

inline std::optional<PairKind> parse_pair_kind(std::string_view s) {
  for (PairKind k : {PairKind::cont_cont, PairKind::cat_cat, PairKind::cat_cont})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

inline FrequencyCell decode_frequency(const Reader& r) {
  FrequencyCell c;
  c.kind = parse_enum(r.at("kind"), parse_frequency_kind);
  c.display = r.at("display").str();
  c.value = r.at("value").opt_str();
  auto f = r.at("frequency");
  if (!f.is_null()) c.frequency = f.size_value();
  return c;
}

inline CategoricalProfile decode_categorical(const Reader& r) {
  CategoricalProfile p;
  p.name = r.at("name").str();
  p.subtype = parse_enum(r.at("type"), parse_subtype);
  p.origin = parse_enum(r.at("origin"), parse_origin);
  p.count = r.at("count").size_value();
  p.unique_entries = r.at("unique_entries").size_value();
  p.unique_includes_missing = r.at("unique_includes_missing").boolean();
  p.most_frequent = decode_frequency(r.at("most_frequent"));
  p.least_frequent = decode_frequency(r.at("least_frequent"));
  p.missing_count = r.at("missing_count").size_value();
  p.missing_pct = r.at("missing_pct").str();
  p.missing_fraction = r.at("missing_fraction").num();
  return p;
}

inline NumericProfile decode_numeric(const Reader& r) {
  NumericProfile p;
  p.name = r.at("name").str();
  p.subtype = parse_enum(r.at("type"), parse_subtype);
  p.origin = parse_enum(r.at("origin"), parse_origin);
  p.count = r.at("count").size_value();
  p.min = r.at("min").num();
  p.median = r.at("median").num();
  p.max = r.at("max").num();
  p.mean = r.at("mean").num();
  p.standard_deviation = r.at("standard_deviation").opt_num();
  p.missing_count = r.at("missing_count").size_value();
  p.missing_pct = r.at("missing_pct").str();
  p.missing_fraction = r.at("missing_fraction").num();
  p.zeros_count = r.at("zeros_count").size_value();
  p.zeros_pct = r.at("zeros_pct").str();
  return p;
}

inline StatisticsPayload decode_statistics(const Reader& r) {
  StatisticsPayload s;
  s.ordinal = r.at("ordinal").list(decode_categorical);
  s.nominal = r.at("nominal").list(decode_categorical);
  s.continuous = r.at("continuous").list(decode_numeric);
  s.discrete = r.at("discrete").list(decode_numeric);
  return s;
}

inline std::vector<std::vector<std::size_t>> decode_matrix(const Reader& r) {
  return r.list([](const Reader& row) { return row.sizes(); });
}

inline Histogram decode_histogram(const Reader& r) {
  Histogram h;
  h.column = r.at("column").str();
  auto kind = r.at("kind").str();
  if (kind != "numeric" && kind != "categorical") r.at("kind").fail("unknown histogram kind");
  h.numeric = kind == "numeric";
  if (h.numeric)
    h.bin_edges = r.at("bin_edges").numbers();
  else
    h.categories = r.at("categories").strings();
  h.counts = r.at("counts").sizes();
  h.other_count = r.at("other_count").size_value();
  h.missing_count = r.at("missing_count").size_value();
  h.non_missing_count = r.at("non_missing_count").size_value();
  return h;
}

inline CategoryAggregate decode_category_aggregate(const Reader& r) {
  return {r.at("category").str(), r.at("count").size_value(), r.at("sum").num(), r.at("mean").num()};
}

inline PairPlotCell decode_cell(const Reader& r) {
  PairPlotCell c;
  c.column_a = r.at("column_a").str();
  c.column_b = r.at("column_b").str();
  c.kind = parse_enum(r.at("kind"), parse_pair_kind);
  c.complete_rows = r.at("complete_rows").size_value();
  c.excluded_rows = r.at("excluded_rows").size_value();
  auto p = r.at("payload");
  switch (c.kind) {
    case PairKind::cont_cont: {
      JointBins b;
      b.x_edges = p.at("x_edges").numbers();
      b.y_edges = p.at("y_edges").numbers();
      b.counts = decode_matrix(p.at("counts"));
      b.pearson_r = p.at("pearson_r").opt_num();
      c.payload = std::move(b);
      break;
    }
    case PairKind::cat_cat: {
      Contingency t;
      t.a_categories = p.at("a_categories").strings();
      t.b_categories = p.at("b_categories").strings();
      t.a_other = p.at("a_other").boolean();
      t.b_other = p.at("b_other").boolean();
      t.counts = decode_matrix(p.at("counts"));
      c.payload = std::move(t);
      break;
    }
    case PairKind::cat_cont: {
      CategoryMeans m;
      m.category_column = p.at("category_column").str();
      m.value_column = p.at("value_column").str();
      m.categories = p.at("categories").list(decode_category_aggregate);
      auto other = p.at("other");
      if (!other.is_null()) m.other = decode_category_aggregate(other);
      c.payload = std::move(m);
      break;
    }
  }
  return c;
}

inline PairPlotsPayload decode_pair_plots(const Reader& r) {
  PairPlotsPayload p;
  p.max_bins = r.at("max_bins").size_value();
  p.histograms = r.at("histograms").list(decode_histogram);
  p.cells = r.at("cells").list(decode_cell);
  p.skipped = r.at("skipped").list([](const Reader& s) {
    return SkippedPair{s.at("column_a").str(), s.at("column_b").str(), s.at("reason").str()};
  });
  return p;
}

inline PosteriorDistribution decode_posterior(const Reader& r) {
  PosteriorDistribution d;
  d.target_column = r.at("target_column").str();
  d.target_value = r.at("target_value").str();
  d.condition_column = r.at("condition_column").str();
  d.alpha = r.at("alpha").num();
  d.level = r.at("level").num();
  d.seed = r.at("seed").uint();
  d.mc_samples = r.at("mc_samples").size_value();
  d.support = r.at("support").strings();
  d.counts = r.at("counts").sizes();
  d.point_estimates = r.at("point_estimates").numbers();
  d.intervals = r.at("intervals").list([](const Reader& iv) {
    if (iv.size() != 2) iv.fail("expected [lo, hi]");
    return CredibleInterval{iv.at(std::size_t{0}).num(), iv.at(std::size_t{1}).num()};
  });
  if (r.has("synthetic")) {
    auto s = r.at("synthetic");
    d.synthetic = SyntheticSummary{s.at("size").size_value(), s.at("seed").uint(), s.at("counts").sizes()};
  }
  return d;
}

inline CorrelationReport decode_report(const Reader& r) {
  CorrelationReport rep;
  rep.aggregate = parse_enum(r.at("aggregate"), parse_aggregate);
  rep.value_column = r.at("value_column").str();
  rep.key_column = r.at("key_column").str();
  auto ref = r.at("reference");
  if (!ref.is_null()) rep.reference = ReferenceInfo{ref.at("name").str(), ref.at("url").opt_str()};
  rep.joined_keys = r.at("joined_keys").size_value();
  rep.unmatched_dataset_keys = r.at("unmatched_dataset_keys").size_value();
  rep.unmatched_ground_truth_keys = r.at("unmatched_ground_truth_keys").size_value();
  rep.excluded_rows = r.at("excluded_rows").size_value();
  rep.entries = r.at("entries").list([](const Reader& e) {
    return CorrelationEntry{e.at("demographic").str(), e.at("r").opt_num()};
  });
  rep.positive = r.at("positive").strings();
  rep.negative = r.at("negative").strings();
  return rep;
}

inline Contact decode_contact(const Reader& r) {
  return {r.at("name").str(), r.at("url").opt_str(), r.at("email").opt_str()};
}

inline MetadataPayload decode_metadata(const Reader& r) {
  MetadataPayload m;
  m.filename = r.at("filename").str();
  m.format = r.at("format").str();
  m.url = r.at("url").opt_str();
  m.domain = r.at("domain").opt_str();
  m.keywords = r.at("keywords").strings();
  m.type = r.at("type").str();
  m.rows = r.at("rows").size_value();
  m.columns = r.at("columns").size_value();
  m.missing_pct = r.at("missing_pct").str();
  m.missing_fraction = r.at("missing_fraction").num();
  m.license = r.at("license").opt_str();
  m.released = r.at("released").opt_str();
  auto range = r.at("range");
  m.range.from = range.at("from").opt_str();
  m.range.to = range.at("to").opt_str();
  m.description = r.at("description").opt_str();
  return m;
}

inline LabelDocument decode(const Json& j) {
  Reader root(j, "$");
  LabelDocument doc;
  doc.schema_version = root.at("schema_version").str();
  doc.generated_at = root.at("generated_at").str();
  doc.generator.name = root.at("generator").at("name").str();
  doc.generator.version = root.at("generator").at("version").str();
  auto modules = root.at("modules");
  for (auto it = modules.json().begin(); it != modules.json().end(); ++it)
    if (!is_module_name(it.key())) throw Error("$.modules." + it.key() + ": unknown module");
  doc.metadata = decode_metadata(modules.at("metadata"));
  if (modules.has("provenance")) {
    auto p = modules.at("provenance");
    ProvenancePayload prov;
    if (!p.at("source").is_null()) prov.source = decode_contact(p.at("source"));
    if (!p.at("author").is_null()) prov.author = decode_contact(p.at("author"));
    doc.provenance = prov;
  }
  if (modules.has("variables"))
    doc.variables = VariablesPayload{modules.at("variables").at("entries").list([](const Reader& e) {
      return VariableEntry{e.at("name").str(), e.at("description").str()};
    })};
  if (modules.has("statistics")) doc.statistics = decode_statistics(modules.at("statistics"));
  if (modules.has("pair_plots")) doc.pair_plots = decode_pair_plots(modules.at("pair_plots"));
  if (modules.has("probabilistic_model"))
    doc.probabilistic_model = ProbabilisticPayload{modules.at("probabilistic_model").at("posteriors").list(decode_posterior)};
  if (modules.has("ground_truth_correlations"))
    doc.ground_truth_correlations =
        GroundTruthPayload{modules.at("ground_truth_correlations").at("reports").list(decode_report)};
  return doc;
}

}  // namespace json_io

inline std::string serialize(const LabelDocument& label) { return canonical_dump(json_io::encode(label)); }

inline LabelDocument deserialize(std::string_view bytes) {
  Json j;
  try {
    j = Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
  return json_io::decode(j);
}

}  // namespace nlabel
