#include <gtest/gtest.h>

#include <sstream>

#include "nlabel.hpp"
#include "oracles.hpp"

using namespace nlabel;

namespace {

MakeConfig full_config() {
  MakeConfig c;
  c.dataset_path = oracle::fixture("docs_payments.csv");
  c.modules = {kModuleNames.begin(), kModuleNames.end()};
  c.meta_path = oracle::fixture("meta.json");
  c.overrides_path = oracle::fixture("overrides.json");
  c.gt_path = oracle::fixture("state_census.csv");
  c.gt_key = "state";
  c.dataset_key = "recipient_state";
  c.value_column = "total_amount_of_payment_usdollars";
  c.aggregates = {"sum", "per_capita"};
  c.target = "product_name";
  c.target_values = {"Eliquis"};
  c.condition = "recipient_state";
  c.seed = 42;
  c.mc_samples = 2000;
  c.synthetic = 500;
  c.timestamp = "2017-01-01T00:00:00Z";
  return c;
}

const LabelDocument& full_label() {
  static const LabelDocument doc = std::get<LabelDocument>(run_make(full_config()).result);
  return doc;
}

std::vector<std::string> rules(const ValidationReport& r) {
  std::vector<std::string> out;
  for (auto& v : r.violations) out.push_back(v.path + " " + v.rule);
  return out;
}

}  // namespace

TEST(CanonicalNumber, ShortestFixedWithSixDecimals) {
  EXPECT_EQ(canonical_number(5.0), "5");
  EXPECT_EQ(canonical_number(0.052), "0.052");
  EXPECT_EQ(canonical_number(1.0 / 3.0), "0.333333");
  EXPECT_EQ(canonical_number(2.0 / 3.0), "0.666667");
  EXPECT_EQ(canonical_number(-0.0000001), "0");
  EXPECT_EQ(canonical_number(-1.5), "-1.5");
  EXPECT_EQ(canonical_number(1e7), "10000000");
}

TEST(CanonicalNumber, QuantizedSimplexSumsToOne) {
  std::vector<double> p{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  auto q = quantize_simplex(p);
  EXPECT_EQ(q[0], 0.333334);
  EXPECT_EQ(q[1], 0.333333);
  long total = 0;
  for (double x : q) total += std::lround(x * 1e6);
  EXPECT_EQ(total, 1000000);
}

TEST(CanonicalDump, Layout) {
  Json j;
  j["b"] = 1;
  j["a"] = Json::array({1.5, "x", nullptr});
  j["o"] = Json::object();
  j["n"] = Json::array({Json::object({{"k", true}})});
  EXPECT_EQ(canonical_dump(j),
            "{\n"
            "  \"b\": 1,\n"
            "  \"a\": [1.5, \"x\", null],\n"
            "  \"o\": {},\n"
            "  \"n\": [\n"
            "    {\n"
            "      \"k\": true\n"
            "    }\n"
            "  ]\n"
            "}\n");
}

TEST(Label, KeyOrderIsCanonical) {
  auto text = serialize(full_label());
  std::vector<std::string> order{"\"schema_version\"", "\"generated_at\"", "\"generator\"", "\"modules\"",
                                 "\"metadata\"",       "\"provenance\"",   "\"variables\"", "\"statistics\"",
                                 "\"pair_plots\"",     "\"probabilistic_model\"", "\"ground_truth_correlations\""};
  std::size_t at = 0;
  for (auto& key : order) {
    auto pos = text.find(key, at);
    ASSERT_NE(pos, std::string::npos) << key;
    at = pos;
  }
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_EQ(text.find(" \n"), std::string::npos);
  EXPECT_EQ(text.back(), '\n');
}

TEST(Label, RoundTripIsByteIdentical) {
  auto text = serialize(full_label());
  auto back = deserialize(text);
  EXPECT_EQ(serialize(back), text);
  EXPECT_EQ(back.module_count(), 7u);
}

TEST(Label, FullLabelValidates) {
  auto report = validate(serialize(full_label()));
  EXPECT_TRUE(report.ok()) << ::testing::PrintToString(rules(report));
}

TEST(Validate, MalformedJson) {
  auto r = validate("{\"schema_version\": ");
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].rule, "json.malformed");
}

TEST(Validate, MissingMetadataIsOneViolation) {
  auto j = Json::parse(serialize(full_label()));
  j["modules"].erase("metadata");
  auto r = validate(j.dump());
  ASSERT_EQ(r.violations.size(), 1u) << ::testing::PrintToString(rules(r));
  EXPECT_EQ(r.violations[0].path, "modules.metadata");
  EXPECT_EQ(r.violations[0].rule, "required");
}

TEST(Validate, ProbabilitySumIsOneViolation) {
  auto j = Json::parse(serialize(full_label()));
  auto& p = j["modules"]["probabilistic_model"]["posteriors"][0]["point_estimates"];
  p[0] = p[0].get<double>() + 0.01;
  auto r = validate(j.dump());
  ASSERT_EQ(r.violations.size(), 1u) << ::testing::PrintToString(rules(r));
  EXPECT_EQ(r.violations[0].rule, "probability.sum");
  EXPECT_EQ(r.violations[0].path, "modules.probabilistic_model.posteriors[0].point_estimates");
}

TEST(Validate, PearsonOutOfRangeIsOneViolation) {
  auto j = Json::parse(serialize(full_label()));
  j["modules"]["ground_truth_correlations"]["reports"][0]["entries"][0]["r"] = 1.5;
  auto r = validate(j.dump());
  ASSERT_EQ(r.violations.size(), 1u) << ::testing::PrintToString(rules(r));
  EXPECT_EQ(r.violations[0].rule, "pearson.range");
  EXPECT_EQ(r.violations[0].path, "modules.ground_truth_correlations.reports[0].entries[0].r");
}

TEST(Validate, OtherRules) {
  auto base = Json::parse(serialize(full_label()));
  {
    auto j = base;
    j["schema_version"] = "2.0.0";
    EXPECT_EQ(rules(validate(j.dump())), (std::vector<std::string>{"schema_version schema.version"}));
  }
  {
    auto j = base;
    j["modules"]["comments"] = Json::object();
    EXPECT_EQ(rules(validate(j.dump())), (std::vector<std::string>{"modules.comments module.unknown"}));
  }
  {
    auto j = base;
    j["modules"]["metadata"]["missing_pct"] = "5.20%";
    EXPECT_EQ(rules(validate(j.dump())), (std::vector<std::string>{"modules.metadata.missing_pct pattern.percent"}));
  }
  {
    auto j = base;
    j["modules"]["metadata"]["rows"] = "500";
    EXPECT_EQ(rules(validate(j.dump())), (std::vector<std::string>{"modules.metadata.rows type"}));
  }
  {
    auto j = base;
    j["modules"]["pair_plots"]["histograms"][0]["counts"][0] = 9999;
    auto r = validate(j.dump());
    ASSERT_EQ(r.violations.size(), 1u);
    EXPECT_EQ(r.violations[0].rule, "histogram.sum");
  }
  {
    auto j = base;
    j["modules"]["statistics"]["nominal"][0]["most_frequent"]["kind"] = "mode";
    auto r = validate(j.dump());
    ASSERT_EQ(r.violations.size(), 1u);
    EXPECT_EQ(r.violations[0].rule, "enum");
  }
  EXPECT_EQ(rules(validate("[]")), (std::vector<std::string>{"$ type"}));
}

TEST(Validate, NeverThrowsOnWrongShapes) {
  for (const char* doc : {"{}", "{\"modules\": []}", "{\"modules\": {\"metadata\": 3}}",
                          "{\"modules\": {\"statistics\": {\"ordinal\": [1]}}}", "null", "\"x\""}) {
    EXPECT_NO_THROW(validate(doc)) << doc;
    EXPECT_FALSE(validate(doc).ok()) << doc;
  }
}

TEST(Deserialize, RejectsBadShapes) {
  EXPECT_THROW(deserialize("{"), Error);
  EXPECT_THROW(deserialize("{\"schema_version\": \"1.0.0\"}"), Error);
}

TEST(Render, StatisticsHasFourTables) {
  auto text = render_module(full_label(), "statistics");
  for (auto title : {"Ordinal\n", "Nominal\n", "Continuous\n", "Discrete\n"})
    EXPECT_NE(text.find(title), std::string::npos) << title;
  EXPECT_NE(text.find("Xarelto (200)"), std::string::npos);
}

TEST(Render, PairSelectionIsOrderInsensitive) {
  auto a = render_module(full_label(), "pair_plots",
                         std::pair<std::string, std::string>{"recipient_state", "total_amount_of_payment_usdollars"});
  auto b = render_module(full_label(), "pair_plots",
                         std::pair<std::string, std::string>{"total_amount_of_payment_usdollars", "recipient_state"});
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("cat_cont"), std::string::npos);
  EXPECT_THROW(render_module(full_label(), "pair_plots", std::pair<std::string, std::string>{"id", "nope"}), Error);
}

TEST(Render, AbsentModuleNamesAvailableOnes) {
  LabelDocument doc;
  try {
    render_module(doc, "provenance");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("available: metadata"), std::string::npos);
  }
}

TEST(Render, EveryModuleRenders) {
  for (auto name : kModuleNames) EXPECT_FALSE(render_module(full_label(), name).empty()) << name;
}
