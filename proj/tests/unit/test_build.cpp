#include <gtest/gtest.h>

#include "nlabel.hpp"
#include "oracles.hpp"

using namespace nlabel;

namespace {

AutoPayloads auto_payloads() {
  AutoPayloads a;
  a.metadata.filename = "d.csv";
  a.metadata.rows = 2;
  a.metadata.columns = 2;
  a.metadata.missing_pct = "0.0%";
  return a;
}

Json complete_metadata() {
  return Json::parse(R"({"url": null, "domain": "health", "keywords": ["a"], "license": null,
                         "released": null, "range": {"from": null, "to": null}, "description": "d"})");
}

Json manual(const Json& metadata) {
  Json j;
  j["modules"]["metadata"] = metadata;
  return j;
}

BuildRequest request(std::vector<std::string> modules = {"metadata"}) {
  return {std::move(modules), {"a", "b"}, "2017-01-01T00:00:00Z"};
}

std::vector<std::string> actions(const BuildResult& r) {
  if (auto* a = std::get_if<ActionList>(&r)) return a->paths;
  return {};
}

}  // namespace

TEST(Build, CompleteMetadataGivesLabel) {
  auto r = build_label(auto_payloads(), manual(complete_metadata()), request());
  ASSERT_TRUE(std::holds_alternative<LabelDocument>(r));
  const auto& doc = std::get<LabelDocument>(r);
  EXPECT_EQ(doc.metadata.domain, "health");
  EXPECT_EQ(doc.metadata.filename, "d.csv");
  EXPECT_FALSE(doc.metadata.url);
  EXPECT_EQ(doc.module_count(), 1u);
  EXPECT_TRUE(validate(serialize(doc)).ok());
}

TEST(Build, MissingDescriptionIsAnAction) {
  auto m = complete_metadata();
  m.erase("description");
  EXPECT_EQ(actions(build_label(auto_payloads(), manual(m), request())),
            (std::vector<std::string>{"modules.metadata.description"}));
  m["description"] = "  ";
  EXPECT_EQ(actions(build_label(auto_payloads(), manual(m), request())),
            (std::vector<std::string>{"modules.metadata.description"}));
}

TEST(Build, NoManualInputListsEveryManualField) {
  auto paths = actions(build_label(auto_payloads(), Json(nullptr), request()));
  EXPECT_EQ(paths, (std::vector<std::string>{"modules.metadata.url", "modules.metadata.domain",
                                             "modules.metadata.keywords", "modules.metadata.license",
                                             "modules.metadata.released", "modules.metadata.range",
                                             "modules.metadata.description"}));
}

TEST(Build, ProvenanceAndVariablesActions) {
  auto j = manual(complete_metadata());
  j["modules"]["provenance"]["source"]["name"] = "CMS";
  j["modules"]["variables"]["entries"] = Json::array({Json{{"name", "a"}, {"description", "first"}}});
  auto paths = actions(build_label(auto_payloads(), j, request({"metadata", "provenance", "variables"})));
  EXPECT_EQ(paths, (std::vector<std::string>{"modules.provenance.author.name",
                                             "modules.variables.entries[name=b].description"}));
}

TEST(Build, GroundTruthNeedsReferenceName) {
  auto a = auto_payloads();
  a.ground_truth_correlations = GroundTruthPayload{};
  auto paths = actions(build_label(a, manual(complete_metadata()), request({"metadata", "ground_truth_correlations"})));
  EXPECT_EQ(paths, (std::vector<std::string>{"modules.ground_truth_correlations.reference.name"}));
}

TEST(Build, ConfigErrors) {
  auto j = manual(complete_metadata());
  EXPECT_THROW(build_label(auto_payloads(), j, request({"metadata", "comments"})), ConfigError);
  EXPECT_THROW(build_label(auto_payloads(), j, request({"metadata", "statistics"})), ConfigError);
  j["modules"]["variables"]["entries"] = Json::array({Json{{"name", "zz"}, {"description", "x"}}});
  EXPECT_THROW(build_label(auto_payloads(), j, request({"metadata", "variables"})), ConfigError);
  auto bad = complete_metadata();
  bad["keywords"] = "a,b";
  EXPECT_THROW(build_label(auto_payloads(), manual(bad), request()), ConfigError);
  EXPECT_THROW(build_label(auto_payloads(), Json::array(), request()), ConfigError);
}

TEST(Make, ChecksConfigBeforeReading) {
  MakeConfig c;
  c.dataset_path = "/nonexistent.csv";
  c.modules = {"metadata", "ground_truth_correlations"};
  EXPECT_THROW(check_config(c), ConfigError);
  c.modules = {"metadata", "metadata"};
  EXPECT_THROW(check_config(c), ConfigError);
  c.modules = {"metadata"};
  c.timestamp = "yesterday";
  EXPECT_THROW(check_config(c), ConfigError);
  c.timestamp = "";
  c.pair_bins = 0;
  EXPECT_THROW(check_config(c), ConfigError);
}

TEST(Make, ReadsStandardInput) {
  MakeConfig c;
  c.dataset_path = "-";
  c.modules = {"metadata", "statistics"};
  c.meta_path = oracle::fixture("meta_metadata_only.json");
  c.timestamp = "2017-01-01T00:00:00Z";
  std::istringstream in("a,b\n1,x\n2,\n");
  auto out = run_make(c, in);
  const auto& doc = std::get<LabelDocument>(out.result);
  EXPECT_EQ(doc.metadata.filename, "stdin");
  EXPECT_EQ(doc.metadata.missing_pct, "25.0%");
}

TEST(Make, OverridesFileIsChecked) {
  auto dir = oracle::scratch("overrides");
  oracle::spit((dir / "o.json").string(), R"({"id": {"stratum": "continuous", "subtype": "string"}})");
  MakeConfig c;
  c.dataset_path = oracle::fixture("docs_payments.csv");
  c.overrides_path = (dir / "o.json").string();
  EXPECT_THROW(run_make(c), ConfigError);
  oracle::spit((dir / "o.json").string(), R"({"id": {"stratum": "nominal", "subtype": "number"}})");
  c.meta_path = oracle::fixture("meta_metadata_only.json");
  c.timestamp = "2017-01-01T00:00:00Z";
  auto out = run_make(c);
  const auto& doc = std::get<LabelDocument>(out.result);
  EXPECT_EQ(doc.statistics->nominal.front().name, "id");
  EXPECT_EQ(doc.statistics->nominal.front().origin, Origin::override);
  std::filesystem::remove_all(dir);
}
