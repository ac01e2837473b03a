#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "mdist/constructions.h"
#include "mdist/errors.h"
#include "mdist/io.h"
#include "mdist/search.h"
#include "oracle.h"

namespace mdist {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() /
            ("mdist_io_test_" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string write(const std::string& name, const std::string& text) const {
    const auto file = (path_ / name).string();
    std::ofstream(file) << text;
    return file;
  }

 private:
  fs::path path_;
};

std::string schema_message(const std::string& path) {
  try {
    load_instances(path);
  } catch (const SchemaError& e) {
    return e.what();
  }
  return "";
}

TEST(InstanceJson, RoundTripsRandomInstances) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto instance = random_instance(
        trial % 2 ? Space::kLine : Space::kGeneral, 1 + trial % 7,
        1 + trial % 5, rng());
    const auto text = to_json(instance).dump();
    const auto back = instance_from_json(Json::parse(text));
    EXPECT_EQ(is_line(back), is_line(instance));
    EXPECT_EQ(oracle::joint_matrix(back), oracle::joint_matrix(instance));
    EXPECT_EQ(to_json(back).dump(), text);
  }
}

TEST(InstanceJson, LayoutOfALineInstance) {
  const Json json = to_json(Instance(LineInstance({0.5}, {0.0, 1.0})));
  EXPECT_EQ(json.dump(),
            R"({"kind":"line","n_agents":1,"n_alternatives":2,)"
            R"("agent_positions":[0.5],"alternative_positions":[0.0,1.0]})");
}

TEST(InstanceJson, CountsAreOptionalForLines) {
  const auto line = instance_from_json(Json::parse(
      R"({"kind":"line","agent_positions":[1],"alternative_positions":[0,2]})"));
  EXPECT_EQ(n_alternatives(line), 2u);
}

TEST(InstanceJson, SchemaErrors) {
  auto bad = [](const char* text) {
    EXPECT_THROW(instance_from_json(Json::parse(text)), Error) << text;
  };
  bad(R"({"agent_positions":[1],"alternative_positions":[0]})");
  bad(R"({"kind":"plane"})");
  bad(R"({"kind":"line","agent_positions":"x","alternative_positions":[0]})");
  bad(R"({"kind":"line","n_agents":2,"agent_positions":[1],)"
      R"("alternative_positions":[0]})");
  bad(R"({"kind":"general","n_agents":1,"n_alternatives":1,"dist":[[0,1],[1]]})");
  bad(R"({"kind":"general","n_agents":1,"n_alternatives":2,"dist":[[0,1],[1,0]]})");
  bad(R"([1,2])");
}

TEST(LoadInstances, SyntaxErrorNamesFileLineAndColumn) {
  TempDir dir;
  const auto path = dir.write("broken.json", "{\n  \"kind\": \"line\",\n  oops\n}");
  const auto message = schema_message(path);
  EXPECT_NE(message.find(path + ":3:"), std::string::npos) << message;
}

TEST(LoadInstances, JsonLinesErrorNamesTheLine) {
  TempDir dir;
  const auto good = to_json(Instance(LineInstance({0.5}, {0.0}))).dump();
  const auto path = dir.write(
      "set.jsonl", good + "\n\n" + good + "\n{\"kind\":\"line\"}\n");
  const auto message = schema_message(path);
  EXPECT_NE(message.find(path + ":4"), std::string::npos) << message;
  EXPECT_NE(message.find("missing member"), std::string::npos) << message;
}

TEST(LoadInstances, AcceptedLayouts) {
  TempDir dir;
  const Instance line = LineInstance({0.25, 0.75}, {0.0, 1.0});
  const Instance general = random_instance(Space::kGeneral, 2, 2, 3);
  const auto bare = dir.write("bare.json", to_json(line).dump());
  const auto wrapped =
      dir.write("wrapped.json", Json{{"instance", to_json(general)}}.dump());
  const auto list = dir.write(
      "list.json",
      Json{{"instances", Json::array({to_json(line), to_json(general)})}}.dump(2));
  const auto jsonl = dir.write(
      "set.jsonl", to_json(line).dump() + "\n" + to_json(general).dump() + "\n");

  auto one = load_instances(bare);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].id, bare);
  EXPECT_TRUE(is_line(one[0].instance));

  auto two = load_instances(wrapped);
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(oracle::joint_matrix(two[0].instance), oracle::joint_matrix(general));

  auto many = load_instances(list);
  ASSERT_EQ(many.size(), 2u);
  EXPECT_EQ(many[1].id, list + "#1");

  auto lines = load_instances(jsonl);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0].id, jsonl + ":1");
  EXPECT_FALSE(is_line(lines[1].instance));

  EXPECT_THROW(load_instances(dir.write("bad.json", R"({"instances":3})")),
               SchemaError);
  EXPECT_THROW(load_instances((fs::temp_directory_path() / "mdist_missing.json")
                                  .string()),
               SchemaError);
}

TEST(LoadInstances, ConstructOutputLoads) {
  TempDir dir;
  const auto c = build(ConstructionId::kMCGeneralI1, {2, 2.0, 1e-6, 1e-6, 0});
  const auto path = dir.write("i1.json", to_json(c).dump(2));
  const auto loaded = load_instances(path);
  ASSERT_EQ(loaded.size(), 1u);
  EXPECT_EQ(oracle::joint_matrix(loaded[0].instance),
            oracle::joint_matrix(c.instance));
}

TEST(BundleJson, RoundTrip) {
  for (auto id : {ConstructionId::kSCOrdTAS, ConstructionId::kSCDistTAS,
                  ConstructionId::kLineSCOrdinal2}) {
    const auto c = build(id, {3, 2.0, 1e-3, 1e-3, 0});
    const auto json = to_json(c.bundle);
    const auto back = bundle_from_json(Json::parse(json.dump()));
    EXPECT_EQ(back.provenance, c.bundle.provenance);
    EXPECT_EQ(back.ordinal, c.bundle.ordinal);
    EXPECT_EQ(back.tas, c.bundle.tas);
    EXPECT_EQ(back.line.has_value(), c.bundle.line.has_value());
    EXPECT_EQ(to_json(back).dump(), json.dump());
  }
  EXPECT_THROW(bundle_from_json(Json::parse(R"({"tas":{"alpha":2}})")),
               SchemaError);
  EXPECT_THROW(bundle_from_json(Json::parse("{}")), StructuralError);
}

TEST(TraceJson, KeysPerMechanism) {
  const LineInstance line({0.1, 0.45, 0.9}, {0.0, 0.5, 1.0});
  auto trace_keys = [&](MechanismKind kind, double alpha) {
    const auto id = make_mechanism(kind, alpha);
    const auto bundle = derive_bundle(line, requirements(kind).views, alpha);
    const auto json = to_json(run_mechanism(id, bundle));
    std::vector<std::string> keys;
    for (const auto& [key, value] : json["trace"].items()) keys.push_back(key);
    return keys;
  };
  using Keys = std::vector<std::string>;
  EXPECT_EQ(trace_keys(MechanismKind::kMinisumTAS, 2.0), Keys{"scores"});
  EXPECT_EQ(trace_keys(MechanismKind::kEliminationWeightedMajority, 3.0),
            (Keys{"median_agent", "x", "left", "right", "n_left_x", "n_right_x",
                  "y", "weights", "v_x", "v_y"}));
  EXPECT_EQ(trace_keys(MechanismKind::kMostCompactSet, 2.0),
            (Keys{"common_alternative", "intersection", "radii",
                  "chosen_agent"}));
  EXPECT_EQ(trace_keys(MechanismKind::kMaxTASLeftmost, 2.0),
            (Keys{"counts", "most_approved"}));
  EXPECT_EQ(trace_keys(MechanismKind::kAnyApproved, 2.0), Keys{"agent"});
}

TEST(ReportJson, NonFiniteRatiosBecomeStrings) {
  const LineInstance line({1, 1}, {1, 2});
  const auto report = score_winner(line, 1, Objective::kSocialCost);
  const auto json = to_json(report);
  EXPECT_EQ(json["ratio"], "inf");
  EXPECT_TRUE(json["degenerate"].get<bool>());
  EXPECT_TRUE(json["trace"].is_null());
}

TEST(WriteTextFile, FailsOnAMissingDirectory) {
  EXPECT_THROW(write_text_file("/nonexistent_dir/x/out.json", "{}"), Error);
}

}  // namespace
}  // namespace mdist
