#include "mdist/io.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <type_traits>
#include <variant>

#include "mdist/errors.h"

namespace mdist {

namespace {

[[noreturn]] void schema_fail(const std::string& what) {
  throw SchemaError(what);
}

const Json& member(const Json& json, const char* key) {
  if (!json.is_object()) schema_fail("expected an object");
  const auto it = json.find(key);
  if (it == json.end()) schema_fail(std::string("missing member \"") + key + "\"");
  return *it;
}

template <typename T>
T as(const Json& json, const char* what) {
  try {
    return json.get<T>();
  } catch (const nlohmann::json::exception&) {
    schema_fail(std::string(what) + " has the wrong type");
  }
}

// Non-finite doubles are written as the strings "inf", "-inf" and "nan";
// JSON has no literal for them.
Json number(double value) {
  if (std::isfinite(value)) return value;
  if (std::isnan(value)) return "nan";
  return value > 0 ? "inf" : "-inf";
}

std::vector<std::vector<double>> rows_of(const Json& json, const char* what) {
  return as<std::vector<std::vector<double>>>(json, what);
}

Json line_positions(const LinePositions& line) {
  return Json{{"agents", line.agent_positions},
              {"alternatives", line.alternative_positions}};
}

// Byte offset -> 1-based line and column.
std::pair<std::size_t, std::size_t> locate(const std::string& text,
                                           std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) schema_fail(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Json parse_text(const std::string& text, const std::string& where,
                std::size_t line_offset) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, column] = locate(text, e.byte == 0 ? 0 : e.byte - 1);
    std::ostringstream msg;
    msg << where << ":" << line + line_offset << ":" << column
        << ": invalid JSON";
    schema_fail(msg.str());
  }
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

Json to_json(const DistanceMatrix& matrix) { return matrix.to_rows(); }

DistanceMatrix matrix_from_json(const Json& json) {
  return DistanceMatrix::from_rows(rows_of(json, "distance matrix"));
}

Json to_json(const Instance& instance) {
  if (const auto* line = as_line(instance)) {
    return Json{{"kind", "line"},
                {"n_agents", line->n_agents()},
                {"n_alternatives", line->n_alternatives()},
                {"agent_positions", line->agent_positions()},
                {"alternative_positions", line->alternative_positions()}};
  }
  const auto& general = std::get<GeneralInstance>(instance);
  return Json{{"kind", "general"},
              {"n_agents", general.n_agents()},
              {"n_alternatives", general.n_alternatives()},
              {"dist", to_json(general.dist())}};
}

Instance instance_from_json(const Json& json) {
  const auto kind = as<std::string>(member(json, "kind"), "\"kind\"");
  if (kind == "line") {
    LineInstance line(
        as<std::vector<double>>(member(json, "agent_positions"),
                                "\"agent_positions\""),
        as<std::vector<double>>(member(json, "alternative_positions"),
                                "\"alternative_positions\""));
    // The counts are redundant for line instances; when given they must
    // agree with the position lists.
    if (json.contains("n_agents") &&
        as<std::size_t>(json["n_agents"], "\"n_agents\"") != line.n_agents()) {
      schema_fail("\"n_agents\" does not match \"agent_positions\"");
    }
    if (json.contains("n_alternatives") &&
        as<std::size_t>(json["n_alternatives"], "\"n_alternatives\"") !=
            line.n_alternatives()) {
      schema_fail(
          "\"n_alternatives\" does not match \"alternative_positions\"");
    }
    return line;
  }
  if (kind == "general") {
    const auto n = as<std::size_t>(member(json, "n_agents"), "\"n_agents\"");
    const auto m =
        as<std::size_t>(member(json, "n_alternatives"), "\"n_alternatives\"");
    return GeneralInstance(n, m, matrix_from_json(member(json, "dist")));
  }
  schema_fail("unknown instance kind \"" + kind + "\"");
}

Json to_json(const MechanismTrace& trace) {
  return std::visit(
      [](const auto& t) -> Json {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, ScoreTrace>) {
          Json scores = Json::array();
          for (double s : t.scores) scores.push_back(number(s));
          return Json{{"scores", std::move(scores)}};
        } else if constexpr (std::is_same_v<T, EliminationTrace>) {
          Json json{{"median_agent", t.median_agent}, {"x", t.x}};
          json["left"] = t.left ? Json(*t.left) : Json(nullptr);
          json["right"] = t.right ? Json(*t.right) : Json(nullptr);
          json["n_left_x"] = t.left_over_x;
          json["n_right_x"] = t.right_over_x;
          json["y"] = t.y ? Json(*t.y) : Json(nullptr);
          json["weights"] = t.weights;
          json["v_x"] = t.votes_x;
          json["v_y"] = t.votes_y;
          return json;
        } else if constexpr (std::is_same_v<T, CompactSetTrace>) {
          Json json{{"common_alternative", t.common_alternative},
                    {"intersection", t.intersection},
                    {"radii", t.radii}};
          json["chosen_agent"] =
              t.chosen_agent ? Json(*t.chosen_agent) : Json(nullptr);
          return json;
        } else if constexpr (std::is_same_v<T, ApprovalCountTrace>) {
          return Json{{"counts", t.counts},
                      {"most_approved", t.most_approved}};
        } else {
          return Json{{"agent", t.agent}};
        }
      },
      trace);
}

Json to_json(const WinnerResult& result) {
  return Json{{"winner", result.winner}, {"trace", to_json(result.trace)}};
}

Json to_json(const ElicitationBundle& bundle) {
  Json json = Json::object();
  if (!bundle.provenance.empty()) json["provenance"] = bundle.provenance;
  if (bundle.ordinal) json["ordinal"] = bundle.ordinal->rankings;
  if (bundle.alt_distances) {
    json["alt_distances"] = to_json(bundle.alt_distances->matrix);
  }
  if (bundle.tas) {
    json["tas"] = Json{{"alpha", bundle.tas->alpha}, {"sets", bundle.tas->sets}};
  }
  if (bundle.line) json["line"] = line_positions(*bundle.line);
  return json;
}

ElicitationBundle bundle_from_json(const Json& json) {
  if (!json.is_object()) schema_fail("bundle must be an object");
  ElicitationBundle bundle;
  if (json.contains("provenance")) {
    bundle.provenance = as<std::string>(json["provenance"], "\"provenance\"");
  }
  if (json.contains("ordinal")) {
    bundle.ordinal = OrdinalProfile{
        as<std::vector<std::vector<std::size_t>>>(json["ordinal"],
                                                  "\"ordinal\"")};
  }
  if (json.contains("alt_distances")) {
    bundle.alt_distances = AltDistances{matrix_from_json(json["alt_distances"])};
  }
  if (json.contains("tas")) {
    const auto& tas = json["tas"];
    bundle.tas = TASProfile{
        as<double>(member(tas, "alpha"), "\"tas.alpha\""),
        as<std::vector<std::vector<std::size_t>>>(member(tas, "sets"),
                                                  "\"tas.sets\"")};
  }
  if (json.contains("line")) {
    const auto& line = json["line"];
    bundle.line = LinePositions{
        as<std::vector<double>>(member(line, "agents"), "\"line.agents\""),
        as<std::vector<double>>(member(line, "alternatives"),
                                "\"line.alternatives\"")};
  }
  check_bundle(bundle);
  return bundle;
}

Json to_json(const MetricReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    Json entry{{"first", v.first}, {"second", v.second}};
    if (v.via) entry["via"] = *v.via;
    entry["excess"] = v.excess;
    entry["description"] = v.describe();
    violations.push_back(std::move(entry));
  }
  return Json{{"ok", report.ok()},
              {"truncated", report.truncated},
              {"violations", std::move(violations)}};
}

Json to_json(const DistortionReport& report) {
  return Json{{"mechanism", report.mechanism.name()},
              {"alpha", report.mechanism.alpha},
              {"objective", std::string(objective_name(report.objective))},
              {"winner", report.winner},
              {"winner_cost", report.winner_cost},
              {"optimal", report.optimal},
              {"optimal_cost", report.optimal_cost},
              {"ratio", number(report.ratio)},
              {"degenerate", report.degenerate},
              {"trace", report.trace ? to_json(*report.trace) : Json(nullptr)}};
}

Json to_json(const ConstructionParams& params) {
  return Json{{"n", params.n},
              {"alpha", params.alpha},
              {"eps", params.eps},
              {"delta", params.delta},
              {"target", params.target}};
}

Json to_json(const Construction& c) {
  return Json{
      {"id", std::string(construction_name(c.id))},
      {"params", to_json(c.params)},
      {"objective", std::string(objective_name(c.objective))},
      {"adversarial_winner", c.adversarial_winner},
      {"predicted_best", c.predicted_best},
      {"predicted_winner_cost", c.predicted_winner_cost},
      {"predicted_best_cost", c.predicted_best_cost},
      {"predicted_ratio", number(c.predicted_ratio())},
      {"asymptotic_ratio", number(c.asymptotic_ratio)},
      {"instance", to_json(c.instance)},
      {"bundle", to_json(c.bundle)},
  };
}

Json to_json(const VerifyReport& report) {
  return Json{{"passed", report.passed()},
              {"metric_checked", report.metric_checked},
              {"metric_ok", report.metric_ok},
              {"bundle_ok", report.bundle_ok},
              {"costs_ok", report.costs_ok},
              {"realized_winner_cost", report.realized_winner_cost},
              {"realized_best_cost", report.realized_best_cost},
              {"realized_optimal_cost", report.realized_optimal_cost},
              {"diffs", report.diffs}};
}

Json to_json(const SearchConfig& config) {
  return Json{{"mechanism", config.mechanism.name()},
              {"alpha", config.mechanism.alpha},
              {"objective", std::string(objective_name(config.objective))},
              {"space", std::string(space_name(config.space))},
              {"n", {config.n_range.lo, config.n_range.hi}},
              {"m", {config.m_range.lo, config.m_range.hi}},
              {"restarts", config.restarts},
              {"steps", config.steps},
              {"step_size", config.step_size},
              {"seed", config.seed}};
}

Json to_json(const SearchResult& result) {
  Json history = Json::array();
  for (const auto& entry : result.history) {
    history.push_back(Json{{"restart", entry.restart},
                           {"step", entry.step},
                           {"ratio", number(entry.ratio)}});
  }
  return Json{{"seed", result.seed},
              {"best_ratio", number(result.best_ratio)},
              {"best_restart", result.best_restart},
              {"evaluations", result.evaluations},
              {"best_report", to_json(result.best_report)},
              {"best_instance", to_json(result.best_instance)},
              {"history", std::move(history)}};
}

Json read_json_file(const std::string& path) {
  return parse_text(read_text(path), path, 0);
}

std::vector<LoadedInstance> load_instances(const std::string& path) {
  std::vector<LoadedInstance> loaded;
  auto load_one = [&](const Json& json, const std::string& where,
                      std::string id) {
    try {
      const Json& body = json.is_object() && json.contains("instance")
                             ? json["instance"]
                             : json;
      loaded.push_back({std::move(id), instance_from_json(body)});
    } catch (const SchemaError& e) {
      throw SchemaError(where + ": " + e.what());
    } catch (const Error& e) {
      throw SchemaError(where + ": invalid instance: " + e.what());
    }
  };

  if (ends_with(path, ".jsonl")) {
    std::istringstream lines(read_text(path));
    std::string text;
    std::size_t line_number = 0;
    while (std::getline(lines, text)) {
      ++line_number;
      if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
      const std::string where = path + ":" + std::to_string(line_number);
      load_one(parse_text(text, path, line_number - 1), where, where);
    }
    return loaded;
  }

  const Json json = read_json_file(path);
  if (json.is_object() && json.contains("instances")) {
    const auto& list = json["instances"];
    if (!list.is_array()) schema_fail(path + ": \"instances\" must be an array");
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string where = path + ": instances[" + std::to_string(k) + "]";
      load_one(list[k], where, path + "#" + std::to_string(k));
    }
    return loaded;
  }
  load_one(json, path, path);
  return loaded;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path + ": cannot open for writing");
  out << text;
  if (!out) throw Error(path + ": write failed");
}

}  // namespace mdist
