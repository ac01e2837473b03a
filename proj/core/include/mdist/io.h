#ifndef MDIST_IO_H_
#define MDIST_IO_H_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mdist/constructions.h"
#include "mdist/elicitation.h"
#include "mdist/eval.h"
#include "mdist/instance.h"
#include "mdist/metric.h"
#include "mdist/search.h"

namespace mdist {

using Json = nlohmann::ordered_json;

// Instances:
//   {"kind": "line", "n_agents": n, "n_alternatives": m,
//    "agent_positions": [...], "alternative_positions": [...]}
//   {"kind": "general", "n_agents": n, "n_alternatives": m,
//    "dist": [[...], ...]}   (joint (n+m)x(n+m), agents first)
Json to_json(const Instance& instance);
Instance instance_from_json(const Json& json);

// Bundles carry any subset of "ordinal", "alt_distances", "tas" and "line".
Json to_json(const ElicitationBundle& bundle);
ElicitationBundle bundle_from_json(const Json& json);

Json to_json(const DistanceMatrix& matrix);
DistanceMatrix matrix_from_json(const Json& json);

Json to_json(const MechanismTrace& trace);
Json to_json(const WinnerResult& result);
Json to_json(const MetricReport& report);
Json to_json(const DistortionReport& report);
Json to_json(const ConstructionParams& params);
Json to_json(const Construction& construction);
Json to_json(const VerifyReport& report);
Json to_json(const SearchConfig& config);
Json to_json(const SearchResult& result);

// Parses a JSON file. Throws SchemaError "<path>:<line>:<col>: ..." on
// syntax errors and "<path>: ..." if the file cannot be read.
Json read_json_file(const std::string& path);

// One labelled instance from a file.
struct LoadedInstance {
  std::string id;
  Instance instance;
};

// Accepts a bare instance object, an object with an "instance" member (as
// written by `construct`), an object with an "instances" array, or a JSON
// Lines file (.jsonl) holding one instance per line. Schema errors name the
// file and the line (JSON Lines) or array index.
std::vector<LoadedInstance> load_instances(const std::string& path);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace mdist

#endif  // MDIST_IO_H_
