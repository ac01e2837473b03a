#include "cli.h"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <exception>
#include <iterator>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "mdist/constructions.h"
#include "mdist/errors.h"
#include "mdist/eval.h"
#include "mdist/io.h"
#include "mdist/mechanisms.h"
#include "mdist/metric.h"
#include "mdist/search.h"

namespace mdist::cli {

namespace {

constexpr double kDefaultAlpha = 1.0 + std::numbers::sqrt2;
constexpr const char* kTauVariable = "MDIST_TAU";

// Bad flag values that CLI11 cannot catch on its own.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return fmt::format("{:.12g}", value);
}

Json json_number(double value) {
  if (std::isfinite(value)) return value;
  return num(value);
}

Json optional_number(const std::optional<double>& value) {
  return value ? json_number(*value) : Json(nullptr);
}

double resolve_tau(const std::optional<double>& flag) {
  double tau = kDefaultTolerance;
  if (flag) {
    tau = *flag;
  } else if (const char* env = std::getenv(kTauVariable);
             env != nullptr && *env != '\0') {
    char* end = nullptr;
    errno = 0;
    tau = std::strtod(env, &end);
    if (errno != 0 || end == env || *end != '\0') {
      throw UsageError(fmt::format("{}={} is not a number", kTauVariable, env));
    }
  }
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw UsageError(fmt::format("tau must be a finite value >= 0, got {}",
                                 num(tau)));
  }
  return tau;
}

SizeRange parse_range(const std::string& text, const char* flag) {
  SizeRange range;
  try {
    const auto colon = text.find(':');
    std::size_t used = 0;
    if (colon == std::string::npos) {
      range.lo = range.hi = std::stoul(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } else {
      const std::string lo = text.substr(0, colon);
      const std::string hi = text.substr(colon + 1);
      range.lo = std::stoul(lo, &used);
      if (used != lo.size()) throw std::invalid_argument(text);
      range.hi = std::stoul(hi, &used);
      if (used != hi.size()) throw std::invalid_argument(text);
    }
  } catch (const std::logic_error&) {
    throw UsageError(
        fmt::format("{} expects K or LO:HI, got \"{}\"", flag, text));
  }
  if (range.lo == 0 || range.lo > range.hi) {
    throw UsageError(fmt::format("{} range \"{}\" is empty or starts at 0",
                                 flag, text));
  }
  return range;
}

std::vector<Objective> parse_objectives(const std::string& text) {
  if (text == "both") return {Objective::kSocialCost, Objective::kMaxCost};
  const auto objective = parse_objective(text);
  if (!objective) {
    throw UsageError(fmt::format("unknown objective \"{}\"", text));
  }
  return {*objective};
}

MechanismKind parse_kind(const std::string& text) {
  const auto kind = parse_mechanism_kind(text);
  if (!kind) throw UsageError(fmt::format("unknown mechanism \"{}\"", text));
  return *kind;
}

void check_alpha_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw UsageError("--alpha needs at least one value");
  for (double alpha : grid) {
    if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
      throw UsageError(fmt::format("alpha values must be >= 1, got {}",
                                   num(alpha)));
    }
  }
}

// Explicitly named mechanisms must accept every alpha; the default list keeps
// only the pairs that are valid.
std::vector<MechanismId> mechanism_grid(const std::vector<std::string>& names,
                                        const std::vector<double>& alphas) {
  std::vector<MechanismId> grid;
  if (names.empty()) {
    for (MechanismKind kind : kAllMechanismKinds) {
      for (double alpha : alphas) {
        try {
          grid.push_back(make_mechanism(kind, alpha));
        } catch (const ParameterError&) {
        }
      }
    }
    return grid;
  }
  for (const auto& name : names) {
    const MechanismKind kind = parse_kind(name);
    for (double alpha : alphas) grid.push_back(make_mechanism(kind, alpha));
  }
  return grid;
}

bool can_run(const MechanismId& mechanism, const Instance& instance) {
  return is_line(instance) || !requirements(mechanism.kind).line_order;
}

Space space_of(const Instance& instance) {
  return is_line(instance) ? Space::kLine : Space::kGeneral;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k > 0) line += ',';
    line += csv_field(fields[k]);
  }
  return line + "\n";
}

// Left-aligned text columns separated by two spaces.
std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string text;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c + 1 == cells.size()) {
        text += cells[c];
      } else {
        text += fmt::format("{:<{}}  ", cells[c], width[c]);
      }
    }
    return text + "\n";
  };
  std::string text = line(header);
  for (const auto& row : rows) text += line(row);
  return text;
}

// The primary report goes to --output when given, else to `out`. The human
// table then takes whichever stream the report did not.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out, std::ostream& err)
      : path_(path), out_(out), err_(err) {}

  void primary(const std::string& text) {
    if (path_.empty()) {
      out_ << text;
    } else {
      write_text_file(path_, text);
    }
  }
  std::ostream& table() { return path_.empty() ? err_ : out_; }

 private:
  std::string path_;
  std::ostream& out_;
  std::ostream& err_;
};

std::string dump(const Json& json) { return json.dump(2) + "\n"; }

// Runs `body(k)` for k in [0, count) on up to `threads` workers. Each k is
// handled by exactly one worker; callers store results by index.
template <typename Body>
void parallel_for(std::size_t count, std::size_t threads, Body body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(count, 1));
  if (threads <= 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> workers;
  for (std::size_t t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      try {
        for (std::size_t k = t; k < count; k += threads) body(k);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& worker : workers) worker.join();
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
}

// ---------------------------------------------------------------- validate

struct ValidateOptions {
  std::vector<std::string> files;
  std::string output;
  std::optional<double> tau;
};

struct ValidatedFile {
  std::string file;
  std::size_t size = 0;
  MetricReport metric;
  std::optional<std::string> bundle_error;
};

// Reads the distance matrix without the instance constructor so asymmetric
// or negative entries come back as violations rather than exceptions.
ValidatedFile validate_file(const std::string& path, double tau) {
  const Json root = read_json_file(path);
  const Json& body = root.is_object() && root.contains("instance")
                         ? root["instance"]
                         : root;
  ValidatedFile result{path};
  DistanceMatrix matrix(0);
  try {
    if (body.is_array()) {
      matrix = matrix_from_json(body);
    } else if (body.is_object() && body.value("kind", "") == "line") {
      matrix = to_general(instance_from_json(body)).dist();
    } else if (body.is_object() && body.contains("dist")) {
      matrix = matrix_from_json(body["dist"]);
      if (body.contains("n_agents") && body.contains("n_alternatives")) {
        const auto n = body["n_agents"].get<std::size_t>();
        const auto m = body["n_alternatives"].get<std::size_t>();
        if (n + m != matrix.size()) {
          throw SchemaError(fmt::format(
              "\"dist\" has size {}, expected n_agents + n_alternatives = {}",
              matrix.size(), n + m));
        }
      }
    } else {
      throw SchemaError("expected an instance or a distance matrix");
    }
  } catch (const nlohmann::json::exception&) {
    throw SchemaError(path + ": member has the wrong type");
  } catch (const Error& e) {
    throw SchemaError(path + ": " + e.what());
  }
  result.size = matrix.size();
  result.metric = validate_metric(matrix, tau);
  if (root.is_object() && root.contains("bundle")) {
    try {
      bundle_from_json(root["bundle"]);
    } catch (const Error& e) {
      result.bundle_error = e.what();
    }
  }
  return result;
}

int run_validate(const ValidateOptions& options, std::ostream& out,
                 std::ostream& err) {
  const double tau = resolve_tau(options.tau);
  Sink sink(options.output, out, err);
  Json files = Json::array();
  std::vector<std::vector<std::string>> rows;
  std::string details;
  bool all_ok = true;
  for (const auto& path : options.files) {
    const auto checked = validate_file(path, tau);
    const bool ok = checked.metric.ok() && !checked.bundle_error;
    all_ok = all_ok && ok;
    Json entry{{"file", checked.file}, {"size", checked.size}, {"ok", ok}};
    entry["metric"] = to_json(checked.metric);
    if (checked.bundle_error) entry["bundle_error"] = *checked.bundle_error;
    files.push_back(std::move(entry));
    rows.push_back({checked.file, std::to_string(checked.size),
                    std::to_string(checked.metric.violations.size()) +
                        (checked.metric.truncated ? "+" : ""),
                    ok ? "ok" : "INVALID"});
    for (const auto& v : checked.metric.violations) {
      details += fmt::format("{}: {}\n", checked.file, v.describe());
    }
    if (checked.bundle_error) {
      details += fmt::format("{}: bundle: {}\n", checked.file,
                             *checked.bundle_error);
    }
  }
  sink.primary(dump(Json{{"tau", tau}, {"ok", all_ok}, {"files", files}}));
  sink.table() << render_table({"file", "size", "violations", "status"}, rows)
               << details;
  return all_ok ? kOk : kCheckFailed;
}

// -------------------------------------------------------------------- eval

struct EvalOptions {
  std::vector<std::string> files;
  std::vector<std::string> mechanisms;
  std::vector<double> alphas{kDefaultAlpha};
  std::string objective = "both";
  std::string format = "json";
  std::string output;
  std::optional<double> tau;
};

struct EvalRow {
  std::string instance_id;
  Space space;
  std::size_t n_agents;
  DistortionReport report;
  std::optional<double> bound;
  bool violation = false;
};

int run_eval(const EvalOptions& options, std::ostream& out,
             std::ostream& err) {
  const double tau = resolve_tau(options.tau);
  check_alpha_grid(options.alphas);
  const auto objectives = parse_objectives(options.objective);
  const auto grid = mechanism_grid(options.mechanisms, options.alphas);
  Sink sink(options.output, out, err);

  std::vector<LoadedInstance> corpus;
  for (const auto& path : options.files) {
    auto loaded = load_instances(path);
    std::move(loaded.begin(), loaded.end(), std::back_inserter(corpus));
  }

  std::vector<EvalRow> rows;
  Json skipped = Json::array();
  for (const auto& [id, instance] : corpus) {
    for (const auto& mechanism : grid) {
      if (!can_run(mechanism, instance)) {
        skipped.push_back(Json{{"instance", id},
                               {"mechanism", mechanism.name()},
                               {"alpha", mechanism.alpha},
                               {"reason", "needs a line instance"}});
        continue;
      }
      for (Objective objective : objectives) {
        EvalRow row{id, space_of(instance), n_agents(instance),
                    distortion(instance, mechanism, objective, {}, tau)};
        row.bound = proven_upper_bound(mechanism, objective, row.space,
                                       row.n_agents);
        row.violation = row.bound && row.report.ratio > *row.bound + tau;
        rows.push_back(std::move(row));
      }
    }
  }

  bool violation = false;
  for (const auto& row : rows) violation = violation || row.violation;

  if (options.format == "csv") {
    std::string text = csv_line({"instance_id", "mechanism", "alpha",
                                 "objective", "winner", "optimal", "ratio",
                                 "bound", "violation"});
    for (const auto& row : rows) {
      text += csv_line({row.instance_id, row.report.mechanism.name(),
                        num(row.report.mechanism.alpha),
                        std::string(objective_name(row.report.objective)),
                        std::to_string(row.report.winner),
                        std::to_string(row.report.optimal),
                        num(row.report.ratio),
                        row.bound ? num(*row.bound) : "",
                        row.violation ? "1" : "0"});
    }
    sink.primary(text);
  } else {
    Json results = Json::array();
    for (const auto& row : rows) {
      Json entry{{"instance", row.instance_id},
                 {"space", std::string(space_name(row.space))}};
      entry["report"] = to_json(row.report);
      entry["bound"] = optional_number(row.bound);
      entry["violation"] = row.violation;
      results.push_back(std::move(entry));
    }
    sink.primary(dump(Json{{"tau", tau},
                           {"violation", violation},
                           {"results", results},
                           {"skipped", skipped}}));
  }

  std::vector<std::vector<std::string>> table;
  for (const auto& row : rows) {
    table.push_back({row.instance_id, row.report.mechanism.name(),
                     num(row.report.mechanism.alpha),
                     std::string(objective_name(row.report.objective)),
                     std::to_string(row.report.winner),
                     num(row.report.ratio),
                     row.bound ? num(*row.bound) : "-",
                     row.violation ? "VIOLATION" : "ok"});
  }
  sink.table() << render_table({"instance", "mechanism", "alpha", "objective",
                                "winner", "ratio", "bound", "status"},
                               table);
  return violation ? kCheckFailed : kOk;
}

// --------------------------------------------------------------- construct

struct ConstructOptions {
  std::string id;
  std::size_t n = 2;
  double alpha = kDefaultAlpha;
  double eps = 1e-6;
  double delta = 1e-6;
  std::size_t target = 0;
  std::string check_metric = "auto";
  std::string mechanism;
  std::string output;
  std::optional<double> tau;
};

// Above this many points the O(k^3) metric check is skipped unless forced.
constexpr std::size_t kAutoMetricCheckLimit = 400;

int run_construct(const ConstructOptions& options, std::ostream& out,
                  std::ostream& err) {
  const double tau = resolve_tau(options.tau);
  const auto id = parse_construction_id(options.id);
  if (!id) {
    std::string known;
    for (ConstructionId each : kAllConstructionIds) {
      known += (known.empty() ? "" : ", ") +
               std::string(construction_name(each));
    }
    throw UsageError(fmt::format("unknown construction \"{}\" (known: {})",
                                 options.id, known));
  }
  ConstructionParams params;
  params.n = options.n;
  params.alpha = options.alpha;
  params.eps = options.eps;
  params.delta = options.delta;
  params.target = options.target;
  const Construction c = build(*id, params);

  const std::size_t points =
      n_agents(c.instance) + n_alternatives(c.instance);
  const bool check_metric =
      options.check_metric == "on" ||
      (options.check_metric == "auto" && points <= kAutoMetricCheckLimit);
  const VerifyReport report = verify(c, 10 * tau, check_metric);
  const double realized_ratio =
      report.realized_winner_cost / report.realized_best_cost;

  Json json = to_json(c);
  json["verify"] = to_json(report);
  json["realized_ratio"] = json_number(realized_ratio);

  std::optional<WinnerResult> picked;
  if (!options.mechanism.empty()) {
    const auto mechanism =
        make_mechanism(parse_kind(options.mechanism), options.alpha);
    picked = run_mechanism(mechanism, c.bundle);
    Json run = to_json(*picked);
    run["mechanism"] = mechanism.name();
    run["alpha"] = mechanism.alpha;
    run["matches_adversary"] = picked->winner == c.adversarial_winner;
    json["mechanism_run"] = std::move(run);
  }

  Sink sink(options.output, out, err);
  sink.primary(dump(json));

  std::vector<std::vector<std::string>> rows = {
      {"winner cost", num(c.predicted_winner_cost),
       num(report.realized_winner_cost)},
      {"best cost", num(c.predicted_best_cost),
       num(report.realized_best_cost)},
      {"ratio", num(c.predicted_ratio()), num(realized_ratio)},
      {"asymptotic ratio", num(c.asymptotic_ratio), "-"},
  };
  auto& table = sink.table();
  table << fmt::format("{} n={} alpha={} eps={} delta={} target={} ({})\n",
                       construction_name(c.id), c.params.n,
                       num(c.params.alpha), num(c.params.eps),
                       num(c.params.delta), c.params.target,
                       objective_name(c.objective));
  table << render_table({"quantity", "predicted", "realized"}, rows);
  table << fmt::format("verify: {}{}\n", report.passed() ? "passed" : "FAILED",
                       report.metric_checked ? "" : " (metric check skipped)");
  for (const auto& diff : report.diffs) table << "  " << diff << "\n";
  if (picked) {
    table << fmt::format("{} picks {} (adversary: {})\n", options.mechanism,
                         picked->winner, c.adversarial_winner);
  }
  return report.passed() ? kOk : kCheckFailed;
}

// ------------------------------------------------------------------- sweep

struct SweepOptions {
  std::vector<std::string> files;
  std::size_t random = 0;
  std::string space = "line";
  std::string n = "2:8";
  std::string m = "2:6";
  std::uint64_t seed = 1;
  std::vector<std::string> mechanisms;
  std::vector<double> alphas{kDefaultAlpha};
  std::string objective = "both";
  std::string format = "json";
  std::string output;
  std::size_t threads = 1;
  std::optional<double> tau;
};

struct Cell {
  MechanismId mechanism;
  Objective objective;
  std::size_t evaluated = 0;
  double max_ratio = 0.0;
  std::string argmax;
  std::optional<double> bound;
  std::size_t violations = 0;
};

std::vector<LoadedInstance> random_corpus(const SweepOptions& options) {
  const auto space = parse_space(options.space);
  if (!space) throw UsageError("--space must be line or general");
  const SizeRange n = parse_range(options.n, "--n");
  const SizeRange m = parse_range(options.m, "--m");
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> pick_n(n.lo, n.hi);
  std::uniform_int_distribution<std::size_t> pick_m(m.lo, m.hi);
  std::vector<LoadedInstance> corpus;
  corpus.reserve(options.random);
  for (std::size_t k = 0; k < options.random; ++k) {
    const std::size_t agents = pick_n(rng);
    const std::size_t alternatives = pick_m(rng);
    corpus.push_back({fmt::format("random#{}", k),
                      random_instance(*space, agents, alternatives, rng())});
  }
  return corpus;
}

int run_sweep(const SweepOptions& options, std::ostream& out,
              std::ostream& err) {
  const double tau = resolve_tau(options.tau);
  check_alpha_grid(options.alphas);
  const auto objectives = parse_objectives(options.objective);
  const auto grid = mechanism_grid(options.mechanisms, options.alphas);
  if (options.files.empty() == (options.random == 0)) {
    throw UsageError("sweep needs either instance files or --random N");
  }
  std::vector<LoadedInstance> corpus;
  if (options.random > 0) {
    corpus = random_corpus(options);
  } else {
    for (const auto& path : options.files) {
      auto loaded = load_instances(path);
      std::move(loaded.begin(), loaded.end(), std::back_inserter(corpus));
    }
  }

  std::vector<Cell> cells;
  for (const auto& mechanism : grid) {
    for (Objective objective : objectives) {
      cells.push_back(Cell{mechanism, objective});
    }
  }

  // ratios[k][c]: instance k, cell c; NaN where the mechanism cannot run.
  const double skip = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::vector<double>> ratios(corpus.size());
  std::vector<std::vector<std::optional<double>>> bounds(corpus.size());
  parallel_for(corpus.size(), options.threads, [&](std::size_t k) {
    const Instance& instance = corpus[k].instance;
    ratios[k].assign(cells.size(), skip);
    bounds[k].resize(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!can_run(cells[c].mechanism, instance)) continue;
      ratios[k][c] = distortion(instance, cells[c].mechanism,
                                cells[c].objective, {}, tau)
                         .ratio;
      bounds[k][c] =
          proven_upper_bound(cells[c].mechanism, cells[c].objective,
                             space_of(instance), n_agents(instance));
    }
  });

  for (std::size_t k = 0; k < corpus.size(); ++k) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const double ratio = ratios[k][c];
      if (std::isnan(ratio)) continue;
      Cell& cell = cells[c];
      if (cell.evaluated == 0 || ratio > cell.max_ratio) {
        cell.max_ratio = ratio;
        cell.argmax = corpus[k].id;
        cell.bound = bounds[k][c];
      }
      ++cell.evaluated;
      if (bounds[k][c] && ratio > *bounds[k][c] + tau) ++cell.violations;
    }
  }

  std::size_t violations = 0;
  for (const auto& cell : cells) violations += cell.violations;

  Sink sink(options.output, out, err);
  if (options.format == "csv") {
    std::string text = csv_line({"mechanism", "alpha", "objective",
                                 "evaluated", "max_ratio", "argmax_instance",
                                 "bound", "violations"});
    for (const auto& cell : cells) {
      text += csv_line(
          {cell.mechanism.name(), num(cell.mechanism.alpha),
           std::string(objective_name(cell.objective)),
           std::to_string(cell.evaluated),
           cell.evaluated ? num(cell.max_ratio) : "", cell.argmax,
           cell.bound ? num(*cell.bound) : "",
           std::to_string(cell.violations)});
    }
    sink.primary(text);
  } else {
    Json list = Json::array();
    for (const auto& cell : cells) {
      Json entry{{"mechanism", cell.mechanism.name()},
                 {"alpha", cell.mechanism.alpha},
                 {"objective", std::string(objective_name(cell.objective))},
                 {"evaluated", cell.evaluated}};
      entry["max_ratio"] =
          cell.evaluated ? json_number(cell.max_ratio) : Json(nullptr);
      entry["argmax_instance"] =
          cell.evaluated ? Json(cell.argmax) : Json(nullptr);
      entry["bound"] = optional_number(cell.bound);
      entry["violations"] = cell.violations;
      list.push_back(std::move(entry));
    }
    sink.primary(dump(Json{{"tau", tau},
                           {"instances", corpus.size()},
                           {"violations", violations},
                           {"cells", list}}));
  }

  // One row per (mechanism, alpha), one column per objective:
  // "max ratio / bound".
  std::vector<std::string> header = {"mechanism", "alpha"};
  for (Objective objective : objectives) {
    header.emplace_back(objective_name(objective));
  }
  std::vector<std::vector<std::string>> rows;
  for (std::size_t c = 0; c < cells.size(); c += objectives.size()) {
    std::vector<std::string> row = {cells[c].mechanism.name(),
                                    num(cells[c].mechanism.alpha)};
    for (std::size_t o = 0; o < objectives.size(); ++o) {
      const Cell& cell = cells[c + o];
      std::string entry = cell.evaluated ? num(cell.max_ratio) : "-";
      entry += " / " + (cell.bound ? num(*cell.bound) : std::string("-"));
      if (cell.violations > 0) {
        entry += fmt::format(" ({} VIOLATIONS)", cell.violations);
      }
      row.push_back(std::move(entry));
    }
    rows.push_back(std::move(row));
  }
  sink.table() << fmt::format("{} instances; max ratio / proven bound\n",
                              corpus.size())
               << render_table(header, rows);
  return violations == 0 ? kOk : kCheckFailed;
}

// ------------------------------------------------------------------ search

struct SearchOptions {
  std::string mechanism;
  double alpha = kDefaultAlpha;
  std::string objective = "sc";
  std::string space = "line";
  std::string n = "2:8";
  std::string m = "2";
  std::size_t restarts = 10;
  std::size_t steps = 100;
  double step_size = 0.1;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  bool history = true;
  std::string output;
  std::string witness;
  std::optional<double> tau;
};

int run_search(const SearchOptions& options, std::ostream& out,
               std::ostream& err) {
  const double tau = resolve_tau(options.tau);
  SearchConfig config;
  config.mechanism = make_mechanism(parse_kind(options.mechanism),
                                    options.alpha);
  const auto objective = parse_objective(options.objective);
  if (!objective) throw UsageError("--objective must be sc or mc");
  config.objective = *objective;
  const auto space = parse_space(options.space);
  if (!space) throw UsageError("--space must be line or general");
  config.space = *space;
  config.n_range = parse_range(options.n, "--n");
  config.m_range = parse_range(options.m, "--m");
  config.restarts = options.restarts;
  config.steps = options.steps;
  config.step_size = options.step_size;
  config.seed = options.seed;
  config.threads = options.threads;

  SearchResult result = hill_climb(config);
  // The dictator's SC bound depends on the witness's agent count.
  const auto bound = proven_upper_bound(config.mechanism, config.objective,
                                        config.space,
                                        n_agents(result.best_instance));
  const bool violation = bound && result.best_ratio > *bound + tau;

  Json json{{"config", to_json(config)}, {"tau", tau}};
  json["bound"] = optional_number(bound);
  json["violation"] = violation;
  json["result"] = to_json(result);
  if (!options.history) json["result"].erase("history");

  Sink sink(options.output, out, err);
  sink.primary(dump(json));
  if (!options.witness.empty()) {
    write_text_file(options.witness, dump(to_json(result.best_instance)));
  }
  sink.table() << render_table(
      {"mechanism", "alpha", "objective", "space", "best_ratio", "bound",
       "restart", "evaluations", "status"},
      {{config.mechanism.name(), num(config.mechanism.alpha),
        std::string(objective_name(config.objective)),
        std::string(space_name(config.space)), num(result.best_ratio),
        bound ? num(*bound) : "-", std::to_string(result.best_restart),
        std::to_string(result.evaluations),
        violation ? "VIOLATION" : "ok"}});
  return violation ? kCheckFailed : kOk;
}

void add_tau(CLI::App* command, std::optional<double>& tau) {
  command->add_option("--tau", tau,
                      "Comparison tolerance (default $MDIST_TAU or 1e-9)");
}

void add_output(CLI::App* command, std::string& output) {
  command->add_option("-o,--output", output,
                      "Write the report here instead of stdout");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Metric-distortion mechanisms, bounds and constructions",
               "mdist"};
  app.require_subcommand(1);
  app.fallthrough(false);

  ValidateOptions validate;
  auto* validate_cmd =
      app.add_subcommand("validate", "Check metric axioms of instance files");
  validate_cmd->add_option("files", validate.files, "Instance or matrix files")
      ->required();
  add_output(validate_cmd, validate.output);
  add_tau(validate_cmd, validate.tau);

  const auto format_check = CLI::IsMember({"json", "csv"});

  EvalOptions eval;
  auto* eval_cmd =
      app.add_subcommand("eval", "Distortion of mechanisms on instances");
  eval_cmd->add_option("files", eval.files, "Instance files")->required();
  eval_cmd
      ->add_option("-M,--mechanism", eval.mechanisms,
                   "Mechanisms (repeatable or comma-separated; default all)")
      ->delimiter(',');
  eval_cmd->add_option("-a,--alpha", eval.alphas, "Alpha grid")
      ->delimiter(',');
  eval_cmd->add_option("--objective", eval.objective, "sc, mc or both");
  eval_cmd->add_option("--format", eval.format, "json or csv")
      ->check(format_check);
  add_output(eval_cmd, eval.output);
  add_tau(eval_cmd, eval.tau);

  ConstructOptions construct;
  auto* construct_cmd =
      app.add_subcommand("construct", "Build and verify a lower-bound instance");
  construct_cmd->add_option("--id", construct.id, "Construction name")
      ->required();
  construct_cmd->add_option("--n", construct.n, "Size parameter");
  construct_cmd->add_option("--alpha", construct.alpha, "Approval threshold");
  construct_cmd->add_option("--eps", construct.eps, "Perturbation epsilon");
  construct_cmd->add_option("--delta", construct.delta, "Perturbation delta");
  construct_cmd->add_option("--target", construct.target,
                            "Alternative the adversary makes the winner");
  construct_cmd
      ->add_option("--check-metric", construct.check_metric,
                   "Metric validation: auto, on or off")
      ->check(CLI::IsMember({"auto", "on", "off"}));
  construct_cmd->add_option("--mechanism", construct.mechanism,
                            "Also run this mechanism on the bundle");
  add_output(construct_cmd, construct.output);
  add_tau(construct_cmd, construct.tau);

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Maximum distortion per mechanism, alpha and objective");
  sweep_cmd->add_option("files", sweep.files, "Instance corpus files");
  sweep_cmd->add_option("--random", sweep.random,
                        "Generate this many random instances instead");
  sweep_cmd->add_option("--space", sweep.space, "line or general (--random)");
  sweep_cmd->add_option("--n", sweep.n, "Agent count K or LO:HI (--random)");
  sweep_cmd->add_option("--m", sweep.m,
                        "Alternative count K or LO:HI (--random)");
  sweep_cmd->add_option("--seed", sweep.seed, "Corpus seed (--random)");
  sweep_cmd
      ->add_option("-M,--mechanism", sweep.mechanisms,
                   "Mechanisms (default all)")
      ->delimiter(',');
  sweep_cmd->add_option("-a,--alpha", sweep.alphas, "Alpha grid")
      ->delimiter(',');
  sweep_cmd->add_option("--objective", sweep.objective, "sc, mc or both");
  sweep_cmd->add_option("--format", sweep.format, "json or csv")
      ->check(format_check);
  sweep_cmd->add_option("--threads", sweep.threads,
                        "Worker threads (0 = all cores)");
  add_output(sweep_cmd, sweep.output);
  add_tau(sweep_cmd, sweep.tau);

  SearchOptions search;
  auto* search_cmd =
      app.add_subcommand("search", "Hill-climb for high-distortion instances");
  search_cmd->add_option("--mechanism", search.mechanism, "Mechanism")
      ->required();
  search_cmd->add_option("--alpha", search.alpha, "Approval threshold");
  search_cmd->add_option("--objective", search.objective, "sc or mc");
  search_cmd->add_option("--space", search.space, "line or general");
  search_cmd->add_option("--n", search.n, "Agent count K or LO:HI");
  search_cmd->add_option("--m", search.m, "Alternative count K or LO:HI");
  search_cmd->add_option("--restarts", search.restarts, "Restarts");
  search_cmd->add_option("--steps", search.steps, "Steps per restart");
  search_cmd->add_option("--step-size", search.step_size,
                         "Standard deviation of a coordinate move");
  search_cmd->add_option("--seed", search.seed, "Seed");
  search_cmd->add_option("--threads", search.threads,
                         "Worker threads (0 = all cores)");
  search_cmd->add_flag("!--no-history", search.history,
                       "Omit the accepted-move history");
  search_cmd->add_option("--witness", search.witness,
                         "Write the best instance to this file");
  add_output(search_cmd, search.output);
  add_tau(search_cmd, search.tau);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*validate_cmd) return run_validate(validate, out, err);
    if (*eval_cmd) return run_eval(eval, out, err);
    if (*construct_cmd) return run_construct(construct, out, err);
    if (*sweep_cmd) return run_sweep(sweep, out, err);
    if (*search_cmd) return run_search(search, out, err);
  } catch (const InvariantError& e) {
    err << "mdist: internal check failed: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const UsageError& e) {
    err << "mdist: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "mdist: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace mdist::cli
