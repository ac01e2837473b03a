#include "mdist/mechanisms.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mdist/errors.h"

namespace mdist {

namespace {

struct NamedKind {
  MechanismKind kind;
  std::string_view name;
};

constexpr NamedKind kNames[] = {
    {MechanismKind::kMinisumTAS, "MinisumTAS"},
    {MechanismKind::kEliminationWeightedMajority,
     "EliminationWeightedMajority"},
    {MechanismKind::kMostCompactSet, "MostCompactSet"},
    {MechanismKind::kMaxTASLeftmost, "MaxTASLeftmost"},
    {MechanismKind::kMinimaxTAS, "MinimaxTAS"},
    {MechanismKind::kAnyApproved, "AnyApproved"},
    {MechanismKind::kTopChoiceDictator, "TopChoiceDictator"},
    {MechanismKind::kOmniscient, "Omniscient"},
};

constexpr NamedKind kAliases[] = {
    {MechanismKind::kMinisumTAS, "minisum-tas"},
    {MechanismKind::kEliminationWeightedMajority, "ewm"},
    {MechanismKind::kMostCompactSet, "most-compact-set"},
    {MechanismKind::kMaxTASLeftmost, "max-tas-leftmost"},
    {MechanismKind::kMinimaxTAS, "minimax-tas"},
    {MechanismKind::kAnyApproved, "any-approved"},
    {MechanismKind::kTopChoiceDictator, "top-choice-dictator"},
    {MechanismKind::kOmniscient, "omniscient"},
};

void require_nonempty_sets(const TASProfile& tas) {
  for (std::size_t i = 0; i < tas.sets.size(); ++i) {
    if (tas.sets[i].empty()) {
      std::ostringstream msg;
      msg << "approval set of agent " << i << " is empty";
      throw InvariantError(msg.str());
    }
  }
  if (tas.sets.empty()) throw InvariantError("approval profile has no agents");
}

// set_distance[x] = min_{j in A_i} d(j, x) for one agent.
void set_distances(const AltDistances& alt_dist,
                   const std::vector<std::size_t>& approved,
                   std::vector<double>& out) {
  const std::size_t m = alt_dist.n_alternatives();
  out.assign(m, std::numeric_limits<double>::infinity());
  for (std::size_t j : approved) {
    if (j >= m) throw StructuralError("approved alternative out of range");
    const auto row = alt_dist.matrix.row(j);
    for (std::size_t x = 0; x < m; ++x) out[x] = std::min(out[x], row[x]);
  }
}

std::size_t argmin_lowest(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t x = 1; x < values.size(); ++x) {
    if (values[x] < values[best]) best = x;
  }
  return best;
}

}  // namespace

std::string_view mechanism_name(MechanismKind kind) {
  for (const auto& entry : kNames) {
    if (entry.kind == kind) return entry.name;
  }
  return "unknown";
}

std::optional<MechanismKind> parse_mechanism_kind(std::string_view name) {
  for (const auto& entry : kNames) {
    if (entry.name == name) return entry.kind;
  }
  for (const auto& entry : kAliases) {
    if (entry.name == name) return entry.kind;
  }
  return std::nullopt;
}

MechanismId make_mechanism(MechanismKind kind, double alpha) {
  if (!std::isfinite(alpha) || alpha < 1.0) {
    std::ostringstream msg;
    msg << mechanism_name(kind) << ": alpha must be >= 1, got " << alpha;
    throw ParameterError(msg.str());
  }
  if (kind == MechanismKind::kEliminationWeightedMajority && alpha <= 1.0) {
    throw ParameterError("EliminationWeightedMajority: alpha must be > 1 so "
                         "that the weight (alpha+1)/(alpha-1) is finite");
  }
  if (kind == MechanismKind::kTopChoiceDictator && alpha != 1.0) {
    throw ParameterError("TopChoiceDictator: alpha must be 1");
  }
  return {kind, alpha};
}

Requirements requirements(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kMinisumTAS:
    case MechanismKind::kMinimaxTAS:
      return {{.alt_distances = true, .tas = true}, false};
    case MechanismKind::kEliminationWeightedMajority:
      return {{.ordinal = true, .tas = true}, true};
    case MechanismKind::kMostCompactSet:
      return {{.ordinal = true, .alt_distances = true, .tas = true}, false};
    case MechanismKind::kMaxTASLeftmost:
      return {{.tas = true}, true};
    case MechanismKind::kAnyApproved:
    case MechanismKind::kTopChoiceDictator:
      return {{.tas = true}, false};
    case MechanismKind::kOmniscient:
      return {{}, false};
  }
  return {};
}

WinnerResult minisum_tas_distance(const AltDistances& alt_dist,
                                  const TASProfile& tas) {
  require_nonempty_sets(tas);
  ScoreTrace trace;
  trace.scores.assign(alt_dist.n_alternatives(), 0.0);
  std::vector<double> to_set;
  for (const auto& approved : tas.sets) {
    set_distances(alt_dist, approved, to_set);
    for (std::size_t x = 0; x < to_set.size(); ++x) trace.scores[x] += to_set[x];
  }
  const std::size_t winner = argmin_lowest(trace.scores);
  return {winner, std::move(trace)};
}

WinnerResult minimax_tas_distance(const AltDistances& alt_dist,
                                  const TASProfile& tas) {
  require_nonempty_sets(tas);
  ScoreTrace trace;
  trace.scores.assign(alt_dist.n_alternatives(), 0.0);
  std::vector<double> to_set;
  for (const auto& approved : tas.sets) {
    set_distances(alt_dist, approved, to_set);
    for (std::size_t x = 0; x < to_set.size(); ++x) {
      trace.scores[x] = std::max(trace.scores[x], to_set[x]);
    }
  }
  const std::size_t winner = argmin_lowest(trace.scores);
  return {winner, std::move(trace)};
}

WinnerResult elimination_weighted_majority(const LineOrdering& line_order,
                                           const OrdinalProfile& ordinal,
                                           const TASProfile& tas) {
  if (!(tas.alpha > 1.0) || !std::isfinite(tas.alpha)) {
    throw ParameterError("ewm: alpha must be > 1");
  }
  require_nonempty_sets(tas);
  const auto agents = line_order.agents_left_to_right();
  const auto alternatives = line_order.alternatives_left_to_right();
  const std::size_t n = agents.size();
  if (n == 0 || n != ordinal.n_agents() || n != tas.n_agents()) {
    throw StructuralError("ewm: line ordering, ordinal profile and approval "
                          "sets disagree on the number of agents");
  }

  EliminationTrace trace;
  trace.median_agent = agents[(n - 1) / 2];
  trace.x = ordinal.top_choice(trace.median_agent);
  const auto at = std::find(alternatives.begin(), alternatives.end(), trace.x);
  if (at == alternatives.end()) {
    throw StructuralError("ewm: top choice missing from the line ordering");
  }
  if (at != alternatives.begin()) trace.left = *(at - 1);
  if (at + 1 != alternatives.end()) trace.right = *(at + 1);

  const auto rank = ordinal.positions();
  auto count_preferring = [&](std::size_t c, std::size_t over) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (rank[i][c] < rank[i][over]) ++count;
    }
    return count;
  };
  if (trace.left) trace.left_over_x = count_preferring(*trace.left, trace.x);
  if (trace.right) trace.right_over_x = count_preferring(*trace.right, trace.x);

  if (trace.left && trace.right) {
    trace.y = trace.right_over_x >= trace.left_over_x ? trace.right
                                                      : trace.left;
  } else if (trace.right) {
    trace.y = trace.right;
  } else if (trace.left) {
    trace.y = trace.left;
  } else {
    return {trace.x, std::move(trace)};
  }

  const std::size_t x = trace.x;
  const std::size_t y = *trace.y;
  const double heavy = (tas.alpha + 1.0) / (tas.alpha - 1.0);
  trace.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool both = tas.approves(i, x) && tas.approves(i, y);
    trace.weights[i] = both ? 1.0 : heavy;
    if (rank[i][x] < rank[i][y]) {
      trace.votes_x += trace.weights[i];
    } else {
      trace.votes_y += trace.weights[i];
    }
  }
  const std::size_t winner = trace.votes_x >= trace.votes_y ? x : y;
  return {winner, std::move(trace)};
}

WinnerResult most_compact_set(std::span<const std::size_t> top_choices,
                              const AltDistances& alt_dist,
                              const TASProfile& tas) {
  require_nonempty_sets(tas);
  const std::size_t n = tas.n_agents();
  const std::size_t m = alt_dist.n_alternatives();
  if (top_choices.size() != n) {
    throw StructuralError("most-compact-set: one top choice per agent "
                          "required");
  }

  CompactSetTrace trace;
  for (std::size_t x = 0; x < m; ++x) {
    bool everyone = true;
    for (std::size_t i = 0; i < n && everyone; ++i) {
      everyone = tas.approves(i, x);
    }
    if (everyone) trace.intersection.push_back(x);
  }
  if (!trace.intersection.empty()) {
    trace.common_alternative = true;
    const std::size_t winner = trace.intersection.front();
    return {winner, std::move(trace)};
  }

  trace.radii.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t top = top_choices[i];
    if (top >= m) throw StructuralError("top choice out of range");
    double radius = 0.0;
    for (std::size_t x : tas.sets[i]) radius = std::max(radius, alt_dist(x, top));
    trace.radii[i] = radius;
  }
  const std::size_t agent = argmin_lowest(trace.radii);
  trace.chosen_agent = agent;
  return {top_choices[agent], std::move(trace)};
}

WinnerResult max_tas_leftmost(const LineOrdering& line_order,
                              const TASProfile& tas) {
  require_nonempty_sets(tas);
  const auto alternatives = line_order.alternatives_left_to_right();
  ApprovalCountTrace trace;
  trace.counts.assign(alternatives.size(), 0);
  for (const auto& approved : tas.sets) {
    for (std::size_t x : approved) {
      if (x >= trace.counts.size()) {
        throw StructuralError("approved alternative out of range");
      }
      ++trace.counts[x];
    }
  }
  const std::size_t best =
      *std::max_element(trace.counts.begin(), trace.counts.end());
  for (std::size_t x = 0; x < trace.counts.size(); ++x) {
    if (trace.counts[x] == best) trace.most_approved.push_back(x);
  }
  for (std::size_t x : alternatives) {
    if (trace.counts[x] == best) return {x, std::move(trace)};
  }
  throw InvariantError("max-tas-leftmost: empty argmax");
}

WinnerResult any_approved(const TASProfile& tas) {
  require_nonempty_sets(tas);
  return {tas.sets[0].front(), AgentPickTrace{0}};
}

WinnerResult top_choice_dictator(const TASProfile& tas) {
  if (tas.alpha != 1.0) {
    throw ParameterError("top-choice-dictator: approval sets must use "
                         "alpha = 1");
  }
  require_nonempty_sets(tas);
  return {tas.sets[0].front(), AgentPickTrace{0}};
}

WinnerResult run_mechanism(const MechanismId& id,
                           const ElicitationBundle& bundle) {
  if (id.kind == MechanismKind::kOmniscient) {
    throw UnsupportedError("the omniscient baseline needs the instance, not "
                           "a bundle");
  }
  const Requirements need = requirements(id.kind);
  auto missing = [&](const char* view) {
    throw UnsupportedError(std::string(mechanism_name(id.kind)) +
                           " requires the " + view + " view");
  };
  if (need.views.ordinal && !bundle.ordinal) missing("ordinal");
  if (need.views.alt_distances && !bundle.alt_distances) {
    missing("alternative-distance");
  }
  if (need.views.tas && !bundle.tas) missing("threshold-approval");
  if (need.views.tas && std::abs(bundle.tas->alpha - id.alpha) > 1e-12) {
    std::ostringstream msg;
    msg << mechanism_name(id.kind) << " configured with alpha " << id.alpha
        << " but the bundle's approval sets use alpha " << bundle.tas->alpha;
    throw ParameterError(msg.str());
  }

  switch (id.kind) {
    case MechanismKind::kMinisumTAS:
      return minisum_tas_distance(*bundle.alt_distances, *bundle.tas);
    case MechanismKind::kMinimaxTAS:
      return minimax_tas_distance(*bundle.alt_distances, *bundle.tas);
    case MechanismKind::kEliminationWeightedMajority:
      return elimination_weighted_majority(line_ordering(bundle),
                                           *bundle.ordinal, *bundle.tas);
    case MechanismKind::kMostCompactSet: {
      const auto tops = top_choices(*bundle.ordinal);
      return most_compact_set(tops, *bundle.alt_distances, *bundle.tas);
    }
    case MechanismKind::kMaxTASLeftmost:
      return max_tas_leftmost(line_ordering(bundle), *bundle.tas);
    case MechanismKind::kAnyApproved:
      return any_approved(*bundle.tas);
    case MechanismKind::kTopChoiceDictator:
      return top_choice_dictator(*bundle.tas);
    case MechanismKind::kOmniscient:
      break;
  }
  throw UnsupportedError("unknown mechanism");
}

}  // namespace mdist
