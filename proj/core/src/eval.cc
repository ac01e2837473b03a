#include "mdist/eval.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mdist/errors.h"

namespace mdist {

std::string_view objective_name(Objective objective) {
  return objective == Objective::kSocialCost ? "sc" : "mc";
}

std::optional<Objective> parse_objective(std::string_view name) {
  if (name == "sc" || name == "SocialCost") return Objective::kSocialCost;
  if (name == "mc" || name == "MaxCost") return Objective::kMaxCost;
  return std::nullopt;
}

std::string_view space_name(Space space) {
  return space == Space::kLine ? "line" : "general";
}

std::optional<Space> parse_space(std::string_view name) {
  if (name == "line") return Space::kLine;
  if (name == "general") return Space::kGeneral;
  return std::nullopt;
}

double cost(const Instance& instance, std::size_t alt, Objective objective) {
  if (alt >= n_alternatives(instance)) {
    throw StructuralError("alternative index out of range");
  }
  const std::size_t n = n_agents(instance);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = agent_to_alternative(instance, i, alt);
    total = objective == Objective::kSocialCost ? total + d
                                                : std::max(total, d);
  }
  return total;
}

std::vector<double> all_costs(const Instance& instance, Objective objective) {
  const std::size_t m = n_alternatives(instance);
  std::vector<double> costs(m);
  for (std::size_t x = 0; x < m; ++x) costs[x] = cost(instance, x, objective);
  return costs;
}

Optimum optimal_alternative(const Instance& instance, Objective objective) {
  const auto costs = all_costs(instance, objective);
  Optimum best{0, costs[0]};
  for (std::size_t x = 1; x < costs.size(); ++x) {
    if (costs[x] < best.cost) best = {x, costs[x]};
  }
  return best;
}

namespace {

DistortionReport make_report(const Instance& instance, std::size_t winner,
                             Objective objective, const MechanismId& id,
                             const Optimum& optimum) {
  DistortionReport report;
  report.mechanism = id;
  report.objective = objective;
  report.winner = winner;
  report.winner_cost = cost(instance, winner, objective);
  report.optimal = optimum.index;
  report.optimal_cost = optimum.cost;
  if (optimum.cost > 0.0) {
    report.ratio = report.winner_cost / optimum.cost;
  } else {
    report.degenerate = true;
    report.ratio = report.winner_cost > 0.0
                       ? std::numeric_limits<double>::infinity()
                       : 1.0;
  }
  return report;
}

}  // namespace

DistortionReport score_winner(const Instance& instance, std::size_t winner,
                              Objective objective,
                              const MechanismId& mechanism) {
  return make_report(instance, winner, objective, mechanism,
                     optimal_alternative(instance, objective));
}

DistortionReport distortion(const Instance& instance,
                            const MechanismId& mechanism, Objective objective,
                            const TieBreak& tie_break, double tolerance) {
  const Optimum optimum = optimal_alternative(instance, objective);
  if (mechanism.kind == MechanismKind::kOmniscient) {
    return make_report(instance, optimum.index, objective, mechanism, optimum);
  }
  const Requirements need = requirements(mechanism.kind);
  if (need.line_order && !is_line(instance)) {
    throw UnsupportedError(mechanism.name() +
                           " only runs on line instances");
  }
  const auto bundle = derive_bundle(instance, need.views, mechanism.alpha,
                                    tie_break, tolerance);
  auto result = run_mechanism(mechanism, bundle);
  auto report =
      make_report(instance, result.winner, objective, mechanism, optimum);
  report.trace = std::move(result.trace);
  return report;
}

McConditions check_mc_winner_conditions(const Instance& instance,
                                        const TASProfile& tas,
                                        std::size_t winner,
                                        double tolerance) {
  const std::size_t n = n_agents(instance);
  const std::size_t m = n_alternatives(instance);
  if (tas.n_agents() != n) {
    throw StructuralError("approval profile does not match the instance");
  }
  if (winner >= m) throw StructuralError("winner index out of range");
  const std::size_t o = optimal_alternative(instance, Objective::kMaxCost).index;

  McConditions result;
  result.cond1 = true;
  for (std::size_t i = 0; i < n && result.cond1; ++i) {
    result.cond1 = tas.approves(i, winner);
  }
  for (std::size_t i = 0; i < n && !result.cond2; ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < m; ++x) {
      nearest = std::min(nearest, agent_to_alternative(instance, i, x));
    }
    const bool closest =
        agent_to_alternative(instance, i, winner) <= nearest + tolerance;
    result.cond2 = closest && !tas.approves(i, o);
  }
  return result;
}

bool interval_winner_check(const LineInstance& instance, std::size_t winner) {
  if (winner >= instance.n_alternatives()) {
    throw StructuralError("winner index out of range");
  }
  const auto& agents = instance.agent_positions();
  const auto [lo, hi] = std::minmax_element(agents.begin(), agents.end());
  const double at = instance.alternative_positions()[winner];
  return *lo <= at && at <= *hi;
}

namespace {

double two_plus_inverse(double alpha) { return 2.0 + 1.0 / alpha; }

std::optional<double> general_bound(const MechanismId& id, Objective objective,
                                    std::size_t n) {
  const double a = id.alpha;
  const bool sc = objective == Objective::kSocialCost;
  switch (id.kind) {
    case MechanismKind::kOmniscient:
      return 1.0;
    case MechanismKind::kMinisumTAS:
      if (sc) return std::max(a, two_plus_inverse(a));
      return std::nullopt;
    case MechanismKind::kMostCompactSet:
      if (!sc) return std::max(a, two_plus_inverse(a));
      return std::nullopt;
    case MechanismKind::kAnyApproved:
      if (!sc) return 2.0 + a;
      return std::nullopt;
    case MechanismKind::kTopChoiceDictator:
      return sc ? 1.0 + 2.0 * static_cast<double>(n) : 3.0;
    default:
      return std::nullopt;
  }
}

std::optional<double> line_bound(const MechanismId& id, Objective objective) {
  const double a = id.alpha;
  const bool sc = objective == Objective::kSocialCost;
  switch (id.kind) {
    case MechanismKind::kMinisumTAS:
      return sc ? std::max(a, 1.0 + 2.0 / a)
                : std::max(a, two_plus_inverse(a));
    case MechanismKind::kEliminationWeightedMajority:
      if (sc) return std::max((3.0 * a - 1.0) / (a + 1.0), 1.0 + 2.0 / a);
      return std::nullopt;
    case MechanismKind::kMostCompactSet:
    case MechanismKind::kMaxTASLeftmost:
    case MechanismKind::kMinimaxTAS:
      if (!sc) return std::max(a, two_plus_inverse(a));
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

}  // namespace

std::optional<double> proven_upper_bound(const MechanismId& mechanism,
                                         Objective objective, Space space,
                                         std::size_t n_agents) {
  auto bound = general_bound(mechanism, objective, n_agents);
  if (space == Space::kLine) {
    if (const auto line = line_bound(mechanism, objective)) {
      bound = bound ? std::min(*bound, *line) : *line;
    }
  }
  return bound;
}

}  // namespace mdist
