#ifndef MDIST_EVAL_H_
#define MDIST_EVAL_H_

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "mdist/elicitation.h"
#include "mdist/instance.h"
#include "mdist/mechanisms.h"

namespace mdist {

enum class Objective { kSocialCost, kMaxCost };

// "sc" / "mc"; parsing also accepts "SocialCost" / "MaxCost".
std::string_view objective_name(Objective objective);
std::optional<Objective> parse_objective(std::string_view name);

// Whether an instance family lives on the real line or in a general metric.
enum class Space { kLine, kGeneral };

std::string_view space_name(Space space);
std::optional<Space> parse_space(std::string_view name);

// Sum (SC) or max (MC) of the agents' distances to `alt`.
double cost(const Instance& instance, std::size_t alt, Objective objective);

// cost() for every alternative.
std::vector<double> all_costs(const Instance& instance, Objective objective);

struct Optimum {
  std::size_t index = 0;
  double cost = 0.0;
};

// Exhaustive argmin over alternatives, lowest index on ties.
Optimum optimal_alternative(const Instance& instance, Objective objective);

struct DistortionReport {
  MechanismId mechanism{MechanismKind::kOmniscient, 1.0};
  Objective objective = Objective::kSocialCost;
  std::size_t winner = 0;
  double winner_cost = 0.0;
  std::size_t optimal = 0;
  double optimal_cost = 0.0;
  // winner_cost / optimal_cost; 1 when both are zero, +inf when only the
  // optimum is zero.
  double ratio = 1.0;
  // Set whenever optimal_cost == 0.
  bool degenerate = false;
  // The mechanism's decision record; empty for the omniscient baseline and
  // for score_winner().
  std::optional<MechanismTrace> trace;
};

// Derives the views the mechanism needs at its alpha, runs it and scores
// the winner against the exhaustive optimum. kOmniscient returns the
// optimum directly.
DistortionReport distortion(const Instance& instance,
                            const MechanismId& mechanism, Objective objective,
                            const TieBreak& tie_break = {},
                            double tolerance = kDefaultTolerance);

// Scores a winner chosen elsewhere, e.g. by an adversary in a lower-bound
// construction.
DistortionReport score_winner(const Instance& instance, std::size_t winner,
                              Objective objective,
                              const MechanismId& mechanism = {
                                  MechanismKind::kOmniscient, 1.0});

struct McConditions {
  // w is approved by every agent.
  bool cond1 = false;
  // w is a min-distance alternative of some agent i whose approval set
  // excludes the MC-optimal alternative o.
  bool cond2 = false;
};

// `tas` must be the alpha-TAS of `instance`. o is the lowest-index MC
// optimum. "Min-distance" compares within `tolerance`.
McConditions check_mc_winner_conditions(const Instance& instance,
                                        const TASProfile& tas,
                                        std::size_t winner,
                                        double tolerance = kDefaultTolerance);

// True iff the winner lies between the leftmost and rightmost agent.
bool interval_winner_check(const LineInstance& instance, std::size_t winner);

// Best known proven worst-case distortion of `mechanism` under `objective`
// in `space`, or nullopt when none is established. Line instances inherit
// general-metric bounds. `n_agents` enters only the dictator's SC bound.
std::optional<double> proven_upper_bound(const MechanismId& mechanism,
                                         Objective objective, Space space,
                                         std::size_t n_agents);

}  // namespace mdist

#endif  // MDIST_EVAL_H_
