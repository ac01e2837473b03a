#ifndef MDIST_CONSTRUCTIONS_H_
#define MDIST_CONSTRUCTIONS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdist/elicitation.h"
#include "mdist/eval.h"
#include "mdist/instance.h"

namespace mdist {

// Lower-bound families. Each one fixes the information a mechanism sees and
// then, for whichever alternative the mechanism picks (the target), places
// agents so that the pick is as bad as possible.
enum class ConstructionId {
  kCyclicSymmetric,
  kSCAllThree,
  kSCDistTAS,
  kSCOrdTAS,
  kTASOnlyLine,
  kLineSCOrdinal1,
  kLineSCOrdinal2,
  kLineSCDist1,
  kLineSCDist2,
  kMCGeneralI1,
  kMCGeneralI2,
  kMCTASOnly,
};

inline constexpr ConstructionId kAllConstructionIds[] = {
    ConstructionId::kCyclicSymmetric, ConstructionId::kSCAllThree,
    ConstructionId::kSCDistTAS,       ConstructionId::kSCOrdTAS,
    ConstructionId::kTASOnlyLine,     ConstructionId::kLineSCOrdinal1,
    ConstructionId::kLineSCOrdinal2,  ConstructionId::kLineSCDist1,
    ConstructionId::kLineSCDist2,     ConstructionId::kMCGeneralI1,
    ConstructionId::kMCGeneralI2,     ConstructionId::kMCTASOnly,
};

// "CyclicSymmetric", ..., "MCGeneral_I1", "MCGeneral_I2", "MCTASOnly".
std::string_view construction_name(ConstructionId id);
std::optional<ConstructionId> parse_construction_id(std::string_view name);

struct ConstructionParams {
  // Ignored by the two-agent families.
  std::size_t n = 2;
  double alpha = 1.0;
  double eps = 1e-6;
  double delta = 1e-6;
  // Index of the alternative the adversary assumes the mechanism picked.
  std::size_t target = 0;
};

struct Construction {
  ConstructionId id;
  ConstructionParams params;
  Objective objective = Objective::kSocialCost;
  Instance instance;
  // The information the proof hands to the mechanism. It does not depend on
  // params.target.
  ElicitationBundle bundle;
  // Orders exact distance ties the way the proof's rankings do.
  TieBreak tie_break;
  std::size_t adversarial_winner = 0;
  std::size_t predicted_best = 0;
  // Closed-form costs of the winner and of predicted_best.
  double predicted_winner_cost = 0.0;
  double predicted_best_cost = 0.0;
  // Limit of the predicted ratio as eps, delta -> 0 and n -> infinity
  // (n - 1 for kTASOnlyLine, 3 - 2/n for the x-branch of kSCDistTAS).
  double asymptotic_ratio = 0.0;

  double predicted_ratio() const {
    return predicted_winner_cost / predicted_best_cost;
  }
};

// Number of alternatives, i.e. the valid target range, for the given
// parameters. Throws ParameterError when n is out of range.
std::size_t construction_alternatives(ConstructionId id, std::size_t n);

// Views carried by the construction's bundle.
ViewSet construction_views(ConstructionId id);

Objective construction_objective(ConstructionId id);

// Throws ParameterError naming the violated constraint.
Construction build(ConstructionId id, const ConstructionParams& params);

struct VerifyReport {
  bool metric_checked = false;
  bool metric_ok = true;
  bool bundle_ok = true;
  bool costs_ok = true;
  double realized_winner_cost = 0.0;
  double realized_best_cost = 0.0;
  // Cost of the true optimum; predicted_best must attain it.
  double realized_optimal_cost = 0.0;
  std::vector<std::string> diffs;

  bool passed() const { return metric_ok && bundle_ok && costs_ok; }
};

// Re-derives the bundle from the instance and compares it with the stored
// one, recomputes both predicted costs (absolute slack `cost_tolerance`),
// checks that predicted_best is optimal
// and, when `check_metric` is set, runs the O(k^3) metric validation.
VerifyReport verify(const Construction& construction,
                    double cost_tolerance = 10 * kDefaultTolerance,
                    bool check_metric = true);

}  // namespace mdist

#endif  // MDIST_CONSTRUCTIONS_H_
