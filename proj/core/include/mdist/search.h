#ifndef MDIST_SEARCH_H_
#define MDIST_SEARCH_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mdist/eval.h"
#include "mdist/instance.h"
#include "mdist/mechanisms.h"

namespace mdist {

struct SizeRange {
  std::size_t lo = 1;
  std::size_t hi = 1;
};

struct SearchConfig {
  MechanismId mechanism{MechanismKind::kOmniscient, 1.0};
  Objective objective = Objective::kSocialCost;
  Space space = Space::kLine;
  SizeRange n_range{2, 2};
  SizeRange m_range{2, 2};
  std::size_t restarts = 10;
  std::size_t steps = 100;
  // Standard deviation of each coordinate move, in units of the [0,1] box.
  double step_size = 0.1;
  std::uint64_t seed = 0;
  // Worker threads for independent restarts; results do not depend on it.
  std::size_t threads = 1;
};

struct HistoryEntry {
  std::size_t restart = 0;
  // 0 is the restart's initial instance.
  std::size_t step = 0;
  double ratio = 1.0;
};

struct SearchResult {
  Instance best_instance;
  DistortionReport best_report;
  double best_ratio = 1.0;
  std::size_t best_restart = 0;
  // Every accepted state, restart by restart; ratios never decrease within
  // a restart.
  std::vector<HistoryEntry> history;
  std::uint64_t seed = 0;
  std::size_t evaluations = 0;
};

// Points in the unit box: positions in [0,1] for kLine, points in [0,1]^2
// with Euclidean distances for kGeneral. Deterministic in `seed`.
Instance random_instance(Space space, std::size_t n, std::size_t m,
                         std::uint64_t seed);

// Throws ParameterError for empty ranges or zero budgets and
// UnsupportedError when the mechanism cannot run in config.space.
SearchResult hill_climb(const SearchConfig& config);

}  // namespace mdist

#endif  // MDIST_SEARCH_H_
