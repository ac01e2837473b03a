#ifndef MDIST_ELICITATION_H_
#define MDIST_ELICITATION_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mdist/instance.h"
#include "mdist/metric.h"

namespace mdist {

// Per-agent ranking of all alternatives, most preferred first.
struct OrdinalProfile {
  std::vector<std::vector<std::size_t>> rankings;

  std::size_t n_agents() const { return rankings.size(); }
  std::size_t top_choice(std::size_t agent) const {
    return rankings[agent].front();
  }
  // position[agent][alt] = rank of alt in agent's order (0 = top).
  std::vector<std::vector<std::size_t>> positions() const;

  bool operator==(const OrdinalProfile&) const = default;
};

// Orders alternatives that sit at exactly the same distance from an agent.
// The default puts the lower alternative index first; a reference profile
// puts whichever comes first in that agent's reference ranking first.
class TieBreak {
 public:
  TieBreak() = default;
  static TieBreak lowest_index() { return TieBreak(); }
  static TieBreak reference(OrdinalProfile profile) {
    TieBreak rule;
    rule.reference_ = std::move(profile);
    return rule;
  }

  bool is_lowest_index() const { return !reference_.has_value(); }
  const std::optional<OrdinalProfile>& reference_profile() const {
    return reference_;
  }

 private:
  std::optional<OrdinalProfile> reference_;
};

// Alpha-threshold approval sets. sets[i] is sorted ascending.
struct TASProfile {
  double alpha = 1.0;
  std::vector<std::vector<std::size_t>> sets;

  std::size_t n_agents() const { return sets.size(); }
  bool approves(std::size_t agent, std::size_t alt) const;

  bool operator==(const TASProfile&) const = default;
};

// Distances between alternatives only.
struct AltDistances {
  DistanceMatrix matrix;

  std::size_t n_alternatives() const { return matrix.size(); }
  double operator()(std::size_t a, std::size_t b) const {
    return matrix(a, b);
  }
};

// Source positions attached to bundles derived from a LineInstance.
struct LinePositions {
  std::vector<double> agent_positions;
  std::vector<double> alternative_positions;

  bool operator==(const LinePositions&) const = default;
};

enum class PointKind { kAgent, kAlternative };

struct LinePoint {
  PointKind kind;
  std::size_t index;
  double position;

  bool operator==(const LinePoint&) const = default;
};

// Agents and alternatives sorted left to right.
struct LineOrdering {
  std::vector<LinePoint> points;

  std::vector<std::size_t> agents_left_to_right() const;
  std::vector<std::size_t> alternatives_left_to_right() const;
};

// Which information views a bundle carries (ORD, DIST, TAS).
struct ViewSet {
  bool ordinal = false;
  bool alt_distances = false;
  bool tas = false;

  static ViewSet all() { return {true, true, true}; }
  bool any() const { return ordinal || alt_distances || tas; }
};

// Mechanism-visible information about one instance.
struct ElicitationBundle {
  std::optional<OrdinalProfile> ordinal;
  std::optional<AltDistances> alt_distances;
  std::optional<TASProfile> tas;
  // Present only for bundles derived from a LineInstance.
  std::optional<LinePositions> line;
  std::string provenance;

  ViewSet views() const {
    return {ordinal.has_value(), alt_distances.has_value(), tas.has_value()};
  }
};

// Sorts each agent's alternatives by distance, ascending; exact ties follow
// `tie_break`.
OrdinalProfile derive_ordinal(const Instance& instance,
                              const TieBreak& tie_break = {});

// A_i = { x : d(i,x) <= alpha * min_y d(i,y) + tolerance }. An agent
// co-located with alternatives approves exactly those at distance 0 (up to
// tolerance). Throws ParameterError if alpha < 1 or is not finite.
TASProfile derive_tas(const Instance& instance, double alpha,
                      double tolerance = kDefaultTolerance);

AltDistances derive_alt_distances(const Instance& instance);

// Derives the requested views and, for line instances, attaches the source
// positions. Throws ParameterError when `views` is empty.
ElicitationBundle derive_bundle(const Instance& instance, ViewSet views,
                                double alpha, const TieBreak& tie_break = {},
                                double tolerance = kDefaultTolerance,
                                std::string provenance = "");

// Left-to-right order read from the bundle's line provenance. At equal
// positions agents precede alternatives, then lower index first.
// Throws UnsupportedError for bundles without line provenance.
LineOrdering line_ordering(const ElicitationBundle& bundle);
LineOrdering line_ordering(const LinePositions& positions);

std::vector<std::size_t> top_choices(const OrdinalProfile& profile);

// Structural checks used on bundles read from files; each throws
// StructuralError (or InvariantError for empty approval sets).
void check_ordinal(const OrdinalProfile& profile, std::size_t n_alternatives);
void check_tas(const TASProfile& tas, std::size_t n_alternatives);
void check_bundle(const ElicitationBundle& bundle);

}  // namespace mdist

#endif  // MDIST_ELICITATION_H_
