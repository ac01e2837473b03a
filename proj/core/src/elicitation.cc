#include "mdist/elicitation.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "mdist/errors.h"

namespace mdist {

std::vector<std::vector<std::size_t>> OrdinalProfile::positions() const {
  std::vector<std::vector<std::size_t>> result(rankings.size());
  for (std::size_t i = 0; i < rankings.size(); ++i) {
    result[i].resize(rankings[i].size());
    for (std::size_t rank = 0; rank < rankings[i].size(); ++rank) {
      result[i][rankings[i][rank]] = rank;
    }
  }
  return result;
}

bool TASProfile::approves(std::size_t agent, std::size_t alt) const {
  const auto& set = sets[agent];
  return std::binary_search(set.begin(), set.end(), alt);
}

std::vector<std::size_t> LineOrdering::agents_left_to_right() const {
  std::vector<std::size_t> result;
  for (const auto& point : points) {
    if (point.kind == PointKind::kAgent) result.push_back(point.index);
  }
  return result;
}

std::vector<std::size_t> LineOrdering::alternatives_left_to_right() const {
  std::vector<std::size_t> result;
  for (const auto& point : points) {
    if (point.kind == PointKind::kAlternative) result.push_back(point.index);
  }
  return result;
}

void check_ordinal(const OrdinalProfile& profile, std::size_t n_alternatives) {
  for (std::size_t i = 0; i < profile.rankings.size(); ++i) {
    const auto& ranking = profile.rankings[i];
    std::vector<bool> seen(n_alternatives, false);
    bool ok = ranking.size() == n_alternatives;
    for (std::size_t alt : ranking) {
      if (!ok) break;
      if (alt >= n_alternatives || seen[alt]) {
        ok = false;
      } else {
        seen[alt] = true;
      }
    }
    if (!ok) {
      std::ostringstream msg;
      msg << "ranking of agent " << i << " is not a permutation of 0.."
          << n_alternatives - 1;
      throw StructuralError(msg.str());
    }
  }
}

void check_tas(const TASProfile& tas, std::size_t n_alternatives) {
  if (!std::isfinite(tas.alpha) || tas.alpha < 1.0) {
    throw ParameterError("approval threshold alpha must be >= 1");
  }
  for (std::size_t i = 0; i < tas.sets.size(); ++i) {
    const auto& set = tas.sets[i];
    if (set.empty()) {
      std::ostringstream msg;
      msg << "approval set of agent " << i << " is empty";
      throw InvariantError(msg.str());
    }
    for (std::size_t k = 0; k < set.size(); ++k) {
      if (set[k] >= n_alternatives || (k > 0 && set[k] <= set[k - 1])) {
        std::ostringstream msg;
        msg << "approval set of agent " << i
            << " must hold distinct ascending indices below "
            << n_alternatives;
        throw StructuralError(msg.str());
      }
    }
  }
}

void check_bundle(const ElicitationBundle& bundle) {
  if (!bundle.views().any()) {
    throw StructuralError("bundle carries no information view");
  }
  std::optional<std::size_t> agents;
  std::optional<std::size_t> alternatives;
  auto agree = [](std::optional<std::size_t>& slot, std::size_t value,
                  const char* what) {
    if (slot && *slot != value) {
      throw StructuralError(std::string("bundle views disagree on the number "
                                        "of ") +
                            what);
    }
    slot = value;
  };
  if (bundle.line) {
    agree(agents, bundle.line->agent_positions.size(), "agents");
    agree(alternatives, bundle.line->alternative_positions.size(),
          "alternatives");
  }
  if (bundle.alt_distances) {
    agree(alternatives, bundle.alt_distances->n_alternatives(),
          "alternatives");
  }
  if (bundle.ordinal) {
    agree(agents, bundle.ordinal->n_agents(), "agents");
    if (!bundle.ordinal->rankings.empty()) {
      agree(alternatives, bundle.ordinal->rankings.front().size(),
            "alternatives");
    }
  }
  if (bundle.tas) agree(agents, bundle.tas->n_agents(), "agents");
  if (!agents || *agents == 0) {
    throw StructuralError("bundle has no agents");
  }
  if (!alternatives || *alternatives == 0) {
    if (!bundle.tas) throw StructuralError("bundle has no alternatives");
    std::size_t largest = 0;
    for (const auto& set : bundle.tas->sets) {
      for (std::size_t x : set) largest = std::max(largest, x + 1);
    }
    alternatives = largest;
  }
  if (bundle.ordinal) check_ordinal(*bundle.ordinal, *alternatives);
  if (bundle.tas) check_tas(*bundle.tas, *alternatives);
}

OrdinalProfile derive_ordinal(const Instance& instance,
                              const TieBreak& tie_break) {
  const std::size_t n = n_agents(instance);
  const std::size_t m = n_alternatives(instance);
  const auto& reference = tie_break.reference_profile();
  if (reference) {
    if (reference->n_agents() != n) {
      throw StructuralError("tie-break reference profile has the wrong "
                            "number of agents");
    }
    check_ordinal(*reference, m);
  }
  const auto reference_positions =
      reference ? reference->positions()
                : std::vector<std::vector<std::size_t>>{};

  OrdinalProfile profile;
  profile.rankings.resize(n);
  std::vector<double> dist(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t x = 0; x < m; ++x) {
      dist[x] = agent_to_alternative(instance, i, x);
    }
    auto& ranking = profile.rankings[i];
    ranking.resize(m);
    std::iota(ranking.begin(), ranking.end(), std::size_t{0});
    const std::vector<std::size_t>* priority =
        reference ? &reference_positions[i] : nullptr;
    std::sort(ranking.begin(), ranking.end(),
              [&](std::size_t a, std::size_t b) {
                if (dist[a] != dist[b]) return dist[a] < dist[b];
                if (priority) return (*priority)[a] < (*priority)[b];
                return a < b;
              });
  }
  return profile;
}

TASProfile derive_tas(const Instance& instance, double alpha,
                      double tolerance) {
  if (!std::isfinite(alpha) || alpha < 1.0) {
    std::ostringstream msg;
    msg << "approval threshold alpha must be >= 1, got " << alpha;
    throw ParameterError(msg.str());
  }
  const std::size_t n = n_agents(instance);
  const std::size_t m = n_alternatives(instance);
  TASProfile tas;
  tas.alpha = alpha;
  tas.sets.resize(n);
  std::vector<double> dist(m);
  for (std::size_t i = 0; i < n; ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < m; ++x) {
      dist[x] = agent_to_alternative(instance, i, x);
      nearest = std::min(nearest, dist[x]);
    }
    const double threshold = alpha * nearest + tolerance;
    for (std::size_t x = 0; x < m; ++x) {
      if (dist[x] <= threshold) tas.sets[i].push_back(x);
    }
  }
  return tas;
}

AltDistances derive_alt_distances(const Instance& instance) {
  const std::size_t m = n_alternatives(instance);
  AltDistances result{DistanceMatrix(m)};
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      result.matrix(a, b) = between_alternatives(instance, a, b);
    }
  }
  return result;
}

ElicitationBundle derive_bundle(const Instance& instance, ViewSet views,
                                double alpha, const TieBreak& tie_break,
                                double tolerance, std::string provenance) {
  if (!views.any()) {
    throw ParameterError("a bundle needs at least one information view");
  }
  ElicitationBundle bundle;
  bundle.provenance = std::move(provenance);
  if (views.ordinal) bundle.ordinal = derive_ordinal(instance, tie_break);
  if (views.alt_distances) bundle.alt_distances = derive_alt_distances(instance);
  if (views.tas) bundle.tas = derive_tas(instance, alpha, tolerance);
  if (const auto* line = as_line(instance)) {
    bundle.line = LinePositions{line->agent_positions(),
                                line->alternative_positions()};
  }
  return bundle;
}

LineOrdering line_ordering(const LinePositions& positions) {
  LineOrdering ordering;
  for (std::size_t i = 0; i < positions.agent_positions.size(); ++i) {
    ordering.points.push_back(
        {PointKind::kAgent, i, positions.agent_positions[i]});
  }
  for (std::size_t x = 0; x < positions.alternative_positions.size(); ++x) {
    ordering.points.push_back(
        {PointKind::kAlternative, x, positions.alternative_positions[x]});
  }
  std::sort(ordering.points.begin(), ordering.points.end(),
            [](const LinePoint& a, const LinePoint& b) {
              if (a.position != b.position) return a.position < b.position;
              if (a.kind != b.kind) return a.kind == PointKind::kAgent;
              return a.index < b.index;
            });
  return ordering;
}

LineOrdering line_ordering(const ElicitationBundle& bundle) {
  if (!bundle.line) {
    throw UnsupportedError("bundle has no line provenance; line ordering is "
                           "only available for bundles derived from line "
                           "instances");
  }
  return line_ordering(*bundle.line);
}

std::vector<std::size_t> top_choices(const OrdinalProfile& profile) {
  std::vector<std::size_t> result;
  result.reserve(profile.n_agents());
  for (const auto& ranking : profile.rankings) result.push_back(ranking.front());
  return result;
}

}  // namespace mdist
