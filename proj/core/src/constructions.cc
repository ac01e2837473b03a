#include "mdist/constructions.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>
#include <utility>

#include "mdist/errors.h"

namespace mdist {

namespace {

struct NamedId {
  ConstructionId id;
  std::string_view name;
};

constexpr NamedId kNames[] = {
    {ConstructionId::kCyclicSymmetric, "CyclicSymmetric"},
    {ConstructionId::kSCAllThree, "SCAllThree"},
    {ConstructionId::kSCDistTAS, "SCDistTAS"},
    {ConstructionId::kSCOrdTAS, "SCOrdTAS"},
    {ConstructionId::kTASOnlyLine, "TASOnlyLine"},
    {ConstructionId::kLineSCOrdinal1, "LineSCOrdinal1"},
    {ConstructionId::kLineSCOrdinal2, "LineSCOrdinal2"},
    {ConstructionId::kLineSCDist1, "LineSCDist1"},
    {ConstructionId::kLineSCDist2, "LineSCDist2"},
    {ConstructionId::kMCGeneralI1, "MCGeneral_I1"},
    {ConstructionId::kMCGeneralI2, "MCGeneral_I2"},
    {ConstructionId::kMCTASOnly, "MCTASOnly"},
};

void require(bool ok, ConstructionId id, const std::string& constraint) {
  if (!ok) {
    throw ParameterError(std::string(construction_name(id)) + ": requires " +
                         constraint);
  }
}

// (x - from) mod n for indices in [0, n).
std::size_t cyclic_offset(std::size_t x, std::size_t from, std::size_t n) {
  return (x + n - from) % n;
}

// Agent-to-alternative and alternative-to-alternative distances. Agent pairs
// are completed through the best alternative hub, min_a d(p,a) + d(a,q),
// which yields a metric whenever the given entries are triangle-consistent.
struct BipartiteSpec {
  std::size_t n;
  std::size_t m;
  std::vector<double> agent_alt;  // n x m
  DistanceMatrix alt_alt;

  BipartiteSpec(std::size_t agents, std::size_t alternatives)
      : n(agents), m(alternatives), agent_alt(agents * alternatives, 0.0),
        alt_alt(alternatives) {}

  double& at(std::size_t agent, std::size_t alt) {
    return agent_alt[agent * m + alt];
  }

  GeneralInstance to_instance() const {
    DistanceMatrix joint(n + m);
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t x = 0; x < m; ++x) {
        joint.set_symmetric(p, n + x, agent_alt[p * m + x]);
      }
    }
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) joint(n + a, n + b) = alt_alt(a, b);
    }
    for (std::size_t p = 0; p < n; ++p) {
      const double* row_p = agent_alt.data() + p * m;
      for (std::size_t q = p + 1; q < n; ++q) {
        const double* row_q = agent_alt.data() + q * m;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t x = 0; x < m; ++x) {
          best = std::min(best, row_p[x] + row_q[x]);
        }
        joint.set_symmetric(p, q, best);
      }
    }
    return GeneralInstance(n, m, std::move(joint));
  }
};

// Shortest-path distances between selected nodes of a weighted graph.
class Graph {
 public:
  explicit Graph(std::size_t nodes) : adjacency_(nodes) {}

  void add_edge(std::size_t a, std::size_t b, double length) {
    adjacency_[a].push_back({b, length});
    adjacency_[b].push_back({a, length});
  }

  std::vector<double> distances_from(std::size_t source) const {
    std::vector<double> dist(adjacency_.size(),
                             std::numeric_limits<double>::infinity());
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
    dist[source] = 0.0;
    frontier.push({0.0, source});
    while (!frontier.empty()) {
      const auto [d, node] = frontier.top();
      frontier.pop();
      if (d > dist[node]) continue;
      for (const auto& [next, length] : adjacency_[node]) {
        if (d + length < dist[next]) {
          dist[next] = d + length;
          frontier.push({dist[next], next});
        }
      }
    }
    return dist;
  }

  // Metric induced on `points` (joint agent-then-alternative order).
  DistanceMatrix induced(const std::vector<std::size_t>& points) const {
    DistanceMatrix result(points.size());
    for (std::size_t a = 0; a < points.size(); ++a) {
      const auto dist = distances_from(points[a]);
      for (std::size_t b = 0; b < points.size(); ++b) {
        result(a, b) = dist[points[b]];
      }
    }
    // Dijkstra sums edges in different orders from each end; keep the
    // smaller value so the matrix is exactly symmetric.
    for (std::size_t a = 0; a < points.size(); ++a) {
      for (std::size_t b = a + 1; b < points.size(); ++b) {
        result.set_symmetric(a, b, std::min(result(a, b), result(b, a)));
      }
    }
    return result;
  }

 private:
  struct Edge {
    std::size_t to;
    double length;
  };
  std::vector<std::vector<Edge>> adjacency_;
};

struct Intended {
  std::optional<OrdinalProfile> ordinal;
  TASProfile tas;
};

Construction assemble(ConstructionId id, const ConstructionParams& params,
                      Instance instance, const Intended& intended) {
  const ViewSet views = construction_views(id);
  TieBreak tie_break = intended.ordinal ? TieBreak::reference(*intended.ordinal)
                                        : TieBreak::lowest_index();
  ElicitationBundle bundle = derive_bundle(instance, views, params.alpha,
                                           tie_break, kDefaultTolerance,
                                           std::string(construction_name(id)));
  // The proof's information replaces the derived views; verify() checks
  // that the instance actually reproduces it.
  if (views.ordinal) bundle.ordinal = intended.ordinal;
  if (views.tas) bundle.tas = intended.tas;
  return Construction{id,
                      params,
                      construction_objective(id),
                      std::move(instance),
                      std::move(bundle),
                      std::move(tie_break)};
}

// a_p first, then b_p, b_{p+1}, ... cyclically, then the other a's in
// ascending index. a's occupy 0..n-1 and b's n..2n-1.
OrdinalProfile a_then_cyclic_b(std::size_t n) {
  OrdinalProfile profile;
  profile.rankings.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    auto& ranking = profile.rankings[p];
    ranking.push_back(p);
    for (std::size_t k = 0; k < n; ++k) ranking.push_back(n + (p + k) % n);
    for (std::size_t a = 0; a < n; ++a) {
      if (a != p) ranking.push_back(a);
    }
  }
  return profile;
}

TASProfile singleton_sets(std::size_t n, double alpha) {
  TASProfile tas;
  tas.alpha = alpha;
  for (std::size_t p = 0; p < n; ++p) tas.sets.push_back({p});
  return tas;
}

Construction build_cyclic(const ConstructionParams& params) {
  const auto id = ConstructionId::kCyclicSymmetric;
  const std::size_t n = params.n;
  const std::size_t t = params.target;
  const double far = std::min(3.0, params.alpha);

  BipartiteSpec spec(n, n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t x = 0; x < n; ++x) {
      // Agent p != t is close to the cyclic run a_p .. a_{t-1}.
      const bool close =
          p == t || cyclic_offset(x, p, n) < cyclic_offset(t, p, n);
      spec.at(p, x) = close ? 1.0 : far;
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) spec.alt_alt(a, b) = a == b ? 0.0 : 2.0;
  }

  Intended intended;
  intended.ordinal = OrdinalProfile{};
  intended.ordinal->rankings.resize(n);
  intended.tas.alpha = params.alpha;
  intended.tas.sets.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t k = 0; k < n; ++k) {
      intended.ordinal->rankings[p].push_back((p + k) % n);
      intended.tas.sets[p].push_back(k);
    }
  }

  auto c = assemble(id, params, spec.to_instance(), intended);
  c.adversarial_winner = t;
  c.predicted_best = (t + n - 1) % n;
  c.predicted_winner_cost = 1.0 + static_cast<double>(n - 1) * far;
  c.predicted_best_cost = static_cast<double>(n);
  c.asymptotic_ratio = far;
  return c;
}

// Shared layout of the two a/b families. `far_b` is agent j's distance to
// the b's outside its cyclic run, `other_a` its distance to a_k (k != j),
// `target_other_a` the target agent's distance to a_k (k != i).
struct ABDistances {
  double far_b;
  double other_a;
  double target_other_a;
  double a_a;
  double a_b;
  double b_b;
};

BipartiteSpec ab_spec(std::size_t n, std::size_t i, double near,
                      const ABDistances& d) {
  BipartiteSpec spec(n, 2 * n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t a = 0; a < n; ++a) {
      spec.at(p, a) = a == p ? 1.0 : (p == i ? d.target_other_a : d.other_a);
    }
    for (std::size_t b = 0; b < n; ++b) {
      const bool close =
          p == i || cyclic_offset(b, p, n) < cyclic_offset(i, p, n);
      spec.at(p, n + b) = close ? near : d.far_b;
    }
  }
  for (std::size_t x = 0; x < 2 * n; ++x) {
    for (std::size_t y = 0; y < 2 * n; ++y) {
      if (x == y) continue;
      const bool xa = x < n;
      const bool ya = y < n;
      spec.alt_alt(x, y) = xa && ya ? d.a_a : (xa != ya ? d.a_b : d.b_b);
    }
  }
  return spec;
}

Construction build_sc_all_three(const ConstructionParams& params) {
  const auto id = ConstructionId::kSCAllThree;
  const std::size_t n = params.n;
  const double alpha = params.alpha;
  const double delta = params.delta;
  const std::size_t i = params.target % n;
  const double near = alpha + delta;

  // Alternative distances are the shortest paths through the agents; the
  // fixed values 2*alpha (a-b) and 1+2*alpha (b-b) of the original layout
  // exceed the two-hop paths through the target agent.
  const ABDistances d{2.0 + alpha,           2.0 + alpha,
                      1.0 + 2.0 * near,      1.0 + 2.0 * alpha,
                      1.0 + near,            2.0 * near};
  const auto spec = ab_spec(n, i, near, d);

  const Intended intended{a_then_cyclic_b(n), singleton_sets(n, alpha)};
  auto c = assemble(id, params, spec.to_instance(), intended);
  c.adversarial_winner = params.target;
  c.predicted_best = n + (i + n - 1) % n;
  const double rest = static_cast<double>(n - 1) * (2.0 + alpha);
  c.predicted_winner_cost = (params.target < n ? 1.0 : near) + rest;
  c.predicted_best_cost = static_cast<double>(n) * near;
  c.asymptotic_ratio = 1.0 + 2.0 / alpha;
  return c;
}

Construction build_sc_ord_tas(const ConstructionParams& params) {
  const auto id = ConstructionId::kSCOrdTAS;
  const std::size_t n = params.n;
  const double alpha = params.alpha;
  const double delta = params.delta;
  const std::size_t i = params.target % n;
  const double near = alpha + delta;

  // Alternative distances are the metric closure of the agent distances.
  const ABDistances d{1.0 + 2.0 * alpha,
                      1.0 + 2.0 * near,
                      1.0 + 2.0 * near,
                      2.0 + 2.0 * near,
                      1.0 + near,
                      2.0 * near};
  auto spec = ab_spec(n, i, near, d);
  // a_j to a b outside j's run: via j it is 2 + 2*alpha, via another b
  // 1 + 3*near; both routes exist.
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t b = 0; b < n; ++b) {
      const bool close =
          p == i || cyclic_offset(b, p, n) < cyclic_offset(i, p, n);
      if (!close) {
        const double far_route =
            std::min(2.0 + 2.0 * alpha, 1.0 + 3.0 * near);
        spec.alt_alt.set_symmetric(p, n + b, far_route);
      }
    }
  }

  const Intended intended{a_then_cyclic_b(n), singleton_sets(n, alpha)};
  auto c = assemble(id, params, spec.to_instance(), intended);
  c.adversarial_winner = params.target;
  c.predicted_best = n + (i + n - 1) % n;
  c.predicted_winner_cost =
      params.target < n
          ? 1.0 + static_cast<double>(n - 1) * (1.0 + 2.0 * near)
          : near + static_cast<double>(n - 1) * (1.0 + 2.0 * alpha);
  c.predicted_best_cost = static_cast<double>(n) * near;
  c.asymptotic_ratio = 2.0 + 1.0 / alpha;
  return c;
}

Construction build_sc_dist_tas(const ConstructionParams& params) {
  const auto id = ConstructionId::kSCDistTAS;
  const std::size_t n = params.n;
  const double alpha = params.alpha;
  const double eps = params.eps;
  const double plus = alpha + eps;
  const std::size_t t = params.target;
  const std::size_t y = 2 * n;
  const std::size_t w = 2 * n + 1;

  // Graph nodes: x_i = i, z_i = n+i, y, w, then green g_i and red r_i.
  auto green = [&](std::size_t k) { return 2 * n + 2 + k; };
  auto red = [&](std::size_t k) { return 3 * n + 2 + k; };
  Graph graph(4 * n + 2);
  for (std::size_t k = 0; k < n; ++k) {
    graph.add_edge(w, green(k), plus);
    graph.add_edge(green(k), k, 1.0);
    graph.add_edge(k, n + k, alpha - 1.0);
    graph.add_edge(n + k, red(k), 1.0);
    graph.add_edge(red(k), y, plus);
  }

  // Winners among {x, w} put the agents on the red side, {z, y} on green.
  const bool red_side = t < n || t == w;
  std::vector<std::size_t> points;
  for (std::size_t k = 0; k < n; ++k) {
    points.push_back(red_side ? red(k) : green(k));
  }
  for (std::size_t x = 0; x < 2 * n + 2; ++x) points.push_back(x);

  Intended intended;
  intended.tas.alpha = alpha;
  for (std::size_t k = 0; k < n; ++k) intended.tas.sets.push_back({k, n + k});

  auto c = assemble(id, params,
                    GeneralInstance(n, 2 * n + 2, graph.induced(points)),
                    intended);
  const double nd = static_cast<double>(n);
  c.adversarial_winner = t;
  c.predicted_best = red_side ? y : w;
  c.predicted_best_cost = nd * plus;
  if (t == w || t == y) {
    c.predicted_winner_cost = nd * (1.0 + 2.0 * alpha + eps);
    c.asymptotic_ratio = 2.0 + 1.0 / alpha;
  } else {
    c.predicted_winner_cost =
        alpha + (nd - 1.0) * (3.0 * alpha + 2.0 * eps);
    c.asymptotic_ratio = 3.0 - 2.0 / nd;
  }
  return c;
}

Construction build_tas_only_line(const ConstructionParams& params) {
  const auto id = ConstructionId::kTASOnlyLine;
  const std::size_t n = params.n;
  const std::size_t t = params.target;
  const double eps = params.eps;
  const std::size_t zero = t == n - 1 ? 0 : n - 1;
  const double step = eps / static_cast<double>(n - 1);

  // The n-2 remaining agents cluster at step, 2*step, ..., and the median
  // of that cluster is the optimum.
  std::vector<double> positions(n);
  std::size_t rank = 0;
  const std::size_t median_rank = (n - 1) / 2;
  std::size_t best = zero;
  double spread = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == t) {
      positions[k] = 1.0;
    } else if (k == zero) {
      positions[k] = 0.0;
    } else {
      positions[k] = step * static_cast<double>(++rank);
      spread += positions[k];
      if (rank == median_rank) best = k;
    }
  }
  double around_median = 0.0;
  for (std::size_t r = 1; r + 1 < n; ++r) {
    around_median += std::abs(positions[best] - step * static_cast<double>(r));
  }
  // Each agent sits on its own alternative.
  const Intended intended{std::nullopt, singleton_sets(n, params.alpha)};
  auto c = assemble(id, params, LineInstance(positions, positions), intended);
  c.adversarial_winner = t;
  c.predicted_best = best;
  c.predicted_winner_cost = static_cast<double>(n - 1) - spread;
  c.predicted_best_cost = 1.0 + (n > 2 ? around_median : spread);
  c.asymptotic_ratio = static_cast<double>(n - 1);
  return c;
}

// Two alternatives at 0 and `span`; agent positions are given for target 0.
// Target 1 mirrors the line and swaps the agents, which leaves every view
// unchanged.
LineInstance two_alternative_line(double span, double agent0, double agent1,
                                  std::size_t target) {
  if (target == 0) return LineInstance({agent0, agent1}, {0.0, span});
  return LineInstance({span - agent1, span - agent0}, {0.0, span});
}

OrdinalProfile opposed_two_agents() {
  return OrdinalProfile{{{0, 1}, {1, 0}}};
}

TASProfile sets_of(double alpha, std::vector<std::vector<std::size_t>> sets) {
  return TASProfile{alpha, std::move(sets)};
}

Construction build_line_sc_ordinal1(const ConstructionParams& params) {
  const double alpha = params.alpha;
  const double p = 1.0 / (alpha + 1.0) - params.eps;
  const Intended intended{opposed_two_agents(), sets_of(alpha, {{0}, {1}})};
  auto c = assemble(ConstructionId::kLineSCOrdinal1, params,
                    two_alternative_line(1.0, p, 1.0, params.target),
                    intended);
  c.adversarial_winner = params.target;
  c.predicted_best = 1 - params.target;
  c.predicted_winner_cost = p + 1.0;
  c.predicted_best_cost = 1.0 - p;
  c.asymptotic_ratio = 1.0 + 2.0 / alpha;
  return c;
}

Construction build_line_sc_ordinal2(const ConstructionParams& params) {
  const double alpha = params.alpha;
  const double eps = params.eps;
  // The second agent sits beyond b at alpha/(alpha-1): distance 1/(alpha-1)
  // from b and alpha times that from a.
  const double far = alpha / (alpha - 1.0);
  const Intended intended{opposed_two_agents(),
                          sets_of(alpha, {{0, 1}, {0, 1}})};
  auto c = assemble(ConstructionId::kLineSCOrdinal2, params,
                    two_alternative_line(1.0, 0.5 - eps, far, params.target),
                    intended);
  c.adversarial_winner = params.target;
  c.predicted_best = 1 - params.target;
  c.predicted_winner_cost = (0.5 - eps) + far;
  c.predicted_best_cost = (0.5 + eps) + 1.0 / (alpha - 1.0);
  c.asymptotic_ratio = (3.0 * alpha - 1.0) / (alpha + 1.0);
  return c;
}

Construction build_line_sc_dist1(const ConstructionParams& params) {
  const std::size_t n = params.n;
  const double alpha = params.alpha;
  const double span = 1.0 + alpha;
  const double spot = params.target == 0 ? alpha : 1.0;
  TASProfile tas;
  tas.alpha = alpha;
  tas.sets.assign(n, {0, 1});
  auto c = assemble(ConstructionId::kLineSCDist1, params,
                    LineInstance(std::vector<double>(n, spot), {0.0, span}),
                    Intended{std::nullopt, std::move(tas)});
  c.adversarial_winner = params.target;
  c.predicted_best = 1 - params.target;
  c.predicted_winner_cost = static_cast<double>(n) * alpha;
  c.predicted_best_cost = static_cast<double>(n);
  c.asymptotic_ratio = alpha;
  return c;
}

Construction build_line_sc_dist2(const ConstructionParams& params) {
  const double alpha = params.alpha;
  const double eps = params.eps;
  const double span = 1.0 + alpha;
  auto c = assemble(ConstructionId::kLineSCDist2, params,
                    two_alternative_line(span, 1.0 - eps, span, params.target),
                    Intended{std::nullopt, sets_of(alpha, {{0}, {1}})});
  c.adversarial_winner = params.target;
  c.predicted_best = 1 - params.target;
  c.predicted_winner_cost = (1.0 - eps) + span;
  c.predicted_best_cost = alpha + eps;
  c.asymptotic_ratio = 1.0 + 2.0 / alpha;
  return c;
}

Construction build_mc_general_i1(const ConstructionParams& params) {
  const double alpha = params.alpha;
  const double eps = params.eps;
  const double span = 1.0 + alpha + eps;
  auto c = assemble(ConstructionId::kMCGeneralI1, params,
                    two_alternative_line(span, 1.0, 1.0 + 2.0 * alpha + eps,
                                         params.target),
                    Intended{opposed_two_agents(), sets_of(alpha, {{0}, {1}})});
  c.adversarial_winner = params.target;
  c.predicted_best = 1 - params.target;
  c.predicted_winner_cost = 1.0 + 2.0 * alpha + eps;
  c.predicted_best_cost = alpha + eps;
  c.asymptotic_ratio = 2.0 + 1.0 / alpha;
  return c;
}

Construction build_mc_general_i2(const ConstructionParams& params) {
  const double alpha = params.alpha;
  const double beyond = (alpha + 1.0) / (alpha - 1.0);
  auto c = assemble(ConstructionId::kMCGeneralI2, params,
                    two_alternative_line(1.0 + alpha, 1.0, alpha * beyond,
                                         params.target),
                    Intended{opposed_two_agents(),
                             sets_of(alpha, {{0, 1}, {0, 1}})});
  c.adversarial_winner = params.target;
  c.predicted_best = 1 - params.target;
  c.predicted_winner_cost = alpha * beyond;
  // Agent 1 stays at distance alpha from the other alternative, and alpha
  // exceeds (alpha+1)/(alpha-1) once alpha > 1+sqrt(2).
  c.predicted_best_cost = std::max(alpha, beyond);
  c.asymptotic_ratio = alpha * beyond / std::max(alpha, beyond);
  return c;
}

Construction build_mc_tas_only(const ConstructionParams& params) {
  const double alpha = params.alpha;
  const double eps = params.eps;
  const std::size_t t = params.target;
  const Intended intended{std::nullopt,
                          sets_of(alpha, {{0, 1}, {2, 3}})};
  if (t == 4) {
    // The unapproved alternative: both agents sit on their own sets, far
    // from a5.
    auto c = assemble(ConstructionId::kMCTASOnly, params,
                      LineInstance({0.0, eps}, {0.0, 0.0, eps, eps, 1.0}),
                      intended);
    c.adversarial_winner = 4;
    c.predicted_best = 0;
    c.predicted_winner_cost = 1.0;
    c.predicted_best_cost = eps;
    c.asymptotic_ratio = std::numeric_limits<double>::infinity();
    return c;
  }
  // Agent 1 on the right with its set at 1 and alpha beyond it, agent 2
  // mirrored on the left; the target takes the far slot of its side.
  const double near = alpha + 1.0 + eps;
  const double far = 2.0 * alpha + eps;
  std::vector<double> alts{near, near, -near, -near, 0.0};
  alts[t] = t < 2 ? far : -far;
  auto c = assemble(ConstructionId::kMCTASOnly, params,
                    LineInstance({alpha + eps, -alpha - eps}, alts), intended);
  c.adversarial_winner = t;
  c.predicted_best = 4;
  c.predicted_winner_cost = 3.0 * alpha + 2.0 * eps;
  c.predicted_best_cost = alpha + eps;
  c.asymptotic_ratio = 3.0;
  return c;
}

bool is_fixed_pair(ConstructionId id) {
  switch (id) {
    case ConstructionId::kLineSCOrdinal1:
    case ConstructionId::kLineSCOrdinal2:
    case ConstructionId::kLineSCDist2:
    case ConstructionId::kMCGeneralI1:
    case ConstructionId::kMCGeneralI2:
    case ConstructionId::kMCTASOnly:
      return true;
    default:
      return false;
  }
}

void check_params(ConstructionId id, const ConstructionParams& p) {
  const double a = p.alpha;
  require(std::isfinite(a) && a >= 1.0, id, "alpha >= 1");
  require(std::isfinite(p.eps) && p.eps > 0.0, id, "eps > 0");
  require(std::isfinite(p.delta) && p.delta > 0.0, id, "delta > 0");
  const std::size_t m = construction_alternatives(id, p.n);
  if (p.target >= m) {
    std::ostringstream msg;
    msg << "target < " << m;
    require(false, id, msg.str());
  }
  switch (id) {
    case ConstructionId::kSCAllThree:
      require(a < 2.0, id, "alpha < 2");
      require(p.delta < 0.5, id, "delta < 1/2");
      break;
    case ConstructionId::kSCOrdTAS:
      require(p.delta < 0.5, id, "delta < 1/2");
      break;
    case ConstructionId::kSCDistTAS:
      require(p.eps < 1.0, id, "eps < 1");
      break;
    case ConstructionId::kTASOnlyLine:
      require(p.eps < 1.0, id, "eps < 1");
      break;
    case ConstructionId::kLineSCOrdinal1:
      require(p.eps < 1.0 / (a + 1.0), id, "eps < 1/(alpha+1)");
      break;
    case ConstructionId::kLineSCOrdinal2:
      require(a > 1.0, id, "alpha > 1");
      require(p.eps < (a - 1.0) / (2.0 * (a + 1.0)), id,
              "eps < (alpha-1)/(2(alpha+1)) so that the first agent "
              "approves both alternatives");
      break;
    case ConstructionId::kLineSCDist2:
      require(p.eps < 1.0, id, "eps < 1");
      break;
    case ConstructionId::kMCGeneralI1:
      // Agent 2 must not approve a1: alpha^2 < 1 + 2 alpha + eps.
      require(a * a + kDefaultTolerance < 1.0 + 2.0 * a + p.eps, id,
              "alpha^2 < 1 + 2*alpha + eps (alpha <= 1+sqrt(2))");
      break;
    case ConstructionId::kMCGeneralI2:
      require(a > 1.0 + std::sqrt(2.0), id, "alpha > 1+sqrt(2)");
      break;
    case ConstructionId::kMCTASOnly:
      require(p.eps < 0.5, id, "eps < 1/2");
      break;
    default:
      break;
  }
}

}  // namespace

std::string_view construction_name(ConstructionId id) {
  for (const auto& entry : kNames) {
    if (entry.id == id) return entry.name;
  }
  return "unknown";
}

std::optional<ConstructionId> parse_construction_id(std::string_view name) {
  for (const auto& entry : kNames) {
    if (entry.name == name) return entry.id;
  }
  return std::nullopt;
}

std::size_t construction_alternatives(ConstructionId id, std::size_t n) {
  if (!is_fixed_pair(id)) {
    const std::size_t minimum = id == ConstructionId::kLineSCDist1 ? 1 : 2;
    require(n >= minimum, id, minimum == 1 ? "n >= 1" : "n >= 2");
  }
  switch (id) {
    case ConstructionId::kCyclicSymmetric:
    case ConstructionId::kTASOnlyLine:
      return n;
    case ConstructionId::kSCAllThree:
    case ConstructionId::kSCOrdTAS:
      return 2 * n;
    case ConstructionId::kSCDistTAS:
      return 2 * n + 2;
    case ConstructionId::kMCTASOnly:
      return 5;
    default:
      return 2;
  }
}

ViewSet construction_views(ConstructionId id) {
  switch (id) {
    case ConstructionId::kSCDistTAS:
    case ConstructionId::kLineSCDist1:
    case ConstructionId::kLineSCDist2:
      return {.alt_distances = true, .tas = true};
    case ConstructionId::kSCOrdTAS:
      return {.ordinal = true, .tas = true};
    case ConstructionId::kTASOnlyLine:
    case ConstructionId::kMCTASOnly:
      return {.tas = true};
    default:
      return ViewSet::all();
  }
}

Objective construction_objective(ConstructionId id) {
  switch (id) {
    case ConstructionId::kMCGeneralI1:
    case ConstructionId::kMCGeneralI2:
    case ConstructionId::kMCTASOnly:
      return Objective::kMaxCost;
    default:
      return Objective::kSocialCost;
  }
}

Construction build(ConstructionId id, const ConstructionParams& params) {
  ConstructionParams p = params;
  if (is_fixed_pair(id)) p.n = 2;
  check_params(id, p);
  switch (id) {
    case ConstructionId::kCyclicSymmetric:
      return build_cyclic(p);
    case ConstructionId::kSCAllThree:
      return build_sc_all_three(p);
    case ConstructionId::kSCDistTAS:
      return build_sc_dist_tas(p);
    case ConstructionId::kSCOrdTAS:
      return build_sc_ord_tas(p);
    case ConstructionId::kTASOnlyLine:
      return build_tas_only_line(p);
    case ConstructionId::kLineSCOrdinal1:
      return build_line_sc_ordinal1(p);
    case ConstructionId::kLineSCOrdinal2:
      return build_line_sc_ordinal2(p);
    case ConstructionId::kLineSCDist1:
      return build_line_sc_dist1(p);
    case ConstructionId::kLineSCDist2:
      return build_line_sc_dist2(p);
    case ConstructionId::kMCGeneralI1:
      return build_mc_general_i1(p);
    case ConstructionId::kMCGeneralI2:
      return build_mc_general_i2(p);
    case ConstructionId::kMCTASOnly:
      return build_mc_tas_only(p);
  }
  throw ParameterError("unknown construction");
}

VerifyReport verify(const Construction& construction, double cost_tolerance,
                    bool check_metric) {
  VerifyReport report;
  const auto& instance = construction.instance;

  if (check_metric) {
    report.metric_checked = true;
    const auto general = to_general(instance);
    const auto metric = validate_metric(general.dist(), kDefaultTolerance, 5);
    report.metric_ok = metric.ok();
    for (const auto& violation : metric.violations) {
      report.diffs.push_back("metric: " + violation.describe());
    }
  }

  const auto& stored = construction.bundle;
  const ViewSet views = stored.views();
  const auto derived =
      derive_bundle(instance, views, construction.params.alpha,
                    construction.tie_break, kDefaultTolerance);
  if (views.ordinal && derived.ordinal != stored.ordinal) {
    report.bundle_ok = false;
    for (std::size_t i = 0; i < derived.ordinal->n_agents(); ++i) {
      if (derived.ordinal->rankings[i] != stored.ordinal->rankings[i]) {
        std::ostringstream msg;
        msg << "ordinal: ranking of agent " << i << " differs";
        report.diffs.push_back(msg.str());
        break;
      }
    }
  }
  if (views.tas && derived.tas != stored.tas) {
    report.bundle_ok = false;
    for (std::size_t i = 0; i < derived.tas->n_agents(); ++i) {
      if (derived.tas->sets[i] != stored.tas->sets[i]) {
        std::ostringstream msg;
        msg << "tas: approval set of agent " << i << " differs";
        report.diffs.push_back(msg.str());
        break;
      }
    }
  }
  if (views.alt_distances) {
    const auto& a = derived.alt_distances->matrix;
    const auto& b = stored.alt_distances->matrix;
    bool same = a.size() == b.size();
    for (std::size_t x = 0; same && x < a.size(); ++x) {
      for (std::size_t y = 0; same && y < a.size(); ++y) {
        if (std::abs(a(x, y) - b(x, y)) > kDefaultTolerance) {
          same = false;
          std::ostringstream msg;
          msg << "alt-distances: (" << x << "," << y << ") is " << a(x, y)
              << ", bundle says " << b(x, y);
          report.diffs.push_back(msg.str());
        }
      }
    }
    report.bundle_ok = report.bundle_ok && same;
  }
  if (derived.line != stored.line) {
    report.bundle_ok = false;
    report.diffs.push_back("line positions differ");
  }

  report.realized_winner_cost = cost(instance, construction.adversarial_winner,
                                     construction.objective);
  report.realized_best_cost =
      cost(instance, construction.predicted_best, construction.objective);
  auto compare = [&](const char* what, double realized, double predicted) {
    if (!(std::abs(realized - predicted) <= cost_tolerance)) {
      report.costs_ok = false;
      std::ostringstream msg;
      msg.precision(17);
      msg << what << " cost " << realized << " vs predicted " << predicted;
      report.diffs.push_back(msg.str());
    }
  };
  compare("winner", report.realized_winner_cost,
          construction.predicted_winner_cost);
  compare("best", report.realized_best_cost, construction.predicted_best_cost);
  const auto optimum = optimal_alternative(instance, construction.objective);
  report.realized_optimal_cost = optimum.cost;
  if (optimum.cost < report.realized_best_cost - cost_tolerance) {
    report.costs_ok = false;
    std::ostringstream msg;
    msg.precision(17);
    msg << "best: alternative " << optimum.index << " costs " << optimum.cost
        << ", below predicted best " << construction.predicted_best;
    report.diffs.push_back(msg.str());
  }
  return report;
}

}  // namespace mdist
