#ifndef MDIST_TESTS_ORACLE_H_
#define MDIST_TESTS_ORACLE_H_

// Brute-force reference implementations for the tests. They work from raw
// positions or raw matrix rows and share no code with the library beyond the
// instance accessors.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "mdist/instance.h"

namespace mdist::oracle {

using Matrix = std::vector<std::vector<double>>;

// Joint (n+m)x(n+m) matrix, agents first, computed from scratch.
inline Matrix joint_matrix(const Instance& instance) {
  if (const auto* line = as_line(instance)) {
    std::vector<double> points = line->agent_positions();
    points.insert(points.end(), line->alternative_positions().begin(),
                  line->alternative_positions().end());
    Matrix d(points.size(), std::vector<double>(points.size()));
    for (std::size_t a = 0; a < points.size(); ++a) {
      for (std::size_t b = 0; b < points.size(); ++b) {
        d[a][b] = std::fabs(points[a] - points[b]);
      }
    }
    return d;
  }
  return std::get<GeneralInstance>(instance).dist().to_rows();
}

inline bool is_metric(const Matrix& d, double tol) {
  const std::size_t k = d.size();
  for (std::size_t a = 0; a < k; ++a) {
    if (d[a][a] != 0.0) return false;
    for (std::size_t b = 0; b < k; ++b) {
      if (d[a][b] < 0.0 || d[a][b] != d[b][a]) return false;
      for (std::size_t c = 0; c < k; ++c) {
        if (d[a][b] > d[a][c] + d[c][b] + tol) return false;
      }
    }
  }
  return true;
}

// Agent-to-alternative distances d[i][x].
inline Matrix agent_alt(const Instance& instance) {
  const Matrix joint = joint_matrix(instance);
  const std::size_t n = n_agents(instance);
  const std::size_t m = n_alternatives(instance);
  Matrix d(n, std::vector<double>(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t x = 0; x < m; ++x) d[i][x] = joint[i][n + x];
  }
  return d;
}

inline Matrix alt_alt(const Instance& instance) {
  const Matrix joint = joint_matrix(instance);
  const std::size_t n = n_agents(instance);
  const std::size_t m = n_alternatives(instance);
  Matrix d(m, std::vector<double>(m));
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) d[x][y] = joint[n + x][n + y];
  }
  return d;
}

inline double social_cost(const Matrix& d, std::size_t x) {
  double total = 0.0;
  for (const auto& row : d) total += row[x];
  return total;
}

inline double max_cost(const Matrix& d, std::size_t x) {
  double worst = 0.0;
  for (const auto& row : d) worst = std::max(worst, row[x]);
  return worst;
}

// Optimal cost by enumeration in a shuffled order.
inline double optimum(const Matrix& d, bool social, std::uint64_t seed = 7) {
  std::vector<std::size_t> order(d.front().size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t x : order) {
    best = std::min(best, social ? social_cost(d, x) : max_cost(d, x));
  }
  return best;
}

inline std::vector<std::vector<std::size_t>> tas(const Matrix& d,
                                                 double alpha, double tol) {
  std::vector<std::vector<std::size_t>> sets(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double nearest = *std::min_element(d[i].begin(), d[i].end());
    for (std::size_t x = 0; x < d[i].size(); ++x) {
      if (d[i][x] <= alpha * nearest + tol) sets[i].push_back(x);
    }
  }
  return sets;
}

inline double set_distance(const Matrix& alt, const std::vector<std::size_t>& set,
                           std::size_t x) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j : set) best = std::min(best, alt[j][x]);
  return best;
}

// Winner of the sum (or max) of set distances, lowest index on ties.
inline std::size_t tas_distance_winner(
    const Matrix& alt, const std::vector<std::vector<std::size_t>>& sets,
    bool sum) {
  std::size_t winner = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < alt.size(); ++x) {
    double score = 0.0;
    for (const auto& set : sets) {
      const double s = set_distance(alt, set, x);
      score = sum ? score + s : std::max(score, s);
    }
    if (score < best) {
      best = score;
      winner = x;
    }
  }
  return winner;
}

// Two-step line rule from positions: lower-median agent's nearest
// alternative x against one line neighbour y, then a weighted pairwise vote.
// Positions are assumed distinct enough that no distance ties occur.
inline std::size_t ewm_winner(const std::vector<double>& agents,
                              const std::vector<double>& alts, double alpha) {
  const std::size_t n = agents.size();
  const std::size_t m = alts.size();
  auto dist = [&](std::size_t i, std::size_t x) {
    return std::fabs(agents[i] - alts[x]);
  };
  auto top = [&](std::size_t i) {
    std::size_t best = 0;
    for (std::size_t x = 1; x < m; ++x) {
      if (dist(i, x) < dist(i, best)) best = x;
    }
    return best;
  };
  std::vector<std::size_t> by_position(n);
  std::iota(by_position.begin(), by_position.end(), 0);
  std::stable_sort(by_position.begin(), by_position.end(),
                   [&](std::size_t a, std::size_t b) {
                     return agents[a] < agents[b];
                   });
  const std::size_t median = by_position[(n - 1) / 2];
  const std::size_t x = top(median);

  std::optional<std::size_t> left;
  std::optional<std::size_t> right;
  for (std::size_t c = 0; c < m; ++c) {
    if (alts[c] < alts[x] && (!left || alts[c] > alts[*left])) left = c;
    if (alts[c] > alts[x] && (!right || alts[c] < alts[*right])) right = c;
  }
  if (!left && !right) return x;
  auto prefer_count = [&](std::size_t c) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) count += dist(i, c) < dist(i, x);
    return count;
  };
  std::size_t y;
  if (!left) {
    y = *right;
  } else if (!right) {
    y = *left;
  } else {
    y = prefer_count(*right) >= prefer_count(*left) ? *right : *left;
  }

  const double heavy = (alpha + 1.0) / (alpha - 1.0);
  double votes_x = 0.0;
  double votes_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < m; ++c) nearest = std::min(nearest, dist(i, c));
    const bool both = dist(i, x) <= alpha * nearest + 1e-9 &&
                      dist(i, y) <= alpha * nearest + 1e-9;
    const double weight = both ? 1.0 : heavy;
    if (dist(i, x) < dist(i, y)) votes_x += weight;
    if (dist(i, y) < dist(i, x)) votes_y += weight;
  }
  return votes_x >= votes_y ? x : y;
}

// Floyd-Warshall over a complete matrix whose unknown entries are +inf.
inline Matrix shortest_paths(Matrix d) {
  const std::size_t k = d.size();
  for (std::size_t via = 0; via < k; ++via) {
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        d[a][b] = std::min(d[a][b], d[a][via] + d[via][b]);
      }
    }
  }
  return d;
}

}  // namespace mdist::oracle

#endif  // MDIST_TESTS_ORACLE_H_
