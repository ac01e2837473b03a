#ifndef MDIST_INSTANCE_H_
#define MDIST_INSTANCE_H_

#include <cstddef>
#include <memory>
#include <variant>
#include <vector>

#include "mdist/metric.h"

namespace mdist {

// Agents and alternatives in a finite metric. The joint matrix is indexed
// agents first: agent i is row i, alternative x is row n_agents + x.
//
// Construction checks shape, finiteness, symmetry, zero diagonal and
// nonnegativity; the O(k^3) triangle check is left to validate_metric so
// that large generated instances stay cheap to build. The matrix is shared
// and immutable, so copies are cheap and thread-safe.
class GeneralInstance {
 public:
  GeneralInstance(std::size_t n_agents, std::size_t n_alternatives,
                  DistanceMatrix dist, double tolerance = kDefaultTolerance);

  std::size_t n_agents() const { return n_agents_; }
  std::size_t n_alternatives() const { return n_alternatives_; }
  const DistanceMatrix& dist() const { return *dist_; }

  double agent_to_alternative(std::size_t agent, std::size_t alt) const {
    return (*dist_)(agent, n_agents_ + alt);
  }
  double between_alternatives(std::size_t a, std::size_t b) const {
    return (*dist_)(n_agents_ + a, n_agents_ + b);
  }
  double between_agents(std::size_t a, std::size_t b) const {
    return (*dist_)(a, b);
  }

 private:
  std::size_t n_agents_;
  std::size_t n_alternatives_;
  std::shared_ptr<const DistanceMatrix> dist_;
};

// Agents and alternatives on the real line; distances are |p - q|.
class LineInstance {
 public:
  LineInstance(std::vector<double> agent_positions,
               std::vector<double> alternative_positions);

  std::size_t n_agents() const { return agents_.size(); }
  std::size_t n_alternatives() const { return alternatives_.size(); }
  const std::vector<double>& agent_positions() const { return agents_; }
  const std::vector<double>& alternative_positions() const {
    return alternatives_;
  }

  double agent_to_alternative(std::size_t agent, std::size_t alt) const;
  double between_alternatives(std::size_t a, std::size_t b) const;

  // Exact: every entry is a single subtraction of the stored positions.
  GeneralInstance to_general() const;

 private:
  std::vector<double> agents_;
  std::vector<double> alternatives_;
};

using Instance = std::variant<GeneralInstance, LineInstance>;

std::size_t n_agents(const Instance& instance);
std::size_t n_alternatives(const Instance& instance);
double agent_to_alternative(const Instance& instance, std::size_t agent,
                            std::size_t alt);
double between_alternatives(const Instance& instance, std::size_t a,
                            std::size_t b);
bool is_line(const Instance& instance);
const LineInstance* as_line(const Instance& instance);
GeneralInstance to_general(const Instance& instance);

// Builds the joint metric of agents and alternatives placed at points in
// R^d with Euclidean distances. Each point is a vector of d coordinates.
GeneralInstance euclidean_instance(
    const std::vector<std::vector<double>>& agent_points,
    const std::vector<std::vector<double>>& alternative_points);

}  // namespace mdist

#endif  // MDIST_INSTANCE_H_
