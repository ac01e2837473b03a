#include "mdist/instance.h"

#include <cmath>
#include <sstream>

#include "mdist/errors.h"

namespace mdist {

GeneralInstance::GeneralInstance(std::size_t n_agents,
                                 std::size_t n_alternatives,
                                 DistanceMatrix dist, double tolerance)
    : n_agents_(n_agents), n_alternatives_(n_alternatives) {
  if (n_agents == 0 || n_alternatives == 0) {
    throw StructuralError("an instance needs at least one agent and one "
                          "alternative");
  }
  if (dist.size() != n_agents + n_alternatives) {
    std::ostringstream msg;
    msg << "distance matrix has size " << dist.size() << ", expected "
        << n_agents + n_alternatives << " (n_agents + n_alternatives)";
    throw StructuralError(msg.str());
  }
  const std::size_t k = dist.size();
  auto fail = [](const char* what, std::size_t a, std::size_t b) {
    std::ostringstream msg;
    msg << what << " at (" << a << "," << b << ")";
    throw StructuralError(msg.str());
  };
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      const double value = dist(a, b);
      if (!std::isfinite(value)) fail("non-finite distance", a, b);
      if (value < 0.0) fail("negative distance", a, b);
      if (a == b && value != 0.0) fail("nonzero diagonal", a, b);
      if (a < b && std::abs(value - dist(b, a)) > tolerance) {
        fail("asymmetric distance", a, b);
      }
    }
  }
  dist_ = std::make_shared<const DistanceMatrix>(std::move(dist));
}

LineInstance::LineInstance(std::vector<double> agent_positions,
                           std::vector<double> alternative_positions)
    : agents_(std::move(agent_positions)),
      alternatives_(std::move(alternative_positions)) {
  if (agents_.empty() || alternatives_.empty()) {
    throw StructuralError("an instance needs at least one agent and one "
                          "alternative");
  }
  for (double p : agents_) {
    if (!std::isfinite(p)) throw StructuralError("non-finite agent position");
  }
  for (double p : alternatives_) {
    if (!std::isfinite(p)) {
      throw StructuralError("non-finite alternative position");
    }
  }
}

double LineInstance::agent_to_alternative(std::size_t agent,
                                          std::size_t alt) const {
  return std::abs(agents_[agent] - alternatives_[alt]);
}

double LineInstance::between_alternatives(std::size_t a, std::size_t b) const {
  return std::abs(alternatives_[a] - alternatives_[b]);
}

GeneralInstance LineInstance::to_general() const {
  const std::size_t n = agents_.size();
  std::vector<double> points(agents_);
  points.insert(points.end(), alternatives_.begin(), alternatives_.end());
  DistanceMatrix dist(points.size());
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = 0; b < points.size(); ++b) {
      dist(a, b) = std::abs(points[a] - points[b]);
    }
  }
  return GeneralInstance(n, alternatives_.size(), std::move(dist));
}

std::size_t n_agents(const Instance& instance) {
  return std::visit([](const auto& inst) { return inst.n_agents(); },
                    instance);
}

std::size_t n_alternatives(const Instance& instance) {
  return std::visit([](const auto& inst) { return inst.n_alternatives(); },
                    instance);
}

double agent_to_alternative(const Instance& instance, std::size_t agent,
                            std::size_t alt) {
  if (const auto* line = std::get_if<LineInstance>(&instance)) {
    return line->agent_to_alternative(agent, alt);
  }
  return std::get<GeneralInstance>(instance).agent_to_alternative(agent, alt);
}

double between_alternatives(const Instance& instance, std::size_t a,
                            std::size_t b) {
  if (const auto* line = std::get_if<LineInstance>(&instance)) {
    return line->between_alternatives(a, b);
  }
  return std::get<GeneralInstance>(instance).between_alternatives(a, b);
}

bool is_line(const Instance& instance) {
  return std::holds_alternative<LineInstance>(instance);
}

const LineInstance* as_line(const Instance& instance) {
  return std::get_if<LineInstance>(&instance);
}

GeneralInstance to_general(const Instance& instance) {
  if (const auto* line = std::get_if<LineInstance>(&instance)) {
    return line->to_general();
  }
  return std::get<GeneralInstance>(instance);
}

GeneralInstance euclidean_instance(
    const std::vector<std::vector<double>>& agent_points,
    const std::vector<std::vector<double>>& alternative_points) {
  std::vector<const std::vector<double>*> points;
  for (const auto& p : agent_points) points.push_back(&p);
  for (const auto& p : alternative_points) points.push_back(&p);
  if (points.empty()) {
    throw StructuralError("an instance needs at least one agent and one "
                          "alternative");
  }
  const std::size_t dim = points.front()->size();
  for (const auto* p : points) {
    if (p->size() != dim) {
      throw StructuralError("points have mismatched dimensions");
    }
  }
  DistanceMatrix dist(points.size());
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      double sum = 0.0;
      for (std::size_t c = 0; c < dim; ++c) {
        const double delta = (*points[a])[c] - (*points[b])[c];
        sum += delta * delta;
      }
      dist.set_symmetric(a, b, std::sqrt(sum));
    }
  }
  return GeneralInstance(agent_points.size(), alternative_points.size(),
                         std::move(dist));
}

}  // namespace mdist
