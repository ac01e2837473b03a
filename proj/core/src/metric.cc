#include "mdist/metric.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mdist/errors.h"

namespace mdist {

DistanceMatrix DistanceMatrix::from_rows(
    const std::vector<std::vector<double>>& rows) {
  DistanceMatrix matrix(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size()) {
      std::ostringstream msg;
      msg << "distance matrix is not square: row " << r << " has "
          << rows[r].size() << " entries, expected " << rows.size();
      throw StructuralError(msg.str());
    }
    std::copy(rows[r].begin(), rows[r].end(), matrix.row(r).begin());
  }
  return matrix;
}

std::vector<std::vector<double>> DistanceMatrix::to_rows() const {
  std::vector<std::vector<double>> rows(size_);
  for (std::size_t r = 0; r < size_; ++r) {
    auto source = row(r);
    rows[r].assign(source.begin(), source.end());
  }
  return rows;
}

std::string MetricViolation::describe() const {
  std::ostringstream out;
  switch (kind) {
    case ViolationKind::kNegative:
      out << "negative distance d(" << first << "," << second << ")";
      break;
    case ViolationKind::kNonzeroDiagonal:
      out << "nonzero diagonal d(" << first << "," << first << ")";
      break;
    case ViolationKind::kAsymmetric:
      out << "asymmetric d(" << first << "," << second << ") != d(" << second
          << "," << first << ")";
      break;
    case ViolationKind::kTriangle:
      out << "triangle inequality d(" << first << "," << second << ") > d("
          << first << "," << *via << ") + d(" << *via << "," << second
          << ")";
      break;
  }
  out << " by " << excess;
  return out.str();
}

namespace {

class ViolationSink {
 public:
  ViolationSink(MetricReport& report, std::size_t limit)
      : report_(report), limit_(limit) {}

  // Returns false once the limit is reached.
  bool add(MetricViolation violation) {
    if (report_.violations.size() >= limit_) {
      report_.truncated = true;
      return false;
    }
    report_.violations.push_back(violation);
    return true;
  }

  bool full() const { return report_.truncated; }

 private:
  MetricReport& report_;
  std::size_t limit_;
};

}  // namespace

MetricReport validate_metric(const DistanceMatrix& matrix, double tolerance,
                             std::size_t max_violations) {
  const std::size_t k = matrix.size();
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t y = 0; y < k; ++y) {
      if (!std::isfinite(matrix(x, y))) {
        std::ostringstream msg;
        msg << "non-finite distance at (" << x << "," << y << ")";
        throw StructuralError(msg.str());
      }
    }
  }

  MetricReport report;
  ViolationSink sink(report, max_violations);
  bool symmetric = true;
  for (std::size_t x = 0; x < k && !sink.full(); ++x) {
    if (matrix(x, x) != 0.0) {
      sink.add({ViolationKind::kNonzeroDiagonal, x, x, std::nullopt,
                std::abs(matrix(x, x))});
    }
    for (std::size_t y = 0; y < k && !sink.full(); ++y) {
      if (matrix(x, y) < 0.0) {
        sink.add({ViolationKind::kNegative, x, y, std::nullopt, -matrix(x, y)});
      }
      if (x < y && std::abs(matrix(x, y) - matrix(y, x)) > tolerance) {
        symmetric = false;
        sink.add({ViolationKind::kAsymmetric, x, y, std::nullopt,
                  std::abs(matrix(x, y) - matrix(y, x))});
      }
    }
  }

  for (std::size_t x = 0; x < k && !sink.full(); ++x) {
    const auto row_x = matrix.row(x);
    for (std::size_t y = symmetric ? x + 1 : 0; y < k && !sink.full(); ++y) {
      if (y == x) continue;
      const double direct = row_x[y];
      if (symmetric) {
        // d(z,y) == d(y,z): walk both rows contiguously.
        const auto row_y = matrix.row(y);
        for (std::size_t z = 0; z < k; ++z) {
          const double detour = row_x[z] + row_y[z];
          if (direct > detour + tolerance) {
            if (!sink.add({ViolationKind::kTriangle, x, y, z,
                           direct - detour})) {
              break;
            }
          }
        }
      } else {
        for (std::size_t z = 0; z < k; ++z) {
          const double detour = matrix(x, z) + matrix(z, y);
          if (direct > detour + tolerance) {
            if (!sink.add({ViolationKind::kTriangle, x, y, z,
                           direct - detour})) {
              break;
            }
          }
        }
      }
    }
  }
  return report;
}

PartialDistanceMatrix PartialDistanceMatrix::from_rows(
    const std::vector<std::vector<std::optional<double>>>& rows) {
  PartialDistanceMatrix partial(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size()) {
      std::ostringstream msg;
      msg << "partial matrix is not square: row " << r << " has "
          << rows[r].size() << " entries, expected " << rows.size();
      throw StructuralError(msg.str());
    }
    for (std::size_t c = 0; c < rows.size(); ++c) {
      partial.data_[r * partial.size_ + c] = rows[r][c];
    }
  }
  return partial;
}

namespace {

std::vector<std::vector<std::size_t>> connected_components(
    const PartialDistanceMatrix& partial) {
  const std::size_t k = partial.size();
  std::vector<std::size_t> label(k, k);
  std::vector<std::vector<std::size_t>> components;
  for (std::size_t start = 0; start < k; ++start) {
    if (label[start] != k) continue;
    const std::size_t id = components.size();
    components.emplace_back();
    std::vector<std::size_t> stack{start};
    label[start] = id;
    while (!stack.empty()) {
      const std::size_t node = stack.back();
      stack.pop_back();
      components[id].push_back(node);
      for (std::size_t other = 0; other < k; ++other) {
        if (label[other] == k && other != node && partial(node, other)) {
          label[other] = id;
          stack.push_back(other);
        }
      }
    }
    std::sort(components[id].begin(), components[id].end());
  }
  return components;
}

}  // namespace

DistanceMatrix metric_closure(const PartialDistanceMatrix& partial) {
  const std::size_t k = partial.size();
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      const auto& entry = partial(a, b);
      const auto& mirror = partial(b, a);
      if (!entry) continue;
      auto fail = [a, b](const char* what) {
        std::ostringstream msg;
        msg << what << " at (" << a << "," << b << ")";
        throw StructuralError(msg.str());
      };
      if (!std::isfinite(*entry)) fail("non-finite specified distance");
      if (*entry < 0.0) fail("negative specified distance");
      if (a == b && *entry != 0.0) fail("nonzero specified diagonal");
      if (a != b && (!mirror || *mirror != *entry)) {
        fail("asymmetric specification");
      }
    }
  }

  auto components = connected_components(partial);
  if (components.size() > 1) {
    std::ostringstream msg;
    msg << "specified distances leave " << components.size()
        << " disconnected components:";
    for (const auto& component : components) {
      msg << " {";
      for (std::size_t i = 0; i < component.size(); ++i) {
        msg << (i ? "," : "") << component[i];
      }
      msg << "}";
    }
    throw ClosureError(msg.str(), std::move(components));
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  DistanceMatrix dist(k, kInf);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (const auto& entry = partial(a, b)) dist(a, b) = *entry;
    }
    if (!partial(a, a)) dist(a, a) = 0.0;
  }
  for (std::size_t via = 0; via < k; ++via) {
    const auto row_via = dist.row(via);
    for (std::size_t a = 0; a < k; ++a) {
      const double to_via = dist(a, via);
      if (to_via == kInf) continue;
      auto row_a = dist.row(a);
      for (std::size_t b = 0; b < k; ++b) {
        row_a[b] = std::min(row_a[b], to_via + row_via[b]);
      }
    }
  }
  return dist;
}

}  // namespace mdist
