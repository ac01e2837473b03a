#ifndef MDIST_METRIC_H_
#define MDIST_METRIC_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mdist {

// Absolute slack applied to every distance comparison.
inline constexpr double kDefaultTolerance = 1e-9;

// Dense row-major square matrix of distances.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t size, double fill = 0.0)
      : size_(size), data_(size * size, fill) {}

  // Throws StructuralError unless every row has rows.size() entries.
  static DistanceMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return size_; }

  double operator()(std::size_t row, std::size_t col) const {
    return data_[row * size_ + col];
  }
  double& operator()(std::size_t row, std::size_t col) {
    return data_[row * size_ + col];
  }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * size_, size_};
  }
  std::span<double> row(std::size_t r) {
    return {data_.data() + r * size_, size_};
  }

  // Sets (a, b) and (b, a).
  void set_symmetric(std::size_t a, std::size_t b, double value) {
    (*this)(a, b) = value;
    (*this)(b, a) = value;
  }

  std::vector<std::vector<double>> to_rows() const;

  bool operator==(const DistanceMatrix&) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<double> data_;
};

enum class ViolationKind { kNegative, kNonzeroDiagonal, kAsymmetric, kTriangle };

// One failed metric axiom. For kTriangle, d(first, second) exceeds
// d(first, via) + d(via, second) by `excess`; the other kinds leave `via`
// unset.
struct MetricViolation {
  ViolationKind kind;
  std::size_t first = 0;
  std::size_t second = 0;
  std::optional<std::size_t> via;
  double excess = 0.0;

  std::string describe() const;
};

struct MetricReport {
  std::vector<MetricViolation> violations;
  // True when more violations existed than were recorded.
  bool truncated = false;

  bool ok() const { return violations.empty(); }
};

// Checks nonnegativity, zero diagonal, symmetry and every triangle
// d(x,y) <= d(x,z) + d(z,y) + tolerance. O(k^3) in the matrix size.
// Throws StructuralError on non-finite entries.
MetricReport validate_metric(const DistanceMatrix& matrix,
                             double tolerance = kDefaultTolerance,
                             std::size_t max_violations = 100);

// Square matrix whose off-diagonal entries may be unspecified.
class PartialDistanceMatrix {
 public:
  explicit PartialDistanceMatrix(std::size_t size)
      : size_(size), data_(size * size) {}

  // Throws StructuralError unless every row has rows.size() entries.
  static PartialDistanceMatrix from_rows(
      const std::vector<std::vector<std::optional<double>>>& rows);

  std::size_t size() const { return size_; }

  const std::optional<double>& operator()(std::size_t row,
                                          std::size_t col) const {
    return data_[row * size_ + col];
  }

  void set(std::size_t a, std::size_t b, double value) {
    data_[a * size_ + b] = value;
    data_[b * size_ + a] = value;
  }

 private:
  std::size_t size_;
  std::vector<std::optional<double>> data_;
};

// Fills every missing entry with the shortest-path distance over the
// specified entries (Floyd-Warshall). Specified entries are kept unless a
// shorter path exists, which only happens when they violate a triangle
// inequality themselves. Missing diagonal entries are 0.
// Throws StructuralError for asymmetric, negative or non-finite specified
// entries and ClosureError when the specified graph is disconnected.
DistanceMatrix metric_closure(const PartialDistanceMatrix& partial);

}  // namespace mdist

#endif  // MDIST_METRIC_H_
