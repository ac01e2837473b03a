#ifndef MDIST_ERRORS_H_
#define MDIST_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mdist {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: non-square matrices, non-finite entries, size mismatches,
// out-of-range indices.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// A numeric parameter outside the range an operation accepts (alpha < 1,
// n < 2 for a construction, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// The operation does not apply to the given input, e.g. a line-only
// mechanism run on a bundle without line provenance.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Broken internal invariant, e.g. an empty approval set reaching a mechanism.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Metric closure over a specification whose graph is not connected.
class ClosureError : public Error {
 public:
  ClosureError(const std::string& what,
               std::vector<std::vector<std::size_t>> components)
      : Error(what), components_(std::move(components)) {}

  const std::vector<std::vector<std::size_t>>& components() const {
    return components_;
  }

 private:
  std::vector<std::vector<std::size_t>> components_;
};

// JSON documents that parse but do not match the expected schema, or fail to
// parse at all. The message carries file/line context when known.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace mdist

#endif  // MDIST_ERRORS_H_
