#pragma once

#include <stdexcept>

namespace kpaths {

/// Rejected input text or graph structure.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid query argument, or a query asked of an object that cannot
/// answer it (empty expression, non-constant operand, ...).
class QueryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Node allocation hit the configured cap.
class NodeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kpaths
