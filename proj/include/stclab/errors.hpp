#pragma once

#include <stdexcept>
#include <string>

namespace stclab {

// Graph unusable for the requested operation (e.g. disconnected input to a
// congestion or search routine).
struct InvalidGraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Edge set is not a spanning tree of the host graph.
struct InvalidTreeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// DIMACS or JSON input rejected. line/column are 1-based and 0 when unknown.
struct ParseError : std::runtime_error {
  int line = 0;
  int column = 0;

  explicit ParseError(const std::string& msg, int line_ = 0, int column_ = 0)
      : std::runtime_error(line_ > 0 ? msg + " (line " + std::to_string(line_) +
                                           ", column " + std::to_string(column_) + ")"
                                     : msg),
        line(line_),
        column(column_) {}
};

}  // namespace stclab
