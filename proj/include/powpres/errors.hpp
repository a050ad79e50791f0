#pragma once

#include <stdexcept>
#include <string>

namespace powpres {

// Error taxonomy. The CLI maps these onto exit codes; library callers catch
// whichever layer they care about.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed textual or JSON input; carries the offending position.
struct parse_error : error {
  parse_error(const std::string& msg, int line_, int column_)
      : error(msg + " (line " + std::to_string(line_) + ", column " +
              std::to_string(column_) + ")"),
        line(line_),
        column(column_) {}
  int line;
  int column;
};

// An operation was called outside its contract (bad index, name collision,
// word over the wrong alphabet, missing defining relator, ...).
struct precondition_error : error {
  using error::error;
};

// A construction's group-theoretic hypothesis fails (nontrivial
// abelianization where a perfect group is required).
struct hypothesis_error : error {
  using error::error;
};

// A supplied witness word has a nonzero exponent sum or fails evaluation.
struct witness_error : error {
  using error::error;
};

// A reducer could not express an old generator in the new generating set,
// or an expression failed its oracle check.
struct factorization_error : error {
  using error::error;
};

// A bounded search exhausted its budget before finding a result.
struct budget_error : error {
  using error::error;
};

}  // namespace powpres
