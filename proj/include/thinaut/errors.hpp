#pragma once

#include <stdexcept>
#include <string>

namespace thinaut {

// Malformed presentation text (bad syntax, bad indices, non-prime modulus).
struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

// Structurally invalid data fed to an operation (out-of-range index, wrong owner, ...).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A presentation failed its overlap checks.
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An exhaustive computation was requested beyond its configured size limit.
struct BoundExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The group does not meet the prerequisites of the derivation pipeline.
struct IneligibleGroup : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No certificate can be produced for this input (and why).
struct CannotCertify : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A broken internal invariant; indicates a bug, never bad input.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace thinaut
