#pragma once

#include <stdexcept>
#include <string>

namespace okh {

// Malformed input text.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Well-formed input that does not describe a valid oriented diagram.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A move location that does not exist or does not satisfy the move's preconditions.
struct MoveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Skein triples whose diagrams are not related at a single site.
struct SiteMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an algebraic identity that must hold does not.
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace okh
