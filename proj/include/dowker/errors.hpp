#pragma once

#include <stdexcept>

namespace dowker {

// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text (CSV or JSON). Messages carry 1-based line numbers
// where the offending line is known.
struct parse_error : error {
  using error::error;
};

// A (source, target) pair occurs more than once in an edge list.
struct duplicate_error : parse_error {
  using parse_error::parse_error;
};

// File-level I/O failure.
struct io_error : error {
  using error::error;
};

// Precondition or invariant violation on otherwise well-formed data.
struct domain_error : error {
  using error::error;
};

// Unknown node or leaf label.
struct lookup_error : domain_error {
  using domain_error::domain_error;
};

// Complex dimension too small for the requested homology dimension.
struct dimension_error : domain_error {
  using domain_error::domain_error;
};

// Exhaustive-search size bound exceeded.
struct size_error : domain_error {
  using domain_error::domain_error;
};

// An iterative solver failed (or provably cannot) converge.
struct convergence_error : error {
  using error::error;
};

}  // namespace dowker
