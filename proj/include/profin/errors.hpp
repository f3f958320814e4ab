#pragma once

#include <stdexcept>
#include <string>

namespace profin {

// Vertex, generator or level index outside its valid range.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Operands built over different graphs or primes.
class IncompatibleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation was called outside its precondition (non-nice graph, central
// input where a non-central one is required, ...).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A graph the operation refuses to reason about, e.g. one with a universal
// vertex where the centre would no longer be the span of the x_{r,s}.
class UnsupportedGraphError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// An enumeration would exceed its configured cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input (graph files, element literals, permutations).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Data that is internally inconsistent, e.g. filters that do not describe a
// single element.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace profin
