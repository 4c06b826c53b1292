#pragma once

#include <stdexcept>
#include <string>

namespace dtwc {

enum class ErrorKind {
  Input,                   // malformed or out-of-contract input
  Dimension,               // vector/matrix sizes disagree with the lattice
  NotEffective,            // curve class outside the effective cone
  NonGenericDenominator,   // denominator has no unique L-minimal monomial
  EmptyWindow,             // window cannot hold a single final coefficient
  NotInvertible,           // series has no unique L-minimal term
  NotAWall,                // gamma is not in V_b
  NonGeneric,              // functionals collide on non-proportional classes
  NonNilpotent,            // exp_ad would not terminate under the truncation
  IncompleteFamily,        // duality family misses a D(beta) component
  ContextMismatch,         // torus elements from different lattices
  Minimality,              // group representatives are not canonical
};

const char* to_string(ErrorKind kind);
// Stable snake_case identifier for reports.
const char* error_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string path = {})
      : std::runtime_error(message), kind_(kind), path_(std::move(path)) {}

  ErrorKind kind() const { return kind_; }
  // JSON path of the offending input, empty when not tied to a document.
  const std::string& path() const { return path_; }

 private:
  ErrorKind kind_;
  std::string path_;
};

}  // namespace dtwc
