#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace spherodeck {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidInput : Error {
  using Error::Error;
};

/// A LieAlgebraPresentation violates its invariants (not closed under
/// bracket, basis dependent, not theta-stable, ...).
struct InvalidPresentation : Error {
  using Error::Error;
};

/// The trace form is degenerate on the given algebra.
struct NotReductive : Error {
  using Error::Error;
};

/// Simultaneous diagonalization of ad(a) failed over the reals.
struct NotSplitStructure : Error {
  using Error::Error;
};

/// An enumeration exceeded its hard bound.
struct ResourceLimit : Error {
  using Error::Error;
};

/// A decomposition solver did not reach its residual target.
struct SolverFailure : Error {
  using Error::Error;
};

/// A ratio or bound left the representable / trusted range.
struct ToleranceViolation : Error {
  using Error::Error;
};

/// Quadrature did not converge at the maximal order.
struct QuadratureFailure : Error {
  using Error::Error;
};

/// An ODE integration was not stable under step refinement.
struct NumericalInstability : Error {
  using Error::Error;
};

/// A weight synthesis target lies outside the available span.
struct SpanDeficient : Error {
  using Error::Error;
};

/// Malformed document: carries a JSON-pointer-ish locator.
struct SchemaError : Error {
  std::string pointer;
  SchemaError(const std::string& what, std::string ptr)
      : Error(what + " at " + ptr), pointer(std::move(ptr)) {}
};

/// Invariant failures collected while loading a definition.
struct ValidationError : Error {
  std::vector<std::string> failures;
  explicit ValidationError(std::vector<std::string> f)
      : Error(join(f)), failures(std::move(f)) {}

 private:
  static std::string join(const std::vector<std::string>& f) {
    std::string s = "validation failed:";
    for (const auto& x : f) s += "\n  - " + x;
    return s;
  }
};

}  // namespace spherodeck
