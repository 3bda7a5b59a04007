#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tula {

/// Thrown when an iterate leaves the finite doubles. Carries the step index
/// at which the non-finite value was produced.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(std::size_t step, const std::string& what)
      : std::runtime_error(what), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// A method's preconditions on the input problem are not met (e.g. the
/// curvature bound needed for the LSI estimate is not positive).
class NotApplicableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested E|x|^p does not exist for the target.
class MomentDoesNotExistError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tula
