#pragma once

#include <stdexcept>
#include <string>

namespace tripois {

// Invalid input: bad arguments, malformed files, violated preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An adaptive quadrature ran out of panels before reaching its target.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double best_estimate,
                 double achieved_error)
      : std::runtime_error(what),
        best_estimate_(best_estimate),
        achieved_error_(achieved_error) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double best_estimate_;
  double achieved_error_;
};

// A file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A mathematical guarantee failed to hold on a computed value.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tripois
