#pragma once

#include <stdexcept>
#include <string>

namespace qdecay {

// Thrown when an adaptive routine cannot reach the requested tolerance.
// Carries the best estimate obtained so far and the estimated error bound,
// so callers can decide whether the partial result is still usable.
class accuracy_error : public std::runtime_error {
 public:
  accuracy_error(const std::string& what, double best, double error_bound)
      : std::runtime_error(what), best_(best), error_bound_(error_bound) {}

  double best() const noexcept { return best_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double best_;
  double error_bound_;
};

// Internal invariant violated (e.g. a channel produced a non-density output).
class internal_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qdecay
