#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace incentives {

/// Malformed input: unknown ids, inconsistent dimensions, invalid config.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of a function (e.g. negative volume).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// One or more OD pairs have no route between origin and destination.
class InfeasibleDemandError : public InputError {
 public:
  InfeasibleDemandError(const std::string& what, std::vector<std::pair<int, int>> pairs)
      : InputError(what), pairs_(std::move(pairs)) {}
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

 private:
  std::vector<std::pair<int, int>> pairs_;
};

/// An optimization model has no feasible point. `rows` names the constraint
/// rows that were identified as responsible, when that is known.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, std::vector<std::string> rows = {})
      : std::runtime_error(what), rows_(std::move(rows)) {}
  const std::vector<std::string>& rows() const { return rows_; }

 private:
  std::vector<std::string> rows_;
};

/// ADMM produced non-finite iterates.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace incentives
