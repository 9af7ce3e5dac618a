#pragma once

#include <stdexcept>

namespace bfstat {

// A quantity the theory guarantees (an exact divisibility, a vanishing
// remainder, two routes to the same number) came out wrong. Always a bug or
// corrupted input, never a rounding artifact.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The enumeration oracle hit its node budget before finishing.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An infinite series reached its term cap before meeting tolerance.
class SeriesCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bfstat
