#pragma once

#include <stdexcept>
#include <string>

namespace kwb {

// Bad arguments: arity mismatch, out-of-range family parameter, malformed
// documents, invalid clique/rank specifications.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A search or solver ran past its configured node/memory/size budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InvalidInput(what);
}

}  // namespace kwb
