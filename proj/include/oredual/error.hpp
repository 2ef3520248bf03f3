#pragma once

#include <stdexcept>
#include <string>

namespace oredual {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a completion exceeds its order budget in every frame tried.
// Callers turn this into an "unknown" verdict, never into a yes/no answer.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

}  // namespace oredual
