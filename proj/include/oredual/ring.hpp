#pragma once

#include <string>
#include <vector>

namespace oredual {

// Names of the independent variables x_1..x_n followed by the symbolic
// constant parameters. Polynomial exponent slot i < n is x_{i+1}; slot n + j
// is params[j].
struct Ring {
  std::vector<std::string> vars;
  std::vector<std::string> params;

  int n() const { return static_cast<int>(vars.size()); }
  int nparams() const { return static_cast<int>(params.size()); }
  int nslots() const { return n() + nparams(); }
  // Slot index for a name, or -1.
  int slot(const std::string& name) const;
  const std::string& slot_name(int s) const;
  void validate() const;

  bool operator==(const Ring& o) const = default;
};

}  // namespace oredual
