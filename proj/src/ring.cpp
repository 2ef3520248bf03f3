#include "oredual/ring.hpp"

#include <cctype>
#include <set>

#include "oredual/error.hpp"
#include "oredual/mpoly.hpp"

namespace oredual {

int Ring::slot(const std::string& name) const {
  for (int i = 0; i < n(); ++i)
    if (vars[i] == name) return i;
  for (int j = 0; j < nparams(); ++j)
    if (params[j] == name) return n() + j;
  return -1;
}

const std::string& Ring::slot_name(int s) const {
  if (s < 0 || s >= nslots()) throw Error("slot " + std::to_string(s) + " outside the ring");
  return s < n() ? vars[s] : params[s - n()];
}

void Ring::validate() const {
  if (nslots() > kMaxSlots)
    throw Error("at most " + std::to_string(kMaxSlots) + " variables and parameters combined");
  std::set<std::string> seen;
  auto check = [&](const std::string& s) {
    if (s.empty()) throw Error("empty variable or parameter name");
    bool ok = std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_';
    for (char ch : s) ok = ok && (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_');
    if (!ok) throw Error("invalid name '" + s + "'");
    if (!seen.insert(s).second) throw Error("duplicate name '" + s + "'");
  };
  for (auto& v : vars) check(v);
  for (auto& p : params) check(p);
}

}  // namespace oredual
