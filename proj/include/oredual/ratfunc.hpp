#pragma once

#include <map>
#include <string>

#include "oredual/mpoly.hpp"

namespace oredual {

// Canonical rational function num/den: gcd(num, den) = 1, den monic under
// grlex. Two values are equal iff their representations are identical.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(const Q& c) : num_(c), den_(1) {}  // NOLINT implicit
  RatFunc(long c) : RatFunc(Q(c)) {}         // NOLINT implicit
  explicit RatFunc(MPoly p) : num_(std::move(p)), den_(1) {}

  static RatFunc normalize(const MPoly& num, const MPoly& den);

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return den_.is_one() && num_.is_constant(); }
  Q constant_value() const { return num_.constant_value(); }
  uint32_t support() const { return num_.support() | den_.support(); }

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc inverse() const;

  RatFunc derive(int slot) const;
  RatFunc compose(const std::vector<MPoly>& images) const;
  RatFunc remap(const std::vector<int>& perm) const;

  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }
  size_t hash() const { return num_.hash() * 31 + den_.hash(); }

 private:
  RatFunc(MPoly n, MPoly d, int) : num_(std::move(n)), den_(std::move(d)) {}
  MPoly num_, den_;
};

// Substitute values for parameter/variable slots. Throws Error naming the
// denominator when it vanishes under the substitution.
RatFunc specialize(const RatFunc& f, const std::map<int, Q>& bindings, const Ring& ring);

// Canonical printer: "num" or "(num)/(den)", explicit '*', parseable.
std::string to_string(const RatFunc& f, const Ring& ring);

// Coefficient grammar: integers, decimal-free rationals via '/', variable and
// parameter names, + - * / ^ and parentheses. '^' takes a nonnegative
// integer exponent (negative allowed for nonzero bases).
RatFunc parse_ratfunc(const std::string& text, const Ring& ring);

}  // namespace oredual
