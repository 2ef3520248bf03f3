#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oredual/ring.hpp"

namespace oredual {

using Q = mpq_class;

constexpr int kMaxSlots = 16;

struct Mono {
  std::array<uint16_t, kMaxSlots> e{};

  int degree() const {
    int d = 0;
    for (auto v : e) d += v;
    return d;
  }
  bool is_one() const {
    for (auto v : e)
      if (v) return false;
    return true;
  }
  bool divides(const Mono& o) const {
    for (int i = 0; i < kMaxSlots; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  Mono operator*(const Mono& o) const {
    Mono r;
    for (int i = 0; i < kMaxSlots; ++i) r.e[i] = e[i] + o.e[i];
    return r;
  }
  // Requires divides(*this, o) reversed: o must divide *this.
  Mono operator/(const Mono& o) const {
    Mono r;
    for (int i = 0; i < kMaxSlots; ++i) r.e[i] = e[i] - o.e[i];
    return r;
  }
  uint32_t support() const {
    uint32_t m = 0;
    for (int i = 0; i < kMaxSlots; ++i)
      if (e[i]) m |= 1u << i;
    return m;
  }
  bool operator==(const Mono& o) const = default;
};

// Graded lexicographic comparison: total degree, then slot 0 first.
int grlex_cmp(const Mono& a, const Mono& b);

// Sparse multivariate polynomial over Q. Terms are kept sorted by
// decreasing grlex order with no zero coefficients.
class MPoly {
 public:
  struct Term {
    Mono m;
    Q c;
  };

  MPoly() = default;
  explicit MPoly(const Q& c);
  explicit MPoly(long c) : MPoly(Q(c)) {}
  static MPoly var(int slot, unsigned power = 1);
  static MPoly monomial(const Mono& m, const Q& c);
  static MPoly from_terms(std::vector<Term> terms);  // sorts and combines

  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
  bool is_one() const;
  Q constant_value() const;  // requires is_constant()
  const Q& lc() const { return t_.front().c; }
  const Mono& lm() const { return t_.front().m; }
  const std::vector<Term>& terms() const { return t_; }
  size_t size() const { return t_.size(); }
  int total_degree() const;
  int degree_in(int slot) const;
  uint32_t support() const;

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly operator-() const;
  MPoly scaled(const Q& c) const;
  MPoly mul_term(const Mono& m, const Q& c) const;

  MPoly derive(int slot) const;
  // Exact quotient when this = q * d, otherwise nullopt.
  std::optional<MPoly> divide_exact(const MPoly& d) const;
  // Leading coefficient 1 (zero stays zero).
  MPoly monic() const;
  // Integer coefficients with gcd 1 and positive leading coefficient.
  MPoly primitive() const;
  // Substitute numeric values for some slots; other slots untouched.
  MPoly substitute(const std::vector<std::optional<Q>>& values) const;
  // Replace each slot s by images[s] (images.size() == kMaxSlots or fewer;
  // missing slots map to themselves).
  MPoly compose(const std::vector<MPoly>& images) const;
  // Move exponent of slot s to slot perm[s]; perm[s] == -1 requires the
  // slot to be absent.
  MPoly remap(const std::vector<int>& perm) const;

  // Coefficients with respect to one slot: result[k] is the coefficient of
  // slot^k (that slot zeroed in the coefficient).
  std::vector<MPoly> coeffs_in(int slot) const;
  static MPoly from_coeffs(int slot, const std::vector<MPoly>& coeffs);

  bool operator==(const MPoly& o) const;
  bool operator!=(const MPoly& o) const { return !(*this == o); }
  size_t hash() const;

  // Monic gcd (gcd(0,0) = 0).
  static MPoly gcd(const MPoly& a, const MPoly& b);

 private:
  std::vector<Term> t_;
};

std::string to_string(const MPoly& p, const Ring& ring);

// Partial factorization used for pivot reporting: strips monomial factors,
// trial-divides by each slot variable, by p_i +- p_j and p_i +- 1 over the
// given slots, and returns the distinct primitive factors found plus the
// remaining cofactor (when nonconstant). Not a full factorization.
std::vector<MPoly> partial_factors(const MPoly& p, int nslots);

}  // namespace oredual
