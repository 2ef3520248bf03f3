#pragma once

#include <map>
#include <vector>

#include "oredual/ore.hpp"

namespace oredual {

// K-linear span of rows viewed as vectors over the (mu, column) monomials.
// Rows are kept monic and keyed by leading monomial; each carries a tag
// recording which added vectors it combines (tag column j = j-th add call).
class LinearSpan {
 public:
  explicit LinearSpan(bool full_reduce = false) : full_(full_reduce) {}

  struct Result {
    Row rem;
    Row tag;  // reduce: rem = row - tag * added; add_tracked: rem = tag * added
  };

  // Returns true when the row was independent of the span.
  bool add(const Row& row);
  Result add_tracked(const Row& row);
  Result reduce(const Row& row) const;
  size_t rank() const { return basis_.size(); }
  size_t added() const { return count_; }
  std::vector<Row> rows() const;

 private:
  struct Entry {
    Row row, tag;
  };
  // key: leading (mu, col); ordered so iteration goes from largest term
  struct Key {
    MultiIndex mu;
    int col;
    bool operator<(const Key& o) const { return term_cmp(mu, col, o.mu, o.col) > 0; }
  };
  std::map<Key, Entry> basis_;
  bool full_;
  int count_ = 0;
};

// All multi-indices of exact order r in n variables, decreasing term order.
std::vector<MultiIndex> monomials_of_order(int n, int r);

long binomial(long n, long k);

}  // namespace oredual
