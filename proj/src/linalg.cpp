#include "oredual/linalg.hpp"

#include <algorithm>
#include <functional>

namespace oredual {

LinearSpan::Result LinearSpan::reduce(const Row& row) const {
  // rem = row - tag * added
  Result r{row, Row()};
  size_t i = 0;
  while (i < r.rem.size()) {
    const RowTerm& t = r.rem.terms()[i];
    auto it = basis_.find(Key{t.mu, t.col});
    if (it == basis_.end()) {
      if (!full_) break;
      ++i;
      continue;
    }
    RatFunc c = t.c;
    r.rem = r.rem.sub_scaled(c, it->second.row);
    r.tag = r.tag + it->second.tag.scaled(c);
  }
  return r;
}

LinearSpan::Result LinearSpan::add_tracked(const Row& row) {
  int id = count_++;
  Result r = reduce(row);
  Row tag = Row::unit(id) - r.tag;
  if (r.rem.is_zero()) return {Row(), tag};
  RatFunc inv = r.rem.lead().c.inverse();
  Row rem = r.rem.scaled(inv);
  tag = tag.scaled(inv);
  Key k{rem.lead().mu, rem.lead().col};
  basis_.emplace(k, Entry{rem, tag});
  return {rem, tag};
}

bool LinearSpan::add(const Row& row) { return !add_tracked(row).rem.is_zero(); }

std::vector<Row> LinearSpan::rows() const {
  std::vector<Row> out;
  for (auto& [k, e] : basis_) out.push_back(e.row);
  return out;
}

std::vector<MultiIndex> monomials_of_order(int n, int r) {
  std::vector<MultiIndex> out;
  MultiIndex cur;
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      cur.e[i] = static_cast<uint8_t>(left);
      out.push_back(cur);
      cur.e[i] = 0;
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur.e[i] = static_cast<uint8_t>(k);
      rec(i + 1, left - k);
    }
    cur.e[i] = 0;
  };
  if (n == 0) {
    if (r == 0) out.push_back(cur);
    return out;
  }
  rec(0, r);
  std::sort(out.begin(), out.end(),
            [](const MultiIndex& a, const MultiIndex& b) { return term_cmp(a, 0, b, 0) > 0; });
  return out;
}

long binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace oredual
