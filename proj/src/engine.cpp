#include "oredual/engine.hpp"

#include <algorithm>

#include "oredual/error.hpp"

namespace oredual {

Engine::Engine(const Ring& ring, int ncols, Division div, bool track, int budget, size_t max_elements,
               size_t max_reductions)
    : ring_(ring),
      n_(ring.n()),
      ncols_(ncols),
      div_(div),
      track_(track),
      budget_(budget),
      max_elements_(max_elements),
      max_reductions_(max_reductions),
      by_col_(ncols) {}

void Engine::add(const Row& row, const Row& rep) {
  if (row.is_zero()) return;
  queue_.push_back({row, rep, 0});
}

const std::pair<Row, Row>& Engine::prolonged(Elem& e, const MultiIndex& nu) {
  auto it = e.cache.find(nu);
  if (it != e.cache.end()) return it->second;
  if (nu.order() == 0) return e.cache.emplace(nu, std::make_pair(e.row, e.rep)).first->second;
  int i = 0;
  while (nu.e[i] == 0) ++i;
  MultiIndex parent = nu;
  parent.e[i] -= 1;
  const auto& par = prolonged(e, parent);
  std::pair<Row, Row> v{par.first.prolong(i), track_ ? par.second.prolong(i) : Row()};
  return e.cache.emplace(nu, std::move(v)).first->second;
}

int Engine::find_divisor(const MultiIndex& mu, int col, int exclude) const {
  if (col < 0 || col >= ncols_) return -1;
  for (int idx : by_col_[col]) {
    if (idx == exclude) continue;
    const MultiIndex& l = el_[idx].row.lead().mu;
    if (!l.divides(mu)) continue;
    bool ok = true;
    for (int i = 0; i < n_ && ok; ++i)
      if (mu.e[i] != l.e[i] && !(el_[idx].mult & (1u << i))) ok = false;
    if (ok) return idx;
  }
  return -1;
}

NormalForm Engine::reduce(const Row& row, bool cofactors, const Row* row_rep, Row* rep_out, int exclude) {
  Row p = row;
  Row rep = row_rep ? *row_rep : Row();
  std::vector<RowTerm> cof;
  size_t i = 0;
  while (i < p.size()) {
    const RowTerm& t = p.terms()[i];
    int g = find_divisor(t.mu, t.col, exclude);
    if (g < 0) {
      ++i;
      continue;
    }
    if (++reductions_ > max_reductions_) throw BudgetExceeded("completion budget exceeded: reduction cap reached");
    MultiIndex nu = t.mu - el_[g].row.lead().mu;
    RatFunc c = t.c;
    const auto& pr = prolonged(el_[g], nu);
    p = p.sub_scaled(c, pr.first);
    if (rep_out && track_) rep = rep.sub_scaled(c, pr.second);
    if (cofactors) cof.push_back({nu, g, c});
  }
  if (rep_out) *rep_out = std::move(rep);
  return {std::move(p), Row::from_terms(std::move(cof))};
}

void Engine::recompute_mult() {
  std::vector<RowTerm> leaders;
  leaders.reserve(el_.size());
  for (auto& e : el_) leaders.push_back({e.row.lead().mu, e.row.lead().col, RatFunc()});
  auto masks = multiplicative_vars(leaders, n_, div_);
  for (auto& v : by_col_) v.clear();
  for (size_t i = 0; i < el_.size(); ++i) {
    el_[i].mult = masks[i];
    by_col_[el_[i].row.lead().col].push_back(static_cast<int>(i));
  }
}

void Engine::note_pivot(const RatFunc& c) {
  if (c.num().is_constant()) return;
  for (auto& p : partial_factors(c.num(), ring_.nslots())) {
    bool seen = false;
    for (auto& a : assumptions_) seen |= a == p;
    if (!seen) assumptions_.push_back(p);
  }
}

void Engine::run() {
  while (true) {
    while (!queue_.empty()) {
      size_t best = 0;
      for (size_t j = 1; j < queue_.size(); ++j) {
        const RowTerm& a = queue_[j].row.lead();
        const RowTerm& b = queue_[best].row.lead();
        if (term_cmp(a.mu, a.col, b.mu, b.col) < 0) best = j;
      }
      Pending p = std::move(queue_[best]);
      queue_.erase(queue_.begin() + best);
      Row hrep;
      Row h = reduce(p.row, false, &p.rep, &hrep).rem;
      if (h.is_zero()) continue;
      RatFunc c = h.lead().c;
      if (!c.is_one()) {
        note_pivot(c);
        RatFunc inv = c.inverse();
        h = h.scaled(inv);
        if (track_) hrep = hrep.scaled(inv);
      }
      if (h.order() > budget_)
        throw BudgetExceeded("completion budget exceeded: generator of order " + std::to_string(h.order()) +
                             " above budget " + std::to_string(budget_));
      const RowTerm& hl = h.lead();
      bool same = hl.mu == p.row.lead().mu && hl.col == p.row.lead().col;
      for (size_t j = el_.size(); j-- > 0;) {
        const RowTerm& l = el_[j].row.lead();
        if (l.col == hl.col && hl.mu.divides(l.mu) && !(hl.mu == l.mu)) {
          queue_.push_back({el_[j].row, el_[j].rep, el_[j].done});
          el_.erase(el_.begin() + j);
        }
      }
      Elem e;
      e.row = std::move(h);
      e.rep = std::move(hrep);
      e.done = same ? p.done : 0;
      el_.push_back(std::move(e));
      if (el_.size() > max_elements_) throw BudgetExceeded("completion budget exceeded: too many generators");
      recompute_mult();
      break;
    }
    for (auto& e : el_) {
      for (int i = 0; i < n_; ++i) {
        uint32_t bit = 1u << i;
        if ((e.mult & bit) || (e.done & bit)) continue;
        const auto& pr = prolonged(e, MultiIndex::unit(i));
        queue_.push_back({pr.first, pr.second, 0});
        e.done |= bit;
      }
    }
    if (queue_.empty()) break;
  }
}

void Engine::finalize() {
  auto asc = [](const Elem& a, const Elem& b) {
    return term_cmp(a.row.lead().mu, a.row.lead().col, b.row.lead().mu, b.row.lead().col) < 0;
  };
  std::sort(el_.begin(), el_.end(), asc);
  recompute_mult();
  for (size_t i = 0; i < el_.size(); ++i) {
    Row rep;
    Row r = reduce(el_[i].row, false, &el_[i].rep, &rep, static_cast<int>(i)).rem;
    if (!(r == el_[i].row)) {
      el_[i].row = std::move(r);
      el_[i].rep = std::move(rep);
      el_[i].cache.clear();
    }
  }
  std::reverse(el_.begin(), el_.end());
  for (auto& e : el_) e.cache.clear();
  recompute_mult();
}

void Engine::load(const std::vector<BasisElement>& elems) {
  el_.clear();
  for (auto& b : elems) {
    Elem e;
    e.row = b.row;
    e.rep = b.rep;
    el_.push_back(std::move(e));
  }
  recompute_mult();
}

std::vector<BasisElement> Engine::elements() const {
  std::vector<BasisElement> out;
  for (auto& e : el_) out.push_back({e.row, e.rep, e.mult});
  return out;
}

}  // namespace oredual
