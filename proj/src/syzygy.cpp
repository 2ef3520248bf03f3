#include "oredual/syzygy.hpp"

#include <algorithm>

#include "oredual/engine.hpp"
#include "oredual/error.hpp"
#include "oredual/linalg.hpp"

namespace oredual {

namespace {

bool is_identity(const Matrix& a) { return a.empty() || a == identity_matrix(static_cast<int>(a.size())); }

Matrix inverse_frame(const Matrix& a) { return unimodular_inverse(a); }

int default_budget(int order, const CompletionOptions& opts) {
  return opts.budget < 0 ? std::max(order, 0) + 8 : std::max(opts.budget, order);
}

}  // namespace

OpMatrix to_frame(const OpMatrix& m, const Matrix& a) { return is_identity(a) ? m : change_coordinates(m, a); }

Row normalize_row(const Row& r) {
  if (r.is_zero()) return r;
  // common denominator
  MPoly l(1);
  for (auto& t : r.terms()) {
    const MPoly& d = t.c.den();
    if (d.is_one()) continue;
    MPoly g = MPoly::gcd(l, d);
    l = l * *d.divide_exact(g);
  }
  std::vector<MPoly> nums;
  for (auto& t : r.terms()) {
    RatFunc v = t.c * RatFunc(l);
    nums.push_back(v.num());
  }
  MPoly content;
  for (auto& p : nums) {
    content = MPoly::gcd(content, p);
    if (content.is_one()) break;
  }
  std::vector<RowTerm> ts;
  for (size_t i = 0; i < nums.size(); ++i) {
    MPoly p = content.is_one() ? nums[i] : *nums[i].divide_exact(content);
    ts.push_back({r.terms()[i].mu, r.terms()[i].col, RatFunc(p)});
  }
  // integer-primitive with a positive leading coefficient
  mpz_class lcm = 1, g = 0;
  for (auto& t : ts)
    for (auto& pt : t.c.num().terms()) {
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), pt.c.get_den_mpz_t());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), pt.c.get_num_mpz_t());
    }
  Q f = Q(lcm) / Q(g);
  if (sgn(ts.front().c.num().lc()) < 0) f = -f;
  for (auto& t : ts) t.c = t.c * RatFunc(f);
  return Row::from_terms(std::move(ts));
}

void merge_assumptions(std::vector<MPoly>& into, const std::vector<MPoly>& more) {
  for (auto& p : more)
    if (std::find(into.begin(), into.end(), p) == into.end()) into.push_back(p);
}

std::vector<Row> minimal_generators(const Ring& ring, int ncols, std::vector<Row> candidates,
                                    const CompletionOptions& opts, std::vector<MPoly>* assumptions) {
  candidates.erase(std::remove_if(candidates.begin(), candidates.end(), [](const Row& r) { return r.is_zero(); }),
                   candidates.end());
  for (auto& c : candidates) c = normalize_row(c);
  std::stable_sort(candidates.begin(), candidates.end(), [](const Row& a, const Row& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    int c = term_cmp(a.lead().mu, a.lead().col, b.lead().mu, b.lead().col);
    if (c != 0) return c < 0;
    return a.size() < b.size();
  });
  int top = 0;
  for (auto& c : candidates) top = std::max(top, c.order());
  int budget = default_budget(top, opts);
  std::vector<Row> kept;
  Engine eng(ring, ncols, Division::Janet, false, budget, opts.max_elements, opts.max_reductions);
  for (auto& c : candidates) {
    if (!kept.empty() && eng.reduce(c, false).rem.is_zero()) continue;
    kept.push_back(c);
    eng.add(c);
    eng.run();
  }
  if (assumptions) merge_assumptions(*assumptions, eng.assumptions());
  // drop rows generated by the others, largest leader first
  if (kept.size() > 1 && kept.size() <= 40) {
    for (size_t j = kept.size(); j-- > 0;) {
      Engine other(ring, ncols, Division::Janet, false, budget, opts.max_elements, opts.max_reductions);
      for (size_t i = 0; i < kept.size(); ++i)
        if (i != j) other.add(kept[i]);
      other.run();
      if (other.reduce(kept[j], false).rem.is_zero()) {
        kept.erase(kept.begin() + j);
        if (assumptions) merge_assumptions(*assumptions, other.assumptions());
      }
    }
  }
  std::stable_sort(kept.begin(), kept.end(), [](const Row& a, const Row& b) {
    return term_cmp(a.lead().mu, a.lead().col, b.lead().mu, b.lead().col) > 0;
  });
  return kept;
}

CCResult compatibility_conditions(const OpMatrix& m, const CompletionOptions& opts) {
  CompletionOptions o = opts;
  o.track = true;
  CCResult res;
  bool trivial = true;
  for (auto& r : m.rows) trivial = trivial && r.is_zero();
  if (trivial) {
    // every row combination is a syzygy
    std::vector<Row> units;
    for (int k = 0; k < m.nrows(); ++k) units.push_back(Row::unit(k));
    std::vector<std::string> labels;
    for (int k = 0; k < m.nrows(); ++k) labels.push_back("c" + std::to_string(k + 1));
    res.cc = make_matrix(m.ring, m.nrows(), units, m.labels, labels);
    res.basis.ring = m.ring;
    res.basis.ncols = m.ncols;
    res.basis.unknowns = m.unknowns;
    res.certified = true;
    return res;
  }
  res.basis = involutive_completion(m, o);
  const JanetBasis& b = res.basis;
  const OpMatrix mm = to_frame(m, b.coord_change);
  std::vector<Row> urows;
  for (auto& e : b.elems) urows.push_back(e.rep);
  std::vector<Row> candidates;
  for (size_t a = 0; a < b.elems.size(); ++a) {
    const auto& e = b.elems[a];
    for (int i = 0; i < b.n(); ++i) {
      if (e.mult & (1u << i)) continue;
      NormalForm nf = b.normal_form(e.row.prolong(i), true);
      if (!nf.rem.is_zero()) throw Error("internal error: basis is not involutive");
      Row s = Row::unit(static_cast<int>(a), 1, MultiIndex::unit(i)) - nf.cofactors;
      candidates.push_back(compose(s, urows));
    }
  }
  for (int k = 0; k < mm.nrows(); ++k) candidates.push_back(Row::unit(k) - compose(b.V[k], urows));
  for (auto& c : candidates)
    if (!compose(c, mm.rows).is_zero()) throw Error("internal error: syzygy candidate does not annihilate the rows");
  res.assumptions = b.assumptions;
  std::vector<Row> gens = minimal_generators(mm.ring, mm.nrows(), candidates, opts, &res.assumptions);
  std::vector<std::string> labels;
  for (size_t i = 0; i < gens.size(); ++i) labels.push_back("c" + std::to_string(i + 1));
  OpMatrix cc = make_matrix(mm.ring, mm.nrows(), gens, m.labels, labels);
  if (!is_identity(b.coord_change)) {
    cc = change_coordinates(cc, inverse_frame(b.coord_change));
    for (auto& r : cc.rows) r = normalize_row(r);
  }
  for (auto& r : cc.rows)
    if (!compose(r, m.rows).is_zero()) throw Error("internal error: compatibility condition fails on the input");
  res.cc = cc;
  res.certified = true;
  return res;
}

bool module_contains(const JanetBasis& b, const OpMatrix& rows, std::vector<Row>* witnesses) {
  OpMatrix r = to_frame(rows, b.coord_change);
  bool all = true;
  for (auto& row : r.rows) {
    NormalForm nf = b.normal_form(row, witnesses != nullptr);
    if (!nf.rem.is_zero()) all = false;
    if (witnesses) witnesses->push_back(nf.cofactors);
    if (!all && !witnesses) return false;
  }
  return all;
}

bool module_contains(const OpMatrix& big, const OpMatrix& rows, const CompletionOptions& opts) {
  CompletionOptions o = opts;
  o.track = false;
  if (big.nrows() == 0) {
    for (auto& r : rows.rows)
      if (!r.is_zero()) return false;
    return true;
  }
  return module_contains(involutive_completion(big, o), rows);
}

bool modules_equal(const OpMatrix& a, const OpMatrix& b, const CompletionOptions& opts) {
  if (a.ncols != b.ncols) return false;
  return module_contains(a, b, opts) && module_contains(b, a, opts);
}

ZeroModule is_zero_module(const OpMatrix& m, const CompletionOptions& opts) {
  ZeroModule z;
  if (m.nrows() == 0) {
    z.zero = m.ncols == 0;
    return z;
  }
  CompletionOptions o = opts;
  o.track = false;
  JanetBasis b = involutive_completion(m, o);
  z.assumptions = b.assumptions;
  z.zero = true;
  for (int k = 0; k < m.ncols && z.zero; ++k) z.zero = b.reduces_to_zero(Row::unit(k));
  return z;
}

int differential_rank(const JanetBasis& b) {
  uint32_t all = b.n() >= 32 ? ~0u : ((1u << b.n()) - 1);
  int full = 0;
  for (auto& e : b.elems)
    if ((e.mult & all) == all) ++full;
  return b.ncols - full;
}

int differential_rank(const OpMatrix& m, const CompletionOptions& opts) {
  if (m.nrows() == 0) return m.ncols;
  CompletionOptions o = opts;
  o.track = false;
  return differential_rank(involutive_completion(m, o));
}

std::vector<OpMatrix> differential_sequence(const OpMatrix& m, int max_steps, const CompletionOptions& opts) {
  std::vector<OpMatrix> out;
  OpMatrix cur = m;
  for (int step = 0; step < max_steps; ++step) {
    if (cur.nrows() == 0) break;
    OpMatrix next = compatibility_conditions(cur, opts).cc;
    if (next.nrows() == 0) break;
    out.push_back(next);
    cur = next;
  }
  return out;
}

std::vector<Row> syzygy_oracle(const OpMatrix& m, int r, size_t cap) {
  int n = m.n();
  std::vector<std::pair<MultiIndex, int>> index;
  for (int o = 0; o <= r; ++o)
    for (auto& nu : monomials_of_order(n, o))
      for (int i = 0; i < m.nrows(); ++i) index.push_back({nu, i});
  if (index.size() > cap) throw Error("syzygy oracle: " + std::to_string(index.size()) + " unknowns exceed the cap");
  LinearSpan span;
  std::vector<Row> kernel;
  for (auto& [nu, i] : index) {
    auto res = span.add_tracked(m.rows[i].prolong(nu));
    if (!res.rem.is_zero()) continue;
    std::vector<RowTerm> ts;
    for (auto& t : res.tag.terms()) ts.push_back({index[t.col].first, index[t.col].second, t.c});
    kernel.push_back(Row::from_terms(std::move(ts)));
  }
  return kernel;
}

}  // namespace oredual
