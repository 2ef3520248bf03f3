#include "oredual/janet.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "oredual/engine.hpp"
#include "oredual/error.hpp"
#include "oredual/linalg.hpp"

namespace oredual {

Matrix identity_matrix(int n) {
  Matrix a(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 1;
  return a;
}

namespace {

bool is_identity(const Matrix& a) { return a == identity_matrix(static_cast<int>(a.size())); }

}  // namespace

std::string matrix_to_string(const Matrix& a) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < a.size(); ++i) {
    os << (i ? ", [" : "[");
    for (size_t j = 0; j < a[i].size(); ++j) os << (j ? ", " : "") << a[i][j];
    os << "]";
  }
  os << "]";
  return os.str();
}

std::vector<uint32_t> multiplicative_vars(const std::vector<RowTerm>& leaders, int n, Division div) {
  std::vector<uint32_t> out(leaders.size(), 0);
  if (div == Division::Pommaret) {
    for (size_t a = 0; a < leaders.size(); ++a) {
      int c = leaders[a].mu.cls();
      if (c == 0) c = n;
      out[a] = c >= 32 ? ~0u : ((1u << c) - 1);
    }
    return out;
  }
  // Janet: d_i is multiplicative for u iff u_i is maximal among the leaders
  // of the same column that agree with u in positions i+1..n.
  for (size_t a = 0; a < leaders.size(); ++a) {
    const auto& u = leaders[a];
    uint32_t mask = 0;
    for (int i = n - 1; i >= 0; --i) {
      int mx = 0;
      for (const auto& v : leaders) {
        if (v.col != u.col) continue;
        bool agree = true;
        for (int j = i + 1; j < n && agree; ++j) agree = v.mu.e[j] == u.mu.e[j];
        if (agree) mx = std::max<int>(mx, v.mu.e[i]);
      }
      if (u.mu.e[i] == mx) mask |= 1u << i;
    }
    out[a] = mask;
  }
  return out;
}

// ---------------------------------------------------------------------------
// JanetBasis

int JanetBasis::order() const {
  int q = -1;
  for (auto& e : elems) q = std::max(q, e.row.order());
  return q;
}

OpMatrix JanetBasis::matrix() const {
  std::vector<Row> rows;
  std::vector<std::string> labels;
  for (size_t i = 0; i < elems.size(); ++i) {
    rows.push_back(elems[i].row);
    labels.push_back("g" + std::to_string(i + 1));
  }
  return make_matrix(ring, ncols, std::move(rows), unknowns, std::move(labels));
}

OpMatrix JanetBasis::U() const {
  std::vector<Row> rows;
  for (auto& e : elems) rows.push_back(e.rep);
  std::vector<std::string> cols;
  for (int k = 0; k < ninputs; ++k) cols.push_back("r" + std::to_string(k + 1));
  return make_matrix(ring, ninputs, std::move(rows), cols);
}

NormalForm JanetBasis::normal_form(const Row& row, bool cofactors) const {
  if (!engine) return {row, Row()};
  return engine->reduce(row, cofactors);
}

bool JanetBasis::reduces_to_zero(const Row& row) const { return normal_form(row).rem.is_zero(); }

bool JanetBasis::verify_involutive() const {
  for (auto& e : elems)
    for (int i = 0; i < n(); ++i)
      if (!(e.mult & (1u << i)) && !reduces_to_zero(e.row.prolong(i))) return false;
  return true;
}

JanetBasis complete_in_frame(const OpMatrix& m, const Matrix& a, const CompletionOptions& opts) {
  const OpMatrix mm = is_identity(a) ? m : change_coordinates(m, a);
  int budget = opts.budget < 0 ? std::max(mm.order(), 0) + 8 : opts.budget;
  auto eng = std::make_shared<Engine>(mm.ring, mm.ncols, opts.division, opts.track, budget, opts.max_elements,
                                      opts.max_reductions);
  for (int k = 0; k < mm.nrows(); ++k) eng->add(mm.rows[k], opts.track ? Row::unit(k) : Row());
  eng->run();
  eng->finalize();
  JanetBasis b;
  b.ring = mm.ring;
  b.ncols = mm.ncols;
  b.unknowns = mm.unknowns;
  b.ninputs = mm.nrows();
  b.division = opts.division;
  b.elems = eng->elements();
  b.coord_change = a;
  b.assumptions = eng->assumptions();
  b.budget = budget;
  b.engine = eng;
  if (opts.track) {
    for (auto& r : mm.rows) {
      NormalForm nf = b.normal_form(r, true);
      if (!nf.rem.is_zero()) throw Error("internal error: input row not in its completed module");
      b.V.push_back(nf.cofactors);
    }
  }
  return b;
}

JanetBasis involutive_completion(const OpMatrix& m, const CompletionOptions& opts) {
  int n = m.n();
  try {
    return complete_in_frame(m, identity_matrix(n), opts);
  } catch (const BudgetExceeded& first) {
    std::string tried = matrix_to_string(identity_matrix(n));
    auto frames = frame_sequence(n, opts.seed, 1);
    int attempts = 0;
    for (size_t f = 1; f < frames.size() && attempts < 3; ++f, ++attempts) {
      try {
        return complete_in_frame(m, frames[f], opts);
      } catch (const BudgetExceeded&) {
        tried += " " + matrix_to_string(frames[f]);
      }
    }
    throw BudgetExceeded(std::string(first.what()) + "; frames tried: " + tried);
  }
}

// ---------------------------------------------------------------------------
// counting

namespace {

bool in_leader_module(const JanetBasis& b, const MultiIndex& mu, int col) {
  for (auto& e : b.elems)
    if (e.lead().col == col && e.lead().mu.divides(mu)) return true;
  return false;
}

}  // namespace

long symbol_dimension(const JanetBasis& b, int r) {
  if (r < 0) return 0;
  long count = 0;
  for (auto& mu : monomials_of_order(b.n(), r))
    for (int k = 0; k < b.ncols; ++k)
      if (!in_leader_module(b, mu, k)) ++count;
  return count;
}

ParametricJets parametric_jets(const JanetBasis& b, int r) {
  ParametricJets out;
  for (int o = 0; o <= r; ++o)
    for (auto& mu : monomials_of_order(b.n(), o))
      for (int k = 0; k < b.ncols; ++k)
        if (!in_leader_module(b, mu, k)) out.jets.push_back({k, mu});
  out.count = static_cast<long>(out.jets.size());
  return out;
}

JanetTabular tabular(const JanetBasis& b) {
  JanetTabular t;
  t.n = b.n();
  t.m = b.ncols;
  t.q = std::max(b.order(), 0);
  int n = t.n, q = t.q;
  t.beta.assign(n, 0);
  t.alpha.assign(n, 0);
  if (q > 0) {
    for (auto& mu : monomials_of_order(n, q))
      for (int k = 0; k < b.ncols; ++k)
        if (in_leader_module(b, mu, k)) t.beta[mu.cls() - 1] += 1;
    for (int i = 1; i <= n; ++i) t.alpha[i - 1] = t.m * binomial(q + n - i - 1, n - i) - t.beta[i - 1];
  } else {
    // order zero: every jet of order zero is either a leader or free
    for (int i = 1; i <= n; ++i) t.alpha[i - 1] = 0;
  }
  for (auto& e : b.elems)
    if (e.row.order() < q) t.lower_order[e.row.order()] += 1;
  t.dim_gq = symbol_dimension(b, q);

  std::ostringstream os;
  std::vector<size_t> idx(b.elems.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto cls_of = [&](size_t i) {
    int c = b.elems[i].lead().mu.cls();
    return c == 0 ? n : c;
  };
  std::stable_sort(idx.begin(), idx.end(), [&](size_t x, size_t y) { return cls_of(x) > cls_of(y); });
  std::vector<std::string> eqs;
  size_t width = 0;
  for (size_t i : idx) {
    eqs.push_back(to_string(b.elems[i].row, b.ring, b.unknowns) + " = 0");
    width = std::max(width, eqs.back().size());
  }
  for (size_t j = 0; j < idx.size(); ++j) {
    const auto& e = b.elems[idx[j]];
    os << eqs[j] << std::string(width - eqs[j].size() + 3, ' ');
    for (int i = 0; i < n; ++i) os << (i ? " " : "") << ((e.mult & (1u << i)) ? std::to_string(i + 1) : ".");
    os << "\n";
  }
  t.text = os.str();
  return t;
}

long jet_dimension(const OpMatrix& m, int q, int s) {
  int n = m.n();
  int top = q + s;
  LinearSpan span;
  // rows pushed in any order; the span keeps an echelon form keyed by the
  // largest (mu, col), and higher-order monomials are larger
  std::vector<std::pair<Row, MultiIndex>> stack;
  for (auto& r : m.rows) {
    if (r.is_zero() || r.order() > top) continue;
    // prolong by all nu with |nu| <= top - order(r)
    int room = top - r.order();
    for (int o = 0; o <= room; ++o)
      for (auto& nu : monomials_of_order(n, o)) span.add(r.prolong(nu));
  }
  long rank_low = 0;
  for (auto& row : span.rows())
    if (row.order() <= q) ++rank_low;
  long jets = m.ncols * binomial(q + n, n);
  return jets - rank_low;
}

// ---------------------------------------------------------------------------
// frames and delta-regularity

std::vector<Matrix> frame_sequence(int n, unsigned seed, int random_frames) {
  std::vector<Matrix> out;
  auto push = [&](const Matrix& a) {
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  };
  push(identity_matrix(n));
  // coordinate permutations, reversal first
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> perms;
  std::vector<int> rev(perm.rbegin(), perm.rend());
  perms.push_back(rev);
  if (n <= 4) {
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
  }
  for (auto& p : perms) {
    Matrix a(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i) a[i][p[i]] = 1;
    push(a);
  }
  // unit lower-triangular 0/1 changes, xbar_n = x_1 + ... + x_n first
  {
    Matrix a = identity_matrix(n);
    for (int j = 0; j < n; ++j) a[n - 1][j] = 1;
    push(a);
  }
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) slots.push_back({i, j});
  if (slots.size() <= 10) {
    for (unsigned mask = 1; mask < (1u << slots.size()); ++mask) {
      Matrix a = identity_matrix(n);
      for (size_t s = 0; s < slots.size(); ++s)
        if (mask & (1u << s)) a[slots[s].first][slots[s].second] = 1;
      push(a);
    }
  }
  std::mt19937_64 rng(seed);
  for (int f = 0; f < random_frames; ++f) {
    Matrix a = identity_matrix(n);
    for (int step = 0; step < 2 * n; ++step) {
      int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
      if (i == j) continue;
      long c = static_cast<long>(rng() % 3) - 1;
      for (int k = 0; k < n; ++k) a[i][k] += c * a[j][k];  // row operation keeps det = 1
    }
    push(a);
  }
  return out;
}

RegularResult delta_regularize(const OpMatrix& m, int budget, unsigned seed, int random_frames) {
  CompletionOptions opts;
  opts.division = Division::Pommaret;
  opts.budget = budget;
  RegularResult res;
  for (auto& a : frame_sequence(m.n(), seed, random_frames)) {
    res.attempted.push_back(a);
    try {
      res.basis = complete_in_frame(m, a, opts);
      res.coord_change = a;
      return res;
    } catch (const BudgetExceeded&) {
    }
  }
  std::string tried;
  for (auto& a : res.attempted) tried += " " + matrix_to_string(a);
  throw BudgetExceeded("completion budget exceeded in every frame; attempted:" + tried);
}

// ---------------------------------------------------------------------------
// first-order form

FirstOrderForm first_order_form(const OpMatrix& m, const CompletionOptions& opts) {
  CompletionOptions o = opts;
  o.track = false;
  JanetBasis b = involutive_completion(m, o);
  if (!is_identity(b.coord_change)) throw Error("first-order form needs a completion in the given coordinates");
  int n = m.n(), q = b.order();
  if (q <= 0) throw Error("first-order form needs a system of positive order");
  std::map<std::pair<int, MultiIndex>, int> zindex;
  std::vector<std::pair<int, MultiIndex>> zlist;
  FirstOrderForm out;
  for (auto& [k, mu] : parametric_jets(b, q - 1).jets) {
    zindex[{k, mu}] = static_cast<int>(zlist.size());
    zlist.push_back({k, mu});
    std::string name = m.unknowns[k];
    if (mu.order() > 0) name += "_" + derivative_name(mu, n).substr(1);
    out.jet_names.push_back(name);
  }
  auto rewrite = [&](const Row& r) {
    std::vector<RowTerm> ts;
    for (auto& t : r.terms()) {
      MultiIndex lam = t.mu;
      while (lam.order() > q - 1) {
        int j = n - 1;
        while (lam.e[j] == 0) --j;
        lam.e[j] -= 1;
      }
      auto it = zindex.find({t.col, lam});
      if (it == zindex.end()) throw Error("internal error: principal jet survived reduction");
      ts.push_back({t.mu - lam, it->second, t.c});
    }
    return Row::from_terms(std::move(ts));
  };
  std::vector<Row> rels;
  std::vector<std::string> labels;
  for (size_t z = 0; z < zlist.size(); ++z) {
    auto [k, mu] = zlist[z];
    for (int i = 0; i < n; ++i) {
      Row target = b.normal_form(Row::unit(k, 1, mu + MultiIndex::unit(i))).rem;
      Row rel = Row::unit(static_cast<int>(z), 1, MultiIndex::unit(i)) - rewrite(target);
      if (rel.is_zero()) continue;
      rels.push_back(rel);
      labels.push_back("d" + std::to_string(i + 1) + "_" + out.jet_names[z]);
    }
  }
  out.system = make_matrix(m.ring, static_cast<int>(zlist.size()), rels, out.jet_names, labels);
  std::vector<Row> tn, to;
  for (auto& [k, mu] : zlist) tn.push_back(Row::unit(k, 1, mu));
  for (int k = 0; k < m.ncols; ++k) to.push_back(rewrite(b.normal_form(Row::unit(k)).rem));
  out.to_new = make_matrix(m.ring, m.ncols, tn, m.unknowns, out.jet_names);
  out.to_old = make_matrix(m.ring, static_cast<int>(zlist.size()), to, out.jet_names, m.unknowns);

  // certify the isomorphism of the presented modules
  JanetBasis nb = involutive_completion(out.system, o);
  if (!is_identity(nb.coord_change)) throw Error("first-order form certificate needs the identity frame");
  for (auto& r : out.system.rows)
    if (!b.reduces_to_zero(compose(r, tn))) throw Error("first-order form certificate failed (relations to old)");
  for (auto& r : m.rows)
    if (!nb.reduces_to_zero(compose(r, to))) throw Error("first-order form certificate failed (relations to new)");
  for (int k = 0; k < m.ncols; ++k)
    if (!b.reduces_to_zero(Row::unit(k) - compose(to[k], tn)))
      throw Error("first-order form certificate failed (old round trip)");
  for (size_t z = 0; z < zlist.size(); ++z)
    if (!nb.reduces_to_zero(Row::unit(static_cast<int>(z)) - compose(tn[z], to)))
      throw Error("first-order form certificate failed (new round trip)");
  return out;
}

}  // namespace oredual
