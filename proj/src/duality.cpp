#include "oredual/duality.hpp"

#include <algorithm>
#include <sstream>

#include "oredual/error.hpp"
#include "oredual/linalg.hpp"

namespace oredual {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::TorsionFree: return "torsion-free";
    case Verdict::HasTorsion: return "torsion";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

namespace {

bool identity_frame(const Matrix& a) { return a.empty() || a == identity_matrix(static_cast<int>(a.size())); }

JanetBasis closure(const OpMatrix& m, const CompletionOptions& opts, bool track = false) {
  CompletionOptions o = opts;
  o.track = track;
  return involutive_completion(m, o);
}

// Rows of `big` outside the module of `small`, pruned so that each kept row
// adds something beyond the earlier ones.
std::vector<Row> torsion_rows(const OpMatrix& small, const OpMatrix& big, const CompletionOptions& opts,
                              std::vector<MPoly>& assumptions) {
  std::vector<Row> out;
  OpMatrix acc = small;
  for (auto& r : big.rows) {
    JanetBasis b = closure(acc, opts);
    merge_assumptions(assumptions, b.assumptions);
    OpMatrix one = make_matrix(small.ring, small.ncols, {r}, small.unknowns);
    if (module_contains(b, one)) continue;
    out.push_back(r);
    acc.rows.push_back(r);
    acc.labels.push_back("w" + std::to_string(out.size()));
  }
  return out;
}

// every d^nu row with nu using only the variables in mask and |nu| <= budget
void prolongations(const Row& row, uint32_t mask, int n, int budget, std::vector<Row>& out) {
  std::vector<std::pair<Row, int>> stack{{row, 0}};
  while (!stack.empty()) {
    auto [r, first] = stack.back();
    stack.pop_back();
    out.push_back(r);
    if (r.order() - row.order() >= budget) continue;
    // nondecreasing variable sequence enumerates each nu once
    for (int i = first; i < n; ++i)
      if (mask & (1u << i)) stack.push_back({r.prolong(i), i});
  }
}

// Lowest-order generators of the torsion part: level by level in order, the
// elements of D1' not in D1 plus the witnesses already found.
std::optional<std::vector<Row>> lowest_torsion_rows(const OpMatrix& d1, const JanetBasis& b1, const JanetBasis& b5,
                                                   const OpMatrix& d1p, const CompletionOptions& opts) {
  if (!identity_frame(b1.coord_change) || !identity_frame(b5.coord_change)) return std::nullopt;
  int n = d1.n();
  uint32_t all = (1u << n) - 1;
  int top = 0;
  for (auto& e : b5.elems) top = std::max(top, e.row.order());
  std::vector<Row> w;
  for (int o = 0; o <= top; ++o) {
    LinearSpan span(true);
    std::vector<Row> gen;
    for (auto& e : b1.elems)
      if (e.row.order() <= o) prolongations(e.row, e.mult, n, o - e.row.order(), gen);
    for (auto& x : w) prolongations(x, all, n, o - x.order(), gen);
    for (auto& g : gen) span.add(g);
    gen.clear();
    for (auto& e : b5.elems)
      if (e.row.order() <= o) prolongations(e.row, e.mult, n, o - e.row.order(), gen);
    bool found = false;
    for (auto& g : gen) {
      Row rem = span.reduce(g).rem;
      if (rem.is_zero()) continue;
      span.add(g);
      w.push_back(normalize_row(rem));
      found = true;
    }
    if (found) {
      OpMatrix acc = d1;
      for (auto& x : w) {
        acc.rows.push_back(x);
        acc.labels.push_back("w");
      }
      if (module_contains(acc, d1p, opts)) return w;
    }
  }
  return std::nullopt;
}

}  // namespace

OrePoly annihilator(const Row& r, const JanetBasis& b, int bound) {
  OpMatrix one = make_matrix(b.ring, b.ncols, {r}, b.unknowns);
  const Row rr = to_frame(one, b.coord_change).rows[0];
  if (b.normal_form(rr, false).rem.is_zero()) throw Error("annihilator: row already lies in the module");
  LinearSpan span;
  std::vector<MultiIndex> index;
  for (int o = 0; o <= bound; ++o) {
    auto mus = monomials_of_order(b.n(), o);
    std::reverse(mus.begin(), mus.end());
    for (auto& mu : mus) {
      index.push_back(mu);
      auto res = span.add_tracked(b.normal_form(rr.prolong(mu), false).rem);
      if (!res.rem.is_zero()) continue;
      std::vector<RowTerm> ts;
      for (auto& t : res.tag.terms()) ts.push_back({index[t.col], 0, t.c});
      OrePoly p = normalize_row(Row::from_terms(std::move(ts)));
      if (!identity_frame(b.coord_change)) {
        // P was found for the transformed row; bring it back
        OpMatrix pm = make_matrix(b.ring, 1, {p}, {"z"});
        p = normalize_row(change_coordinates(pm, unimodular_inverse(b.coord_change)).rows[0]);
      }
      return p;
    }
  }
  throw Error("annihilator not found within bound " + std::to_string(bound));
}

DualityReport torsion_test(const OpMatrix& d1, const DualityOptions& opts) {
  DualityReport rep;
  rep.step1 = d1;
  rep.completed_steps = 1;
  const CompletionOptions& co = opts.completion;
  try {
    rep.step2 = adjoint(d1);
    rep.completed_steps = 2;
    CCResult s3 = compatibility_conditions(rep.step2, co);
    merge_assumptions(rep.assumptions, s3.assumptions);
    rep.step3 = s3.cc;
    rep.step3.labels.clear();
    for (int i = 0; i < rep.step3.nrows(); ++i) rep.step3.labels.push_back("phi" + std::to_string(i + 1));
    rep.completed_steps = 3;
    rep.step4 = adjoint(rep.step3);
    // D acts on the potentials and produces the unknowns of d1
    rep.step4.unknowns = rep.step3.labels;
    rep.step4.labels = d1.unknowns;
    rep.completed_steps = 4;
    if (!matmul(d1, rep.step4).rows.empty())
      for (auto& r : matmul(d1, rep.step4).rows)
        if (!r.is_zero()) throw Error("internal error: d1 * D != 0");
    CCResult s5 = compatibility_conditions(rep.step4, co);
    merge_assumptions(rep.assumptions, s5.assumptions);
    rep.step5 = s5.cc;
    rep.step5.unknowns = d1.unknowns;
    rep.completed_steps = 5;

    JanetBasis b1 = closure(d1, co);
    merge_assumptions(rep.assumptions, b1.assumptions);
    if (!module_contains(rep.step5, d1, co)) throw Error("internal error: D1 not contained in D1'");
    bool equal = module_contains(b1, rep.step5);
    rep.verdict = equal ? Verdict::TorsionFree : Verdict::HasTorsion;
    if (!equal) {
      int bound = opts.annihilator_bound;
      if (bound < 0) {
        int top = std::max({d1.order(), rep.step3.order(), rep.step5.order(), 0});
        bound = 2 * top + 2;
      }
      JanetBasis b5 = closure(rep.step5, co);
      merge_assumptions(rep.assumptions, b5.assumptions);
      std::vector<Row> rows;
      if (auto low = lowest_torsion_rows(d1, b1, b5, rep.step5, co)) {
        rows = *low;
      } else {
        for (auto& r : torsion_rows(d1, rep.step5, co, rep.assumptions)) {
          OpMatrix one = make_matrix(d1.ring, d1.ncols, {r}, d1.unknowns);
          Row rem = b1.normal_form(to_frame(one, b1.coord_change).rows[0], false).rem;
          if (!identity_frame(b1.coord_change)) {
            OpMatrix back = make_matrix(d1.ring, d1.ncols, {rem}, d1.unknowns);
            rem = change_coordinates(back, unimodular_inverse(b1.coord_change)).rows[0];
          }
          rows.push_back(normalize_row(rem));
        }
      }
      for (auto& r : rows) {
        Witness w;
        w.row = r;
        if (opts.annihilators) {
          try {
            w.annihilator = annihilator(w.row, b1, bound);
            OpMatrix pr = make_matrix(d1.ring, d1.ncols, {left_mul(w.annihilator, w.row)}, d1.unknowns);
            w.certified = module_contains(b1, pr);
          } catch (const BudgetExceeded&) {
            throw;
          } catch (const Error&) {
            w.annihilator = OrePoly();
          }
        }
        rep.witnesses.push_back(w);
      }
    }
  } catch (const BudgetExceeded& e) {
    rep.verdict = Verdict::Unknown;
    rep.unknown_reason = e.what();
  }
  return rep;
}

OpMatrix parametrize(const DualityReport& report) {
  if (report.verdict == Verdict::Unknown) throw Error("parametrize: verdict is unknown (" + report.unknown_reason + ")");
  return report.step4;
}

namespace {

OpMatrix select_columns(const OpMatrix& p, const std::vector<int>& cols) {
  std::vector<Row> rows;
  std::vector<int> map(p.ncols, -1);
  for (size_t j = 0; j < cols.size(); ++j) map[cols[j]] = static_cast<int>(j);
  for (auto& r : p.rows) {
    std::vector<RowTerm> ts;
    for (auto& t : r.terms())
      if (map[t.col] >= 0) ts.push_back({t.mu, map[t.col], t.c});
    rows.push_back(Row::from_terms(std::move(ts)));
  }
  std::vector<std::string> unk;
  for (int c : cols) unk.push_back(p.unknowns[c]);
  return make_matrix(p.ring, static_cast<int>(cols.size()), rows, unk, p.labels);
}

bool next_subset(std::vector<int>& s, int n) {
  int k = static_cast<int>(s.size());
  for (int i = k - 1; i >= 0; --i) {
    if (s[i] < n - k + i) {
      ++s[i];
      for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// CC of p computed in frame a, expressed in the original coordinates
bool presents(const OpMatrix& d1, const OpMatrix& p, const Matrix& a, const CompletionOptions& co) {
  OpMatrix cc;
  if (identity_frame(a)) {
    cc = compatibility_conditions(p, co).cc;
  } else {
    cc = compatibility_conditions(change_coordinates(p, a), co).cc;
    cc = change_coordinates(cc, unimodular_inverse(a));
  }
  cc.unknowns = d1.unknowns;
  return modules_equal(cc, d1, co);
}

}  // namespace

MinimalParametrization minimal_parametrize(const OpMatrix& d1, const OpMatrix& param, const MinimalOptions& opts) {
  const CompletionOptions& co = opts.completion;
  int n = d1.n();
  std::vector<std::vector<int>> subsets;
  if (opts.subset) {
    std::vector<int> s;
    for (auto& name : *opts.subset) {
      auto it = std::find(param.unknowns.begin(), param.unknowns.end(), name);
      if (it == param.unknowns.end()) {
        std::string have;
        for (auto& u : param.unknowns) have += (have.empty() ? "" : ", ") + u;
        throw Error("minimal_parametrize: unknown potential '" + name + "' (potentials: " + have + ")");
      }
      s.push_back(static_cast<int>(it - param.unknowns.begin()));
    }
    std::sort(s.begin(), s.end());
    subsets.push_back(s);
  } else {
    int r = differential_rank(d1, co);
    if (r > param.ncols) throw Error("minimal_parametrize: fewer potentials than the differential rank");
    std::vector<int> s(r);
    for (int i = 0; i < r; ++i) s[i] = i;
    do subsets.push_back(s);
    while (r > 0 && next_subset(s, param.ncols));
  }
  std::vector<Matrix> frames;
  if (opts.frame) {
    frames.push_back(*opts.frame);
  } else {
    frames = frame_sequence(n, opts.completion.seed, opts.random_frames);
  }
  MinimalParametrization out;
  for (auto& s : subsets) {
    OpMatrix p = select_columns(param, s);
    std::vector<std::string> names = p.unknowns;
    out.attempted.push_back(names);
    for (size_t f = 0; f < frames.size(); ++f) {
      try {
        if (presents(d1, p, frames[f], co)) {
          out.param = p;
          out.subset = names;
          out.frame = frames[f];
          return out;
        }
        break;  // decided: the module equality is frame independent
      } catch (const BudgetExceeded&) {
        if (opts.frame) throw;
      }
    }
  }
  std::string tried;
  for (auto& a : out.attempted) {
    tried += " {";
    for (size_t i = 0; i < a.size(); ++i) tried += (i ? "," : "") + a[i];
    tried += "}";
  }
  throw Error("minimal_parametrize: no subset presents the system; attempted" + tried);
}

MinimalParametrization minimal_parametrize(const DualityReport& report, const MinimalOptions& opts) {
  if (report.verdict != Verdict::TorsionFree) throw Error("minimal_parametrize: system is not torsion-free");
  return minimal_parametrize(report.step1, report.step4, opts);
}

ZeroModule adjoint_injective(const OpMatrix& d1, const CompletionOptions& opts) {
  return is_zero_module(adjoint(d1), opts);
}

OpMatrix localize_parametrize(const OpMatrix& d1) {
  const int n = d1.n(), m = d1.ncols, p = d1.nrows();
  // chi_i lives in the x_i slot: coefficients may not use x
  std::vector<std::vector<RatFunc>> a(p, std::vector<RatFunc>(m));
  for (int i = 0; i < p; ++i)
    for (auto& t : d1.rows[i].terms()) {
      for (int s = 0; s < n; ++s)
        if (t.c.support() & (1u << s)) throw Error("localize_parametrize: coefficient depends on " + d1.ring.vars[s]);
      Mono mono;
      for (int k = 0; k < n; ++k) mono.e[k] = static_cast<uint16_t>(t.mu.e[k]);
      a[i][t.col] += t.c * RatFunc(MPoly::monomial(mono, Q(1)));
    }
  // reduced row echelon form
  std::vector<int> pivcol;
  int row = 0;
  for (int c = 0; c < m && row < p; ++c) {
    int piv = -1;
    for (int i = row; i < p; ++i)
      if (!a[i][c].is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[row], a[piv]);
    RatFunc inv = a[row][c].inverse();
    for (int k = c; k < m; ++k) a[row][k] *= inv;
    for (int i = 0; i < p; ++i) {
      if (i == row || a[i][c].is_zero()) continue;
      RatFunc f = a[i][c];
      for (int k = c; k < m; ++k) a[i][k] -= f * a[row][k];
    }
    pivcol.push_back(c);
    ++row;
  }
  std::vector<std::vector<RatFunc>> kernel;
  for (int f = 0; f < m; ++f) {
    if (std::find(pivcol.begin(), pivcol.end(), f) != pivcol.end()) continue;
    std::vector<RatFunc> v(m);
    v[f] = RatFunc(1);
    for (size_t r = 0; r < pivcol.size(); ++r) v[pivcol[r]] = -a[r][f];
    kernel.push_back(v);
  }
  // each kernel vector becomes one potential; clear denominators and content
  int k = static_cast<int>(kernel.size());
  std::vector<Row> rows(m);
  std::vector<std::vector<RowTerm>> terms(m);
  for (int j = 0; j < k; ++j) {
    std::vector<RowTerm> packed;
    for (int i = 0; i < m; ++i)
      if (!kernel[j][i].is_zero()) packed.push_back({MultiIndex{}, i, kernel[j][i]});
    Row col = normalize_row(Row::from_terms(std::move(packed)));
    for (auto& t : col.terms()) {
      // split the polynomial in chi back into derivatives
      for (auto& pt : t.c.num().terms()) {
        MultiIndex mu;
        Mono rest = pt.m;
        for (int s = 0; s < n; ++s) {
          mu.e[s] = pt.m.e[s];
          rest.e[s] = 0;
        }
        terms[t.col].push_back({mu, j, RatFunc(MPoly::monomial(rest, pt.c))});
      }
    }
  }
  for (int i = 0; i < m; ++i) rows[i] = Row::from_terms(std::move(terms[i]));
  std::vector<std::string> pot;
  for (int j = 0; j < k; ++j) pot.push_back("phi" + std::to_string(j + 1));
  OpMatrix out = make_matrix(d1.ring, k, rows, pot, d1.unknowns);
  for (auto& r : matmul(d1, out).rows)
    if (!r.is_zero()) throw Error("internal error: localized parametrization fails");
  return out;
}

bool equivalent_parametrizations(const OpMatrix& p, const OpMatrix& q, const CompletionOptions& opts) {
  if (p.nrows() != q.nrows()) return false;
  return modules_equal(adjoint(p), adjoint(q), opts);
}

std::string render_report(const DualityReport& r) {
  std::ostringstream os;
  auto box = [&](int k, const char* title, const OpMatrix& m) {
    os << "[" << k << "] " << title << "  (" << m.nrows() << " x " << m.ncols << ", order " << m.order() << ")\n";
    std::string body = to_string(m);
    std::istringstream lines(body);
    std::string line;
    while (std::getline(lines, line)) os << "    " << line << "\n";
  };
  if (r.completed_steps >= 1) box(1, "D1", r.step1);
  if (r.completed_steps >= 2) box(2, "ad(D1)", r.step2);
  if (r.completed_steps >= 3) box(3, "ad(D) = CC(ad(D1))", r.step3);
  if (r.completed_steps >= 4) box(4, "D = ad(ad(D))", r.step4);
  if (r.completed_steps >= 5) box(5, "D1' = CC(D)", r.step5);
  os << "verdict: " << verdict_name(r.verdict);
  if (!r.assumptions.empty()) {
    os << " assuming";
    for (size_t i = 0; i < r.assumptions.size(); ++i)
      os << (i ? "," : "") << " " << to_string(r.assumptions[i], r.step1.ring) << " != 0";
  }
  os << "\n";
  if (r.verdict == Verdict::Unknown) os << "reason: " << r.unknown_reason << "\n";
  for (auto& w : r.witnesses) {
    os << "torsion: z = " << to_string(w.row, r.step1.ring, r.step1.unknowns);
    if (!w.annihilator.is_zero()) os << ", annihilator " << op_to_string(w.annihilator, r.step1.ring);
    os << "\n";
  }
  return os.str();
}

}  // namespace oredual
