#include "oredual/ore.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "oredual/error.hpp"

namespace oredual {

int term_cmp(const MultiIndex& a, int ka, const MultiIndex& b, int kb) {
  int oa = a.order(), ob = b.order();
  if (oa != ob) return oa > ob ? 1 : -1;
  for (int i = 0; i < kMaxDerivs; ++i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
  if (ka != kb) return ka < kb ? 1 : -1;
  return 0;
}

namespace {

bool rt_gt(const RowTerm& x, const RowTerm& y) { return term_cmp(x.mu, x.col, y.mu, y.col) > 0; }

}  // namespace

Row Row::from_terms(std::vector<RowTerm> terms) {
  std::sort(terms.begin(), terms.end(), rt_gt);
  Row r;
  r.t_.reserve(terms.size());
  for (auto& t : terms) {
    if (!r.t_.empty() && r.t_.back().mu == t.mu && r.t_.back().col == t.col) {
      r.t_.back().c += t.c;
      if (r.t_.back().c.is_zero()) r.t_.pop_back();
    } else if (!t.c.is_zero()) {
      r.t_.push_back(std::move(t));
    }
  }
  return r;
}

Row Row::unit(int col, const RatFunc& c, const MultiIndex& mu) {
  Row r;
  if (!c.is_zero()) r.t_.push_back({mu, col, c});
  return r;
}

int Row::order() const {
  // leading term has the largest |mu| because the order is degree-compatible
  return t_.empty() ? -1 : t_.front().mu.order();
}

int Row::max_col() const {
  int m = -1;
  for (auto& t : t_) m = std::max(m, t.col);
  return m;
}

Row Row::operator+(const Row& o) const {
  Row r;
  r.t_.reserve(t_.size() + o.t_.size());
  size_t i = 0, j = 0;
  while (i < t_.size() || j < o.t_.size()) {
    int c;
    if (i == t_.size()) c = -1;
    else if (j == o.t_.size()) c = 1;
    else c = term_cmp(t_[i].mu, t_[i].col, o.t_[j].mu, o.t_[j].col);
    if (c > 0) r.t_.push_back(t_[i++]);
    else if (c < 0) r.t_.push_back(o.t_[j++]);
    else {
      RatFunc s = t_[i].c + o.t_[j].c;
      if (!s.is_zero()) r.t_.push_back({t_[i].mu, t_[i].col, std::move(s)});
      ++i, ++j;
    }
  }
  return r;
}

Row Row::operator-() const {
  Row r = *this;
  for (auto& t : r.t_) t.c = -t.c;
  return r;
}

Row Row::operator-(const Row& o) const { return *this + (-o); }

Row Row::scaled(const RatFunc& c) const {
  if (c.is_zero()) return Row();
  if (c.is_one()) return *this;
  Row r = *this;
  for (auto& t : r.t_) t.c = c * t.c;
  return r;
}

Row Row::sub_scaled(const RatFunc& c, const Row& o) const {
  Row r;
  r.t_.reserve(t_.size() + o.t_.size());
  size_t i = 0, j = 0;
  while (i < t_.size() || j < o.t_.size()) {
    int cmp;
    if (i == t_.size()) cmp = -1;
    else if (j == o.t_.size()) cmp = 1;
    else cmp = term_cmp(t_[i].mu, t_[i].col, o.t_[j].mu, o.t_[j].col);
    if (cmp > 0) {
      r.t_.push_back(t_[i++]);
    } else if (cmp < 0) {
      r.t_.push_back({o.t_[j].mu, o.t_[j].col, -(c * o.t_[j].c)});
      ++j;
    } else {
      RatFunc s = t_[i].c - c * o.t_[j].c;
      if (!s.is_zero()) r.t_.push_back({t_[i].mu, t_[i].col, std::move(s)});
      ++i, ++j;
    }
  }
  return r;
}

Row Row::prolong(int i) const {
  Row shifted, derivs;
  shifted.t_.reserve(t_.size());
  for (auto& t : t_) {
    RowTerm s = t;
    s.mu.e[i] += 1;
    shifted.t_.push_back(std::move(s));
    if (!t.c.is_constant()) {
      RatFunc dc = t.c.derive(i);
      if (!dc.is_zero()) derivs.t_.push_back({t.mu, t.col, std::move(dc)});
    }
  }
  if (derivs.t_.empty()) return shifted;
  return shifted + derivs;
}

Row Row::prolong(const MultiIndex& mu) const {
  Row r = *this;
  for (int i = 0; i < kMaxDerivs; ++i)
    for (int k = 0; k < mu.e[i]; ++k) r = r.prolong(i);
  return r;
}

Row Row::column(int col) const {
  Row r;
  for (auto& t : t_)
    if (t.col == col) r.t_.push_back({t.mu, 0, t.c});
  return r;
}

Row Row::shift_cols(int delta) const {
  Row r = *this;
  for (auto& t : r.t_) t.col += delta;
  return r;
}

Row Row::map_cols(const std::vector<int>& to) const {
  std::vector<RowTerm> out;
  for (auto& t : t_) {
    int c = to.at(t.col);
    if (c < 0) continue;
    out.push_back({t.mu, c, t.c});
  }
  return from_terms(std::move(out));
}

bool Row::operator==(const Row& o) const {
  if (t_.size() != o.t_.size()) return false;
  for (size_t i = 0; i < t_.size(); ++i)
    if (!(t_[i].mu == o.t_[i].mu) || t_[i].col != o.t_[i].col || t_[i].c != o.t_[i].c) return false;
  return true;
}

// ---------------------------------------------------------------------------

Row compose(const Row& r, const std::vector<Row>& rows) {
  std::map<std::pair<MultiIndex, int>, Row> cache;
  std::vector<RowTerm> acc;
  for (auto& t : r.terms()) {
    if (t.col < 0 || t.col >= static_cast<int>(rows.size())) throw Error("compose: column out of range");
    auto key = std::make_pair(t.mu, t.col);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, rows[t.col].prolong(t.mu)).first;
    for (auto& s : it->second.terms()) acc.push_back({s.mu, s.col, t.c * s.c});
  }
  return Row::from_terms(std::move(acc));
}

Row left_mul(const OrePoly& p, const Row& r) {
  std::vector<RowTerm> acc;
  for (auto& t : p.terms()) {
    Row pr = r.prolong(t.mu);
    for (auto& s : pr.terms()) acc.push_back({s.mu, s.col, t.c * s.c});
  }
  return Row::from_terms(std::move(acc));
}

OrePoly ore_mul(const OrePoly& p, const OrePoly& q) { return left_mul(p, q); }

OrePoly op_d(int i) { return Row::unit(0, RatFunc(1), MultiIndex::unit(i)); }

OrePoly op_coeff(const RatFunc& a) { return Row::unit(0, a); }

OrePoly op_adjoint(const OrePoly& p) {
  std::vector<RowTerm> acc;
  for (auto& t : p.terms()) {
    Row x = Row::unit(t.col, t.c).prolong(t.mu);
    bool neg = t.mu.order() % 2 == 1;
    for (auto& s : x.terms()) acc.push_back({s.mu, s.col, neg ? -s.c : s.c});
  }
  return Row::from_terms(std::move(acc));
}

// ---------------------------------------------------------------------------

int OpMatrix::order() const {
  int o = -1;
  for (auto& r : rows) o = std::max(o, r.order());
  return o;
}

void OpMatrix::set_entry(int r, int c, const OrePoly& p) {
  std::vector<RowTerm> keep;
  for (auto& t : rows.at(r).terms())
    if (t.col != c) keep.push_back(t);
  for (auto& t : p.terms()) keep.push_back({t.mu, c, t.c});
  rows[r] = Row::from_terms(std::move(keep));
}

void OpMatrix::validate() const {
  ring.validate();
  if (ring.n() > kMaxDerivs) throw Error("at most " + std::to_string(kMaxDerivs) + " independent variables");
  if (static_cast<int>(unknowns.size()) != ncols) throw Error("unknown labels do not match column count");
  if (labels.size() != rows.size()) throw Error("row labels do not match row count");
  uint32_t allowed = ring.nslots() >= 32 ? ~0u : ((1u << ring.nslots()) - 1);
  for (auto& r : rows)
    for (auto& t : r.terms()) {
      if (t.col < 0 || t.col >= ncols) throw Error("row term refers to a missing column");
      for (int i = ring.n(); i < kMaxDerivs; ++i)
        if (t.mu.e[i]) throw Error("derivative index beyond the declared variables");
      if (t.c.support() & ~allowed) throw Error("coefficient uses an undeclared slot");
    }
}

bool OpMatrix::operator==(const OpMatrix& o) const {
  return ring == o.ring && ncols == o.ncols && rows == o.rows;
}

OpMatrix make_matrix(const Ring& ring, int ncols, std::vector<Row> rows, std::vector<std::string> unknowns,
                     std::vector<std::string> labels) {
  OpMatrix m;
  m.ring = ring;
  m.ncols = ncols;
  m.rows = std::move(rows);
  m.unknowns = std::move(unknowns);
  m.labels = std::move(labels);
  for (int k = static_cast<int>(m.unknowns.size()); k < ncols; ++k) m.unknowns.push_back("u" + std::to_string(k + 1));
  m.unknowns.resize(ncols);
  for (int i = static_cast<int>(m.labels.size()); i < m.nrows(); ++i) m.labels.push_back("r" + std::to_string(i + 1));
  m.labels.resize(m.rows.size());
  m.validate();
  return m;
}

OpMatrix matmul(const OpMatrix& a, const OpMatrix& b) {
  if (!(a.ring == b.ring)) throw Error("matmul: mismatched variable contexts");
  if (a.ncols != b.nrows()) throw Error("matmul: dimension mismatch");
  std::vector<Row> rows;
  for (auto& r : a.rows) rows.push_back(compose(r, b.rows));
  return make_matrix(a.ring, b.ncols, std::move(rows), b.unknowns, a.labels);
}

OpMatrix adjoint(const OpMatrix& m) {
  std::vector<std::vector<RowTerm>> acc(m.ncols);
  for (int tau = 0; tau < m.nrows(); ++tau)
    for (auto& t : m.rows[tau].terms()) {
      Row x = Row::unit(tau, t.c).prolong(t.mu);
      bool neg = t.mu.order() % 2 == 1;
      for (auto& s : x.terms()) acc[t.col].push_back({s.mu, s.col, neg ? -s.c : s.c});
    }
  std::vector<Row> rows;
  for (auto& a : acc) rows.push_back(Row::from_terms(std::move(a)));
  std::vector<std::string> unknowns, labels;
  for (auto& l : m.labels) unknowns.push_back("ad_" + l);
  for (auto& u : m.unknowns) labels.push_back("ad_" + u);
  // labels of a twice-adjoined matrix fall back to the originals
  for (auto& s : unknowns)
    if (s.rfind("ad_ad_", 0) == 0) s = s.substr(6);
  for (auto& s : labels)
    if (s.rfind("ad_ad_", 0) == 0) s = s.substr(6);
  return make_matrix(m.ring, m.nrows(), std::move(rows), unknowns, labels);
}

RatFunc apply_row(const Row& r, const std::vector<RatFunc>& section) {
  std::map<std::pair<MultiIndex, int>, RatFunc> cache;
  std::function<RatFunc(const MultiIndex&, int)> deriv = [&](const MultiIndex& mu, int k) -> RatFunc {
    if (mu.order() == 0) return section.at(k);
    auto key = std::make_pair(mu, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    int i = 0;
    while (mu.e[i] == 0) ++i;
    MultiIndex lower = mu;
    lower.e[i] -= 1;
    RatFunc v = deriv(lower, k).derive(i);
    cache.emplace(key, v);
    return v;
  };
  RatFunc sum;
  for (auto& t : r.terms()) sum += t.c * deriv(t.mu, t.col);
  return sum;
}

std::vector<RatFunc> apply(const OpMatrix& m, const std::vector<RatFunc>& section) {
  if (static_cast<int>(section.size()) != m.ncols)
    throw Error("apply: section has " + std::to_string(section.size()) + " components, expected " +
                std::to_string(m.ncols));
  std::vector<RatFunc> out;
  for (auto& r : m.rows) out.push_back(apply_row(r, section));
  return out;
}

OpMatrix specialize_params(const OpMatrix& m, const std::map<std::string, Q>& bindings) {
  if (bindings.empty()) return m;
  const Ring& ring = m.ring;
  std::map<int, Q> slots;
  for (auto& [name, v] : bindings) {
    int s = ring.slot(name);
    if (s < ring.n()) throw Error("'" + name + "' is not a parameter of this system");
    slots[s] = v;
  }
  Ring out;
  out.vars = ring.vars;
  std::vector<int> perm(kMaxSlots, -1);
  for (int i = 0; i < ring.n(); ++i) perm[i] = i;
  for (int j = 0; j < ring.nparams(); ++j) {
    int s = ring.n() + j;
    if (slots.count(s)) continue;
    perm[s] = out.nslots();
    out.params.push_back(ring.params[j]);
  }
  std::vector<Row> rows;
  for (auto& r : m.rows) {
    std::vector<RowTerm> ts;
    for (auto& t : r.terms()) ts.push_back({t.mu, t.col, specialize(t.c, slots, ring).remap(perm)});
    rows.push_back(Row::from_terms(std::move(ts)));
  }
  return make_matrix(out, m.ncols, std::move(rows), m.unknowns, m.labels);
}

std::vector<std::vector<long>> unimodular_inverse(const std::vector<std::vector<long>>& a) {
  size_t n = a.size();
  for (auto& row : a)
    if (row.size() != n) throw Error("coordinate change must be a square matrix");
  std::vector<std::vector<Q>> m(n, std::vector<Q>(2 * n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
    m[i][n + i] = 1;
  }
  Q det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) throw Error("coordinate change is singular");
    if (p != c) std::swap(m[p], m[c]), det = -det;
    det *= m[c][c];
    Q inv = 1 / m[c][c];
    for (auto& v : m[c]) v *= inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == c || sgn(m[r][c]) == 0) continue;
      Q f = m[r][c];
      for (size_t j = 0; j < 2 * n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  if (det != 1 && det != -1) throw Error("coordinate change is not unimodular (det = " + det.get_str() + ")");
  std::vector<std::vector<long>> out(n, std::vector<long>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out[i][j] = m[i][n + j].get_num().get_si();
  return out;
}

OpMatrix change_coordinates(const OpMatrix& m, const std::vector<std::vector<long>>& a) {
  int n = m.n();
  if (static_cast<int>(a.size()) != n) throw Error("coordinate change size does not match the variable count");
  auto ainv = unimodular_inverse(a);
  // x_j = sum_k ainv[j][k] xbar_k
  std::vector<MPoly> images(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (ainv[j][k]) images[j] = images[j] + MPoly::var(k).scaled(Q(ainv[j][k]));
  // d_j = sum_i a[i][j] dbar_i, expanded as commuting polynomials in slots 0..n-1
  std::vector<MPoly> dlin(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (a[i][j]) dlin[j] = dlin[j] + MPoly::var(i).scaled(Q(a[i][j]));
  std::map<MultiIndex, MPoly> dcache;
  auto dpoly = [&](const MultiIndex& mu) -> const MPoly& {
    auto it = dcache.find(mu);
    if (it != dcache.end()) return it->second;
    MPoly p(1);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < mu.e[j]; ++k) p = p * dlin[j];
    return dcache.emplace(mu, p).first->second;
  };
  std::vector<Row> rows;
  for (auto& r : m.rows) {
    std::vector<RowTerm> ts;
    for (auto& t : r.terms()) {
      RatFunc c = t.c.compose(images);
      for (auto& pt : dpoly(t.mu).terms()) {
        MultiIndex nu;
        for (int i = 0; i < n; ++i) nu.e[i] = static_cast<uint8_t>(pt.m.e[i]);
        ts.push_back({nu, t.col, c * RatFunc(pt.c)});
      }
    }
    rows.push_back(Row::from_terms(std::move(ts)));
  }
  return make_matrix(m.ring, m.ncols, std::move(rows), m.unknowns, m.labels);
}

// ---------------------------------------------------------------------------

std::string derivative_name(const MultiIndex& mu, int n) {
  if (mu.order() == 0) return "";
  std::string s = "d";
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < mu.e[i]; ++k) s += std::to_string(i + 1);
  return s;
}

namespace {

std::string render_terms(const Row& r, const Ring& ring, const std::vector<std::string>* unknowns) {
  if (r.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& t : r.terms()) {
    RatFunc c = t.c;
    bool neg = false;
    if (c.is_polynomial() && c.num().size() == 1 && sgn(c.num().lc()) < 0) neg = true, c = -c;
    std::string cs = to_string(c, ring);
    if (!c.is_polynomial() || c.num().size() > 1) cs = "(" + cs + ")";
    if (first) os << (neg ? "-" : "");
    else os << (neg ? " - " : " + ");
    first = false;
    std::vector<std::string> f;
    if (cs != "1") f.push_back(cs);
    std::string d = derivative_name(t.mu, ring.n());
    if (!d.empty()) f.push_back(d);
    if (unknowns)
      f.push_back(t.col < static_cast<int>(unknowns->size()) ? (*unknowns)[t.col] : "e" + std::to_string(t.col + 1));
    if (f.empty()) f.push_back("1");
    for (size_t i = 0; i < f.size(); ++i) os << (i ? "*" : "") << f[i];
  }
  return os.str();
}

}  // namespace

std::string to_string(const Row& r, const Ring& ring, const std::vector<std::string>& unknowns) {
  return render_terms(r, ring, &unknowns);
}

std::string op_to_string(const OrePoly& p, const Ring& ring) { return render_terms(p, ring, nullptr); }

std::string to_string(const OpMatrix& m) {
  std::ostringstream os;
  for (int i = 0; i < m.nrows(); ++i) os << m.labels[i] << ": " << to_string(m.rows[i], m.ring, m.unknowns) << "\n";
  return os.str();
}

}  // namespace oredual
