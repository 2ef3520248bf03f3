#include "oredual/corpus.hpp"

#include <functional>
#include <map>

#include "oredual/error.hpp"

namespace oredual {

namespace {

Ring coords(int n) {
  Ring r;
  for (int i = 1; i <= n; ++i) r.vars.push_back("x" + std::to_string(i));
  return r;
}

Ring time_ring(std::vector<std::string> params = {}) {
  Ring r;
  r.vars = {"t"};
  r.params = std::move(params);
  return r;
}

MultiIndex idx(std::initializer_list<int> vars) {
  MultiIndex m;
  for (int v : vars) m.e[v] += 1;
  return m;
}

std::string pair_name(const std::string& base, int i, int j) {
  return base + std::to_string(i + 1) + std::to_string(j + 1);
}

// symmetric pairs (i, j), i <= j, in row-major order
std::vector<std::pair<int, int>> sym_pairs(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) out.push_back({i, j});
  return out;
}

int sym_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  int k = 0;
  for (int a = 0; a < i; ++a) k += n - a;
  return k + (j - i);
}

void add(std::vector<RowTerm>& ts, const MultiIndex& mu, int col, const Q& c) {
  if (c != 0) ts.push_back({mu, col, RatFunc(c)});
}

OpMatrix parsed(const Ring& ring, std::vector<std::string> unknowns, std::vector<std::string> rows,
                std::vector<std::string> labels = {}) {
  return parse_matrix(ring, unknowns, rows, labels);
}

// 2 R_ij with lower indices, as rows over Omega_uv (u <= v)
std::vector<Row> ricci_lower(const MetricSpec& w) {
  int n = w.n();
  std::vector<Row> rows;
  for (auto [i, j] : sym_pairs(n)) {
    std::vector<RowTerm> ts;
    for (int r = 0; r < n; ++r) {
      Q s = w.signature[r];
      add(ts, idx({r, r}), sym_index(n, i, j), s);
      add(ts, idx({i, j}), sym_index(n, r, r), s);
      add(ts, idx({r, i}), sym_index(n, r, j), -s);
      add(ts, idx({r, j}), sym_index(n, r, i), -s);
    }
    rows.push_back(Row::from_terms(std::move(ts)));
  }
  return rows;
}

OpMatrix omega_matrix(const MetricSpec& w, std::vector<Row> rows, const std::string& row_base) {
  int n = w.n();
  std::vector<std::string> unk, labels;
  for (auto [i, j] : sym_pairs(n)) {
    unk.push_back(pair_name("O", i, j));
    labels.push_back(pair_name(row_base, i, j));
  }
  return make_matrix(coords(n), static_cast<int>(unk.size()), std::move(rows), unk, labels);
}

// raise both indices with w and double the off-diagonal rows
std::vector<Row> raise_rows(const MetricSpec& w, std::vector<Row> rows) {
  int n = w.n();
  auto pairs = sym_pairs(n);
  for (size_t k = 0; k < pairs.size(); ++k) {
    auto [i, j] = pairs[k];
    Q f = w.signature[i] * w.signature[j] * (i == j ? 1 : 2);
    rows[k] = rows[k].scaled(RatFunc(f));
  }
  return rows;
}

}  // namespace

MetricSpec euclidean(int n) { return MetricSpec{std::vector<int>(n, 1)}; }
MetricSpec minkowski() { return MetricSpec{{1, 1, 1, -1}}; }

OpMatrix killing(const MetricSpec& w) {
  int n = w.n();
  if (n < 1 || n > kMaxDerivs) throw Error("killing: dimension out of range");
  for (int s : w.signature)
    if (s != 1 && s != -1) throw Error("killing: signature entries must be +1 or -1");
  std::vector<Row> rows;
  std::vector<std::string> labels, unk;
  for (auto [i, j] : sym_pairs(n)) {
    std::vector<RowTerm> ts;
    add(ts, idx({i}), j, w.signature[j]);
    add(ts, idx({j}), i, w.signature[i]);
    rows.push_back(Row::from_terms(std::move(ts)));
    labels.push_back(pair_name("O", i, j));
  }
  for (int r = 0; r < n; ++r) unk.push_back("xi" + std::to_string(r + 1));
  return make_matrix(coords(n), n, rows, unk, labels);
}

OpMatrix cauchy(const MetricSpec& w) {
  OpMatrix c = adjoint(killing(w));
  for (auto& u : c.unknowns) u = "s" + u.substr(u.size() - 2);
  for (size_t r = 0; r < c.labels.size(); ++r) c.labels[r] = "xi" + std::to_string(r + 1);
  return c;
}

OpMatrix ricci_linearized(const MetricSpec& w) { return omega_matrix(w, raise_rows(w, ricci_lower(w)), "R"); }

OpMatrix einstein_linearized(const MetricSpec& w) {
  int n = w.n();
  std::vector<Row> r2 = ricci_lower(w);
  // tr(R) = sum_k w^kk R_kk = 1/2 sum_k s_k (2 R_kk)
  Row tr;
  for (int k = 0; k < n; ++k) tr = tr + r2[sym_index(n, k, k)].scaled(RatFunc(Q(w.signature[k], 2)));
  std::vector<Row> e;
  for (auto [i, j] : sym_pairs(n)) {
    Row row = r2[sym_index(n, i, j)];
    if (i == j) row = row - tr.scaled(RatFunc(Q(w.signature[i])));
    e.push_back(row);
  }
  return omega_matrix(w, raise_rows(w, e), "E");
}

OpMatrix conformal_killing(const MetricSpec& w) {
  int n = w.n();
  OpMatrix k = killing(w);
  // trace w^rs Omega_rs = 2 sum_r d_r xi^r
  Row div;
  for (int r = 0; r < n; ++r) div = div + Row::unit(r, RatFunc(2), idx({r}));
  std::vector<Row> rows;
  std::vector<std::string> labels;
  auto pairs = sym_pairs(n);
  for (size_t a = 0; a < pairs.size(); ++a) {
    auto [i, j] = pairs[a];
    if (i == j && i == n - 1) continue;
    Row row = k.rows[a].scaled(RatFunc(Q(n)));
    if (i == j) row = row - div.scaled(RatFunc(Q(w.signature[i])));
    rows.push_back(row);
    labels.push_back(k.labels[a]);
  }
  return make_matrix(k.ring, n, rows, k.unknowns, labels);
}

OpMatrix exterior_derivative(int n, int p) {
  if (p < 0 || p >= n) throw Error("exterior_derivative: degree out of range");
  auto subsets = [n](int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> s;
    std::function<void(int)> rec = [&](int start) {
      if (static_cast<int>(s.size()) == k) {
        out.push_back(s);
        return;
      }
      for (int i = start; i < n; ++i) {
        s.push_back(i);
        rec(i + 1);
        s.pop_back();
      }
    };
    rec(0);
    return out;
  };
  auto name = [](const std::string& base, const std::vector<int>& s) {
    std::string out = base;
    for (int i : s) out += std::to_string(i + 1);
    return out;
  };
  auto cols = subsets(p), rws = subsets(p + 1);
  std::vector<std::string> unk, labels;
  for (auto& s : cols) unk.push_back(name(p == 0 ? "f" : "A", s));
  std::vector<Row> rows;
  for (auto& s : rws) {
    std::vector<RowTerm> ts;
    for (size_t k = 0; k < s.size(); ++k) {
      std::vector<int> rest;
      for (size_t j = 0; j < s.size(); ++j)
        if (j != k) rest.push_back(s[j]);
      int col = static_cast<int>(std::find(cols.begin(), cols.end(), rest) - cols.begin());
      add(ts, idx({s[k]}), col, k % 2 == 0 ? 1 : -1);
    }
    rows.push_back(Row::from_terms(std::move(ts)));
    labels.push_back(name("F", s));
  }
  return make_matrix(coords(n), static_cast<int>(cols.size()), rows, unk, labels);
}

namespace {

using Builder = std::function<Fixture()>;

Fixture fx(std::string name, std::string citation, std::string note, OpMatrix op) {
  return Fixture{std::move(name), std::move(citation), std::move(note), std::move(op)};
}

Ring xring(int n, std::vector<std::string> params = {}) {
  Ring r = coords(n);
  r.params = std::move(params);
  return r;
}

OpMatrix cosserat_d1() {
  return parsed(xring(2), {"xi1", "xi2", "xi12"},
                {"d1*xi1", "d2*xi1 - xi12", "d1*xi2 + xi12", "d2*xi2", "d1*xi12", "d2*xi12"},
                {"A11", "A12", "A21", "A22", "B1", "B2"});
}

const std::vector<std::pair<std::string, Builder>>& registry() {
  static const std::vector<std::pair<std::string, Builder>> reg = {
      {"ex2_1",
       [] {
         return fx("ex2_1", "first-order OD system with parameter a, transfer-matrix example",
                   "parametrizable for generic a; torsion for a = 0 and a = 1",
                   parsed(time_ring({"a"}), {"y1", "y2", "y3"}, {"d1*y1 - a*y2 - d1*y3", "y1 - d1*y2 + d1*y3"}));
       }},
      {"ex2_9",
       [] {
         return fx("ex2_9", "y11 = 0, y13 - y2 = 0, not involutive in the given coordinates", "",
                   parsed(xring(3), {"y"}, {"d11*y", "d13*y - d2*y"}));
       }},
      {"ex2_9_permuted",
       [] {
         return fx("ex2_9_permuted", "the same system after exchanging x1 and x3", "involutive after completion",
                   parsed(xring(3), {"y"}, {"d33*y", "d13*y - d2*y"}));
       }},
      {"macaulay",
       [] {
         return fx("macaulay", "Macaulay system with 8 parametric jets", "",
                   parsed(xring(3), {"y"}, {"d33*y", "d23*y - d11*y", "d22*y"}));
       }},
      {"killing1", [] { return fx("killing1", "Killing operator, n = 1", "Omega = 2 epsilon", killing(euclidean(1))); }},
      {"killing2",
       [] { return fx("killing2", "Killing operator, Euclidean n = 2", "Omega = 2 epsilon", killing(euclidean(2))); }},
      {"killing2_prolonged",
       [] {
         OpMatrix k = killing(euclidean(2));
         OpMatrix out = k;
         for (int i = 0; i < 2; ++i)
           for (int r = 0; r < k.nrows(); ++r) {
             out.rows.push_back(k.rows[r].prolong(i));
             out.labels.push_back(k.labels[r] + "_" + std::to_string(i + 1));
           }
         return fx("killing2_prolonged", "first prolongation of the Killing operator, n = 2",
                   "involutive; symbol of order 2 vanishes", out);
       }},
      {"killing3",
       [] { return fx("killing3", "Killing operator, Euclidean n = 3", "Omega = 2 epsilon", killing(euclidean(3))); }},
      {"killing4",
       [] { return fx("killing4", "Killing operator, Minkowski n = 4", "signature (+,+,+,-)", killing(minkowski())); }},
      {"bose",
       [] {
         return fx("bose", "Bose conjecture system with a hidden torsion element",
                   "torsion element y2_22 - y1_12 + y1 killed by d3",
                   parsed(xring(3), {"y1", "y2", "y3"}, {"d12*y3 - d3*y2 - y3", "d22*y3 - d3*y1"}));
       }},
      {"rlc",
       [] {
         return fx("rlc", "RLC circuit: capacitor branch, coil branch and output current",
                   "unknowns x1, x2 (states), u (voltage), y (current)",
                   parsed(time_ring({"R1", "R2", "L", "C"}), {"x1", "x2", "u", "y"},
                          {"R1*C*d1*x1 + x1 - u", "L*d1*x2 + R2*x2 - u", "C*d1*x1 + x2 - y"}));
       }},
      {"rlc2",
       [] {
         return fx("rlc2", "RLC circuit state equations without the output", "controllable iff R1*R2*C - L != 0",
                   parsed(time_ring({"R1", "R2", "L", "C"}), {"x1", "x2", "u"},
                          {"R1*C*d1*x1 + x1 - u", "L*d1*x2 + R2*x2 - u"}));
       }},
      {"ex7_4",
       [] {
         return fx("ex7_4", "second-order system d22 xi = 0, d12 xi + a d1 xi = 0", "rows are eta1, eta2",
                   parsed(xring(2, {"a"}), {"xi"}, {"d12*xi + a*d1*xi", "d22*xi"}, {"eta1", "eta2"}));
       }},
      {"ex7_4_D1",
       [] {
         return fx("ex7_4_D1", "generating compatibility condition of ex7_4 for a != 0", "",
                   parsed(xring(2, {"a"}), {"eta1", "eta2"}, {"d12*eta2 - d22*eta1 + a*d1*eta2"}));
       }},
      {"ex7_5",
       [] {
         return fx("ex7_5", "first-order operator d2 eta1 - d1 eta2 + x2 eta2", "",
                   parsed(xring(2), {"eta1", "eta2"}, {"d2*eta1 - d1*eta2 + x2*eta2"}));
       }},
      {"ex7_5_param",
       [] {
         return fx("ex7_5_param", "canonical second-order parametrization of ex7_5", "rows are eta1, eta2",
                   parsed(xring(2), {"xi1", "xi2"},
                          {"d12*xi1 + d11*xi2 - x2*d2*xi1 - 2*x2*d1*xi2 + xi1 + x2^2*xi2",
                           "d22*xi1 + d12*xi2 - x2*d2*xi2 - 2*xi2"},
                          {"eta1", "eta2"}));
       }},
      {"ex7_5_min1",
       [] {
         return fx("ex7_5_min1", "minimal parametrization keeping xi1", "",
                   parsed(xring(2), {"xi"}, {"d12*xi - x2*d2*xi + xi", "d22*xi"}, {"eta1", "eta2"}));
       }},
      {"ex7_5_min2",
       [] {
         return fx("ex7_5_min2", "minimal parametrization keeping xi2", "",
                   parsed(xring(2), {"xi"}, {"d11*xi - 2*x2*d1*xi + x2^2*xi", "d12*xi - x2*d2*xi - 2*xi"},
                          {"eta1", "eta2"}));
       }},
      {"ex7_5_min3",
       [] {
         return fx("ex7_5_min3", "minimal parametrization from xi1 = d1 phi, xi2 = -d2 phi", "",
                   parsed(xring(2), {"phi"}, {"x2*d12*phi - x2^2*d2*phi + d1*phi", "x2*d22*phi + 2*d2*phi"},
                          {"eta1", "eta2"}));
       }},
      {"ex7_5_Dm1",
       [] {
         return fx("ex7_5_Dm1", "first-order injective operator parametrizing ex7_5_param", "",
                   parsed(xring(2), {"theta"}, {"d1*theta - x2*theta", "-d2*theta"}, {"xi1", "xi2"}));
       }},
      {"contact",
       [] {
         return fx("contact", "infinitesimal contact transformations preserving dx1 - x3 dx2",
                   "rows are eta1, eta2, eta3",
                   parsed(xring(3), {"xi1", "xi2", "xi3"},
                          {"d2*xi1 - x3*d2*xi2 + x3*d1*xi1 - x3^2*d1*xi2 - xi3", "d3*xi1 - x3*d3*xi2",
                           "d3*xi3 + d2*xi2 - d1*xi1 + 2*x3*d1*xi2"},
                          {"eta1", "eta2", "eta3"}));
       }},
      {"contact_param",
       [] {
         return fx("contact_param", "injective parametrization of the contact system", "xi1 - x3 xi2 = phi",
                   parsed(xring(3), {"phi"}, {"-x3*d3*phi + phi", "-d3*phi", "d2*phi + x3*d1*phi"},
                          {"xi1", "xi2", "xi3"}));
       }},
      {"contact_flat",
       [] {
         return fx("contact_flat", "contact-type system for the density (1, 0, 0)",
                   "first row is -2 Omega_1; xi1 is a torsion element",
                   parsed(xring(3), {"xi1", "xi2", "xi3"}, {"d3*xi3 + d2*xi2 - d1*xi1", "d2*xi1", "d3*xi1"},
                          {"W1", "W2", "W3"}));
       }},
      {"double_pendulum",
       [] {
         return fx("double_pendulum", "double pendulum on a moving bar", "controllable iff l1 != l2",
                   parsed(time_ring({"l1", "l2", "g"}), {"x", "theta1", "theta2"},
                          {"d11*x + l1*d11*theta1 + g*theta1", "d11*x + l2*d11*theta2 + g*theta2"}));
       }},
      {"double_pendulum_param",
       [] {
         return fx("double_pendulum_param", "order-4 parametrization of the double pendulum", "",
                   parsed(time_ring({"l1", "l2", "g"}), {"phi"},
                          {"-l1*l2*d1111*phi - g*(l1 + l2)*d11*phi - g^2*phi", "l2*d1111*phi + g*d11*phi",
                           "l1*d1111*phi + g*d11*phi"},
                          {"x", "theta1", "theta2"}));
       }},
      {"einstein4",
       [] {
         return fx("einstein4", "linearized Einstein operator over Minkowski space",
                   "rows 2 E^{ij}, doubled for i < j", einstein_linearized(minkowski()));
       }},
      {"ricci4",
       [] {
         return fx("ricci4", "linearized Ricci operator over Minkowski space", "rows 2 R^{ij}, doubled for i < j",
                   ricci_linearized(minkowski()));
       }},
      {"maxwell_em",
       [] {
         return fx("maxwell_em", "exterior derivative on 1-forms, n = 4 (potential to field)", "F_ij = d_i A_j - d_j A_i",
                   exterior_derivative(4, 1));
       }},
      {"cosserat2d_D1", [] { return fx("cosserat2d_D1", "first Spencer operator for plane rigid motions", "", cosserat_d1()); }},
      {"cosserat2d_D2",
       [] {
         return fx("cosserat2d_D2", "compatibility conditions of cosserat2d_D1", "",
                   parsed(xring(2), {"A11", "A12", "A21", "A22", "B1", "B2"},
                          {"d1*A12 - d2*A11 + B1", "d1*A22 - d2*A21 + B2", "d1*B2 - d2*B1"}));
       }},
      {"cosserat2d",
       [] {
         OpMatrix c = adjoint(cosserat_d1());
         c.unknowns = {"s11", "s12", "s21", "s22", "m1", "m2"};
         c.labels = {"xi1", "xi2", "xi12"};
         return fx("cosserat2d", "Cosserat couple-stress equations, n = 2", "adjoint of cosserat2d_D1", c);
       }},
      {"counterexample4_5",
       [] {
         return fx("counterexample4_5", "curl-type operator d1 u2 - d2 u1", "compatibility condition of counterexample4_5_D",
                   parsed(xring(2), {"u1", "u2"}, {"d1*u2 - d2*u1"}));
       }},
      {"counterexample4_5_D",
       [] {
         return fx("counterexample4_5_D", "involutive operator y -> (d12 y, d22 y)", "",
                   parsed(xring(2), {"y"}, {"d12*y", "d22*y"}, {"u1", "u2"}));
       }},
      {"cauchy2",
       [] {
         return fx("cauchy2", "Cauchy stress equations, n = 2, symmetric stress", "divergence form",
                   parsed(xring(2), {"s11", "s12", "s22"}, {"d1*s11 + d2*s12", "d1*s12 + d2*s22"}));
       }},
      {"airy2",
       [] {
         return fx("airy2", "Airy stress function parametrization", "",
                   parsed(xring(2), {"phi"}, {"d22*phi", "-d12*phi", "d11*phi"}, {"s11", "s12", "s22"}));
       }},
      {"cauchy3",
       [] {
         return fx("cauchy3", "Cauchy stress equations, n = 3, symmetric stress", "divergence form",
                   parsed(xring(3), {"s11", "s12", "s13", "s22", "s23", "s33"},
                          {"d1*s11 + d2*s12 + d3*s13", "d1*s12 + d2*s22 + d3*s23", "d1*s13 + d2*s23 + d3*s33"}));
       }},
      {"beltrami3",
       [] {
         return fx("beltrami3", "Beltrami stress function parametrization, 6 potentials", "",
                   parsed(xring(3), {"p11", "p12", "p13", "p22", "p23", "p33"},
                          {"d33*p22 + d22*p33 - 2*d23*p23", "d13*p23 + d23*p13 - d33*p12 - d12*p33",
                           "d23*p12 + d12*p23 - d22*p13 - d13*p22", "d33*p11 + d11*p33 - 2*d13*p13",
                           "d12*p13 + d13*p12 - d23*p11 - d11*p23", "d22*p11 + d11*p22 - 2*d12*p12"},
                          {"s11", "s12", "s13", "s22", "s23", "s33"}));
       }},
      {"maxwell3",
       [] {
         return fx("maxwell3", "Maxwell stress functions: Beltrami with p11, p22, p33 only", "",
                   parsed(xring(3), {"A", "B", "C"},
                          {"d33*B + d22*C", "-d12*C", "-d13*B", "d33*A + d11*C", "-d23*A", "d22*A + d11*B"},
                          {"s11", "s12", "s13", "s22", "s23", "s33"}));
       }},
      {"beltrami3_min2",
       [] {
         return fx("beltrami3_min2", "Beltrami with p11, p12, p22 only", "",
                   parsed(xring(3), {"p11", "p12", "p22"},
                          {"d33*p22", "-d33*p12", "d23*p12 - d13*p22", "d33*p11", "-d23*p11 + d13*p12",
                           "d22*p11 + d11*p22 - 2*d12*p12"},
                          {"s11", "s12", "s13", "s22", "s23", "s33"}));
       }},
      {"conformal_killing3",
       [] {
         return fx("conformal_killing3", "conformal Killing operator, Euclidean n = 3", "traceless part scaled by 3",
                   conformal_killing(euclidean(3)));
       }},
  };
  return reg;
}

}  // namespace

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (auto& [name, _] : registry()) out.push_back(name);
  return out;
}

Fixture fixture(const std::string& name) {
  for (auto& [n, build] : registry())
    if (n == name) return build();
  throw Error("unknown fixture '" + name + "'");
}

}  // namespace oredual
