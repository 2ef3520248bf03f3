#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "oredual/ratfunc.hpp"

namespace oredual {

constexpr int kMaxDerivs = 8;

struct MultiIndex {
  std::array<uint8_t, kMaxDerivs> e{};

  static MultiIndex unit(int i) {
    MultiIndex m;
    m.e[i] = 1;
    return m;
  }
  int order() const {
    int d = 0;
    for (auto v : e) d += v;
    return d;
  }
  // 1-based class: smallest i with mu_i != 0; 0 for the zero index.
  int cls() const {
    for (int i = 0; i < kMaxDerivs; ++i)
      if (e[i]) return i + 1;
    return 0;
  }
  bool divides(const MultiIndex& o) const {
    for (int i = 0; i < kMaxDerivs; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  MultiIndex operator+(const MultiIndex& o) const {
    MultiIndex r;
    for (int i = 0; i < kMaxDerivs; ++i) r.e[i] = e[i] + o.e[i];
    return r;
  }
  MultiIndex operator-(const MultiIndex& o) const {
    MultiIndex r;
    for (int i = 0; i < kMaxDerivs; ++i) r.e[i] = e[i] - o.e[i];
    return r;
  }
  bool operator==(const MultiIndex& o) const = default;
  bool operator<(const MultiIndex& o) const { return e < o.e; }
};

// Term order on (mu, column): |mu| first, then the index with the smaller
// mu_1 (then mu_2, ...) is larger so higher class wins, then the smaller
// column index is larger. Returns >0 when (a, ka) is larger.
int term_cmp(const MultiIndex& a, int ka, const MultiIndex& b, int kb);

struct RowTerm {
  MultiIndex mu;
  int col = 0;
  RatFunc c;
};

// Element of D^m written as sum of c * d^mu * e_col, coefficients on the left,
// sorted by decreasing term order.
class Row {
 public:
  Row() = default;
  static Row from_terms(std::vector<RowTerm> terms);
  static Row unit(int col, const RatFunc& c = RatFunc(1), const MultiIndex& mu = MultiIndex{});

  bool is_zero() const { return t_.empty(); }
  const RowTerm& lead() const { return t_.front(); }
  const std::vector<RowTerm>& terms() const { return t_; }
  size_t size() const { return t_.size(); }
  int order() const;
  int max_col() const;  // -1 when zero

  Row operator+(const Row& o) const;
  Row operator-(const Row& o) const;
  Row operator-() const;
  Row scaled(const RatFunc& c) const;  // c * row
  // this - c * o, fused
  Row sub_scaled(const RatFunc& c, const Row& o) const;
  // d_i o row
  Row prolong(int i) const;
  // d^mu o row
  Row prolong(const MultiIndex& mu) const;
  // Entry in one column as an operator (column set to 0).
  Row column(int col) const;
  Row shift_cols(int delta) const;
  Row map_cols(const std::vector<int>& to) const;

  bool operator==(const Row& o) const;
  bool operator!=(const Row& o) const { return !(*this == o); }

 private:
  std::vector<RowTerm> t_;
};

// A scalar operator is a row with every term in column 0.
using OrePoly = Row;

OrePoly ore_mul(const OrePoly& p, const OrePoly& q);
OrePoly op_d(int i);  // d_i
OrePoly op_coeff(const RatFunc& a);
OrePoly op_adjoint(const OrePoly& p);

// row in D^p composed with the p rows of a p x m matrix: sum_k row_k o M_k.
Row compose(const Row& r, const std::vector<Row>& rows);
// p o row, with p a scalar operator.
Row left_mul(const OrePoly& p, const Row& r);

struct OpMatrix {
  Ring ring;
  int ncols = 0;
  std::vector<std::string> unknowns;  // column labels
  std::vector<std::string> labels;    // row labels
  std::vector<Row> rows;

  int nrows() const { return static_cast<int>(rows.size()); }
  int n() const { return ring.n(); }
  int order() const;
  OrePoly entry(int r, int c) const { return rows.at(r).column(c); }
  void set_entry(int r, int c, const OrePoly& p);
  // Fill default labels where missing and check column/slot bounds.
  void validate() const;
  bool operator==(const OpMatrix& o) const;
};

OpMatrix make_matrix(const Ring& ring, int ncols, std::vector<Row> rows,
                     std::vector<std::string> unknowns = {}, std::vector<std::string> labels = {});

// this * other (p x m times m x k).
OpMatrix matmul(const OpMatrix& a, const OpMatrix& b);
OpMatrix adjoint(const OpMatrix& m);
// Apply to an explicit section; one RatFunc per column.
std::vector<RatFunc> apply(const OpMatrix& m, const std::vector<RatFunc>& section);
RatFunc apply_row(const Row& r, const std::vector<RatFunc>& section);
OpMatrix specialize_params(const OpMatrix& m, const std::map<std::string, Q>& bindings);
// New coordinates xbar = A x with A an integer unimodular n x n matrix.
OpMatrix change_coordinates(const OpMatrix& m, const std::vector<std::vector<long>>& a);
// Exact inverse of a unimodular integer matrix; throws otherwise.
std::vector<std::vector<long>> unimodular_inverse(const std::vector<std::vector<long>>& a);

// Parse a row written as a sum of terms "coeff*dIJK*unknown", e.g.
// "d12*y2 - x3*d1*y1 + a*y3". Derivative tokens are 'd' followed by
// 1-based variable digits.
Row parse_row(const std::string& text, const Ring& ring, const std::vector<std::string>& unknowns);
OpMatrix parse_matrix(const Ring& ring, const std::vector<std::string>& unknowns,
                      const std::vector<std::string>& rows, std::vector<std::string> labels = {});

std::string derivative_name(const MultiIndex& mu, int n);
std::string to_string(const Row& r, const Ring& ring, const std::vector<std::string>& unknowns);
std::string to_string(const OpMatrix& m);
// Scalar operator without an unknown, e.g. "l*d11 + g".
std::string op_to_string(const OrePoly& p, const Ring& ring);

}  // namespace oredual
