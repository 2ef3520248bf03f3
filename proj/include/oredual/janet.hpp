#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "oredual/ore.hpp"

namespace oredual {

enum class Division { Janet, Pommaret };

struct CompletionOptions {
  int budget = -1;  // max total order of a generator; -1 means input order + 8
  Division division = Division::Janet;
  bool track = true;            // keep representations basis = U * input
  size_t max_elements = 4000;   // safety caps, reported as budget failures
  size_t max_reductions = 400000;
  unsigned seed = 1;  // random fallback frames
};

using Matrix = std::vector<std::vector<long>>;
Matrix identity_matrix(int n);

struct BasisElement {
  Row row;          // monic: leading coefficient 1
  Row rep;          // row = rep * input (columns of rep index the inputs)
  uint32_t mult = 0;  // bit i set when d_{i+1} is multiplicative
  const RowTerm& lead() const { return row.lead(); }
};

struct NormalForm {
  Row rem;
  Row cofactors;  // column j = basis element j; row - rem = sum cofactor_j * g_j
};

class Engine;

// Involutive basis of a row module in D^m. When coord_change is not the
// identity the basis lives in the frame xbar = A x.
struct JanetBasis {
  Ring ring;
  int ncols = 0;
  std::vector<std::string> unknowns;
  int ninputs = 0;
  Division division = Division::Janet;
  std::vector<BasisElement> elems;  // sorted by decreasing leader
  std::vector<Row> V;               // input_k = V_k * basis, columns index elems
  Matrix coord_change;
  std::vector<MPoly> assumptions;   // pivots inverted during completion (primitive)
  int budget = 0;
  std::shared_ptr<Engine> engine;   // reducer over elems

  int n() const { return ring.n(); }
  int order() const;  // q: max generator order
  bool empty() const { return elems.empty(); }
  OpMatrix matrix() const;  // generators as rows
  OpMatrix U() const;       // rows of representations over the inputs
  NormalForm normal_form(const Row& row, bool cofactors = false) const;
  bool reduces_to_zero(const Row& row) const;
  // Every nonmultiplicative prolongation has normal form zero.
  bool verify_involutive() const;
};

JanetBasis involutive_completion(const OpMatrix& m, const CompletionOptions& opts = {});

// Completion in a fixed frame only (no fallback); the frame A is applied
// to m first.
JanetBasis complete_in_frame(const OpMatrix& m, const Matrix& a, const CompletionOptions& opts);

// Multiplicative variables of every leader in the given set (same column
// convention as Row terms).
std::vector<uint32_t> multiplicative_vars(const std::vector<RowTerm>& leaders, int n, Division div);

struct JanetTabular {
  int n = 0, m = 0, q = 0;
  std::vector<int> beta;    // beta[i-1] for class i
  std::vector<long> alpha;  // alpha[i-1]
  std::map<int, int> lower_order;  // order -> generator count below q
  long dim_gq = 0;
  std::string text;  // dot-notation rendering
};

JanetTabular tabular(const JanetBasis& b);

// Number of standard (parametric) jets of exact order r and the list up to r.
long symbol_dimension(const JanetBasis& b, int r);
struct ParametricJets {
  long count = 0;
  std::vector<std::pair<int, MultiIndex>> jets;  // (column, mu)
};
ParametricJets parametric_jets(const JanetBasis& b, int r);

// Dimension of the solution space at jet order q of the system after s
// prolongation/projection steps: dim J_q minus the rank of the order <= q
// part of all prolongations of the rows up to order q + s.
long jet_dimension(const OpMatrix& m, int q, int s);

struct RegularResult {
  JanetBasis basis;
  Matrix coord_change;
  std::vector<Matrix> attempted;
};

// Pommaret completion in a sequence of frames: identity, coordinate
// permutations, unit triangular 0/1 changes, then seeded random unimodular
// changes. Throws BudgetExceeded listing the attempted frames.
RegularResult delta_regularize(const OpMatrix& m, int budget = -1, unsigned seed = 1, int random_frames = 8);

// Candidate frames in the order delta_regularize tries them.
std::vector<Matrix> frame_sequence(int n, unsigned seed, int random_frames);

struct FirstOrderForm {
  OpMatrix system;   // first-order rows without order-zero equations
  OpMatrix to_new;   // maps old unknowns to new: z = to_new * y
  OpMatrix to_old;   // y = to_old * z
  std::vector<std::string> jet_names;
};

FirstOrderForm first_order_form(const OpMatrix& m, const CompletionOptions& opts = {});

std::string matrix_to_string(const Matrix& a);

}  // namespace oredual
