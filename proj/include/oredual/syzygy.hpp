#pragma once

#include <vector>

#include "oredual/janet.hpp"

namespace oredual {

struct CCResult {
  OpMatrix cc;       // generating compatibility conditions, columns = rows of the input
  JanetBasis basis;  // completion of the input used to derive them
  bool certified = false;  // cc * input == 0 verified exactly
  std::vector<MPoly> assumptions;  // pivots inverted anywhere along the way
};

// Append the members of `more` not already in `into`.
void merge_assumptions(std::vector<MPoly>& into, const std::vector<MPoly>& more);

// Generating compatibility conditions (first syzygies of the rows).
CCResult compatibility_conditions(const OpMatrix& m, const CompletionOptions& opts = {});

// Whether every row of `rows` lies in the module of `b` (rows given in the
// original frame; the basis frame change is applied). Cofactor witnesses are
// returned in basis-generator columns when requested.
bool module_contains(const JanetBasis& b, const OpMatrix& rows, std::vector<Row>* witnesses = nullptr);
bool module_contains(const OpMatrix& big, const OpMatrix& rows, const CompletionOptions& opts = {});
bool modules_equal(const OpMatrix& a, const OpMatrix& b, const CompletionOptions& opts = {});

struct ZeroModule {
  bool zero = false;
  std::vector<MPoly> assumptions;
};
// True iff the rows of m generate all of D^m (the system has only the zero
// solution).
ZeroModule is_zero_module(const OpMatrix& m, const CompletionOptions& opts = {});

// m minus the number of generators whose multiplicative set is everything.
int differential_rank(const OpMatrix& m, const CompletionOptions& opts = {});
int differential_rank(const JanetBasis& b);

// D_1 = CC(m), D_2 = CC(D_1), ... until an empty operator is reached (not
// included) or max_steps operators were produced.
std::vector<OpMatrix> differential_sequence(const OpMatrix& m, int max_steps, const CompletionOptions& opts = {});

// Brute-force K-basis of the syzygies S (rows of order <= r in D^p) with
// S * m = 0. Exponential in r; for testing.
std::vector<Row> syzygy_oracle(const OpMatrix& m, int r, size_t cap = 4000);

// Scale a row by a nonzero element of K: clear denominators, remove the
// polynomial content, integer-primitive with positive leading coefficient.
Row normalize_row(const Row& r);

// Minimal-looking generating subset: candidates are taken in increasing
// leader order and kept when not already in the module of those kept;
// then redundant rows are dropped. Rows are normalized and sorted.
std::vector<Row> minimal_generators(const Ring& ring, int ncols, std::vector<Row> candidates,
                                    const CompletionOptions& opts = {}, std::vector<MPoly>* assumptions = nullptr);

// Apply a basis frame to an operator given in the original coordinates.
OpMatrix to_frame(const OpMatrix& m, const Matrix& a);

}  // namespace oredual
