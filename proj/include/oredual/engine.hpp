#pragma once

#include <map>
#include <vector>

#include "oredual/janet.hpp"

namespace oredual {

// Incremental involutive completion (queue of pending rows, lowest leader
// first, nonmultiplicative prolongations tracked per element).
class Engine {
 public:
  Engine(const Ring& ring, int ncols, Division div, bool track, int budget, size_t max_elements,
         size_t max_reductions);

  // Queue a row together with its representation over the inputs.
  void add(const Row& row, const Row& rep = Row());
  // Run completion until the queue is empty. Throws BudgetExceeded.
  void run();
  // Tail-reduce generators and sort them by decreasing leader.
  void finalize();
  // Insert an already involutive, sorted generator list (no completion).
  void load(const std::vector<BasisElement>& elems);

  // Involutive normal form. Cofactor columns index the active generators
  // in their current order. rep_out, when given, receives row_rep minus the
  // subtracted combination of generator representations.
  NormalForm reduce(const Row& row, bool cofactors, const Row* row_rep = nullptr, Row* rep_out = nullptr,
                    int exclude = -1);

  std::vector<BasisElement> elements() const;
  const std::vector<MPoly>& assumptions() const { return assumptions_; }
  size_t size() const { return el_.size(); }

 private:
  struct Elem {
    Row row, rep;
    uint32_t mult = 0, done = 0;
    std::map<MultiIndex, std::pair<Row, Row>> cache;
  };
  struct Pending {
    Row row, rep;
    uint32_t done = 0;
  };

  const std::pair<Row, Row>& prolonged(Elem& e, const MultiIndex& nu);
  int find_divisor(const MultiIndex& mu, int col, int exclude) const;
  void recompute_mult();
  void note_pivot(const RatFunc& c);

  Ring ring_;
  int n_, ncols_;
  Division div_;
  bool track_;
  int budget_;
  size_t max_elements_, max_reductions_, reductions_ = 0;
  std::vector<Elem> el_;            // active generators
  std::vector<std::vector<int>> by_col_;
  std::vector<Pending> queue_;
  std::vector<MPoly> assumptions_;
};

}  // namespace oredual
