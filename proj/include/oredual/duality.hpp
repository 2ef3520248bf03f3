#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oredual/syzygy.hpp"

namespace oredual {

enum class Verdict { TorsionFree, HasTorsion, Unknown };
const char* verdict_name(Verdict v);

struct Witness {
  Row row;              // torsion element, in the unknowns of the input
  OrePoly annihilator;  // zero when the search bound was exhausted
  bool certified = false;  // annihilator * row lies in the input module, row does not
};

struct DualityOptions {
  CompletionOptions completion;
  int annihilator_bound = -1;  // -1: 2 * (max order along the pipeline) + 2
  bool annihilators = true;
};

struct DualityReport {
  OpMatrix step1;  // D1
  OpMatrix step2;  // ad(D1)
  OpMatrix step3;  // ad(D) = CC(ad(D1))
  OpMatrix step4;  // D = ad(ad(D))
  OpMatrix step5;  // D1' = CC(D)
  int completed_steps = 0;
  Verdict verdict = Verdict::Unknown;
  std::string unknown_reason;
  std::vector<Witness> witnesses;
  std::vector<MPoly> assumptions;
};

// Double-duality test for torsion-freeness of the module presented by d1.
DualityReport torsion_test(const OpMatrix& d1, const DualityOptions& opts = {});

// The parametrizing operator D (step 4); requires a decided verdict.
OpMatrix parametrize(const DualityReport& report);

struct MinimalOptions {
  CompletionOptions completion;
  std::optional<std::vector<std::string>> subset;  // potential labels to keep
  std::optional<Matrix> frame;                     // compute the check in this frame
  int random_frames = 2;
};

struct MinimalParametrization {
  OpMatrix param;                   // selected columns only
  std::vector<std::string> subset;  // kept potentials
  Matrix frame;                     // frame in which the check succeeded
  std::vector<std::vector<std::string>> attempted;
};

// Keep differential_rank(d1) potentials of `param` so that the CC of the
// restriction still presents d1. Subsets are tried in column order.
MinimalParametrization minimal_parametrize(const OpMatrix& d1, const OpMatrix& param, const MinimalOptions& opts = {});
MinimalParametrization minimal_parametrize(const DualityReport& report, const MinimalOptions& opts = {});

// Smallest-order P with P * r in the module of b, searching K-linear
// dependencies among normal forms of d_mu r, |mu| <= bound.
OrePoly annihilator(const Row& r, const JanetBasis& b, int bound);

// Whether ad(d1) admits only the zero solution.
ZeroModule adjoint_injective(const OpMatrix& d1, const CompletionOptions& opts = {});

// Right kernel of the symbol matrix (d_i -> chi_i) over Q(params)(chi),
// mapped back to operators. Requires coefficients constant in x.
OpMatrix localize_parametrize(const OpMatrix& d1);

// Each of p, q is a right multiple of the other (adjoint rows generate the
// same module): the two parametrizations have the same potentials up to a
// change of potentials.
bool equivalent_parametrizations(const OpMatrix& p, const OpMatrix& q, const CompletionOptions& opts = {});

// Human-readable five-box rendering.
std::string render_report(const DualityReport& r);

}  // namespace oredual
