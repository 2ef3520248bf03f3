#include <gtest/gtest.h>

#include <random>

#include "oredual/error.hpp"
#include "oredual/janet.hpp"
#include "oredual/linalg.hpp"
#include "testutil.hpp"

using namespace oredual;

namespace {

OpMatrix sys(int n, std::vector<std::string> unknowns, std::vector<std::string> rows,
             std::vector<std::string> params = {}) {
  return parse_matrix(testutil::ring_x(n, params), unknowns, rows);
}

std::vector<std::string> leaders(const JanetBasis& b) {
  std::vector<std::string> out;
  for (auto& e : b.elems) out.push_back(to_string(Row::unit(e.lead().col, 1, e.lead().mu), b.ring, b.unknowns));
  return out;
}

// basis = U * input, exactly
void expect_u_identity(const JanetBasis& b, const OpMatrix& input) {
  for (auto& e : b.elems) EXPECT_EQ(compose(e.rep, input.rows), e.row);
  for (int k = 0; k < input.nrows(); ++k) {
    std::vector<Row> g;
    for (auto& e : b.elems) g.push_back(e.row);
    EXPECT_EQ(compose(b.V[k], g), input.rows[k]);
  }
}

}  // namespace

TEST(Completion, PermutedExampleLeadersAndClasses) {
  OpMatrix m = sys(3, {"y"}, {"d33*y", "d13*y - d2*y"});
  JanetBasis b = involutive_completion(m);
  EXPECT_EQ(leaders(b), (std::vector<std::string>{"d33*y", "d23*y", "d22*y", "d13*y"}));
  EXPECT_TRUE(b.verify_involutive());
  expect_u_identity(b, m);
  JanetTabular t = tabular(b);
  EXPECT_EQ(t.beta, (std::vector<int>{1, 2, 1}));
  EXPECT_EQ(t.q, 2);
  // the class-2 rows are the two displayed cross-derivative results
  EXPECT_TRUE(b.reduces_to_zero(parse_row("d23*y", m.ring, m.unknowns)));
  EXPECT_TRUE(b.reduces_to_zero(parse_row("d22*y", m.ring, m.unknowns)));
  EXPECT_FALSE(b.reduces_to_zero(parse_row("d1*y", m.ring, m.unknowns)));
}

TEST(Completion, TabularDotNotation) {
  OpMatrix m = sys(3, {"y"}, {"d33*y", "d13*y - d2*y"});
  JanetTabular t = tabular(involutive_completion(m));
  EXPECT_EQ(t.text,
            "d33*y = 0          1 2 3\n"
            "d23*y = 0          1 2 .\n"
            "d22*y = 0          1 2 .\n"
            "d13*y - d2*y = 0   1 . .\n");
}

TEST(Completion, CharacterIdentities) {
  OpMatrix m = sys(3, {"y"}, {"d33*y", "d13*y - d2*y"});
  JanetBasis b = involutive_completion(m);
  JanetTabular t = tabular(b);
  long sum = 0, weighted = 0;
  for (int i = 1; i <= 3; ++i) sum += t.alpha[i - 1], weighted += i * t.alpha[i - 1];
  EXPECT_EQ(symbol_dimension(b, t.q), sum);
  EXPECT_EQ(symbol_dimension(b, t.q + 1), weighted);
  EXPECT_GE(t.alpha[0], t.alpha[1]);
  EXPECT_GE(t.alpha[1], t.alpha[2]);
}

TEST(Completion, Macaulay) {
  OpMatrix m = sys(3, {"y"}, {"d33*y", "d23*y - d11*y", "d22*y"});
  JanetBasis b = involutive_completion(m);
  EXPECT_TRUE(b.verify_involutive());
  ParametricJets pj = parametric_jets(b, 6);
  EXPECT_EQ(pj.count, 8);
  EXPECT_EQ(parametric_jets(b, 3).count, 8);
  EXPECT_EQ(symbol_dimension(b, 4), 0);
}

TEST(Completion, NormalFormCofactors) {
  OpMatrix m = sys(3, {"y"}, {"d33*y", "d13*y - d2*y"});
  JanetBasis b = involutive_completion(m);
  Row p = parse_row("d2*d13*y - d2*d2*y", m.ring, m.unknowns);
  p = parse_row("d13*y - d2*y", m.ring, m.unknowns).prolong(1);
  NormalForm nf = b.normal_form(p, true);
  EXPECT_TRUE(nf.rem.is_zero());
  std::vector<Row> g;
  for (auto& e : b.elems) g.push_back(e.row);
  EXPECT_EQ(compose(nf.cofactors, g), p);
  Row y1 = parse_row("d1*y", m.ring, m.unknowns);
  EXPECT_EQ(b.normal_form(y1).rem, y1);
  for (auto& e : b.elems) EXPECT_TRUE(b.reduces_to_zero(e.row));
}

TEST(Completion, ParametricExampleAcquiresLowerOrder) {
  OpMatrix m = sys(2, {"xi"}, {"d22*xi", "d12*xi + a*d1*xi"}, {"a"});
  JanetBasis b = involutive_completion(m);
  EXPECT_TRUE(b.reduces_to_zero(parse_row("d1*xi", m.ring, m.unknowns)));
  EXPECT_TRUE(b.reduces_to_zero(parse_row("d11*xi", m.ring, m.unknowns)));
  EXPECT_EQ(parametric_jets(b, 4).count, 2);
  bool has_a = false;
  for (auto& p : b.assumptions) has_a |= to_string(p, b.ring) == "a";
  EXPECT_TRUE(has_a);
  expect_u_identity(b, m);
}

TEST(Completion, JetDimensionChain) {
  OpMatrix m = sys(2, {"xi"}, {"d22*xi", "d12*xi + a*d1*xi"}, {"a"});
  for (int r = 0; r <= 3; ++r) EXPECT_EQ(jet_dimension(m, 2 + r, 0), 4) << r;
  EXPECT_EQ(jet_dimension(m, 2, 1), 3);
  EXPECT_EQ(jet_dimension(m, 2, 2), 2);
  EXPECT_EQ(binomial(2 + 2, 2), 6);
}

TEST(Completion, KillingProlongationInvolutiveAtOrderTwo) {
  Ring r = testutil::ring_x(2);
  OpMatrix k = parse_matrix(r, {"xi1", "xi2"}, {"2*d1*xi1", "d2*xi1 + d1*xi2", "2*d2*xi2"});
  JanetBasis b = involutive_completion(k);
  EXPECT_EQ(b.order(), 2);
  EXPECT_TRUE(b.verify_involutive());
  // every second-order jet is principal
  EXPECT_EQ(symbol_dimension(b, 2), 0);
  EXPECT_EQ(parametric_jets(b, 5).count, 3);
  // the first-order system alone is not involutive: its order-1 symbol
  // fails the character identity for the next order
  CompletionOptions o;
  o.budget = 1;
  EXPECT_THROW(involutive_completion(k, o), BudgetExceeded);
}

TEST(Completion, IdempotentAndDeterministic) {
  std::mt19937_64 rng(101);
  for (int it = 0; it < 30; ++it) {
    Ring r = testutil::ring_x(3);
    std::vector<Row> rows;
    for (int i = 0; i < 2; ++i) rows.push_back(testutil::random_row(rng, 3, 2, 2, 3, true));
    OpMatrix m = make_matrix(r, 2, rows);
    JanetBasis b = involutive_completion(m);
    ASSERT_TRUE(b.verify_involutive());
    JanetBasis again = involutive_completion(b.matrix());
    ASSERT_EQ(leaders(again), leaders(b));
    ASSERT_EQ(again.matrix(), b.matrix());
    JanetBasis b2 = involutive_completion(m);
    ASSERT_EQ(b2.matrix(), b.matrix());
    for (auto& row : m.rows) ASSERT_TRUE(b.reduces_to_zero(row));
  }
}

TEST(Completion, SingleEquationJets) {
  OpMatrix m = sys(1, {"y"}, {"d1*y"});
  JanetBasis b = involutive_completion(m);
  ParametricJets pj = parametric_jets(b, 3);
  EXPECT_EQ(pj.count, 1);
  EXPECT_EQ(pj.jets[0].second.order(), 0);
}

TEST(DeltaRegular, OriginalFrameNeedsPermutation) {
  OpMatrix m = sys(3, {"y"}, {"d11*y", "d13*y - d2*y"});
  RegularResult r = delta_regularize(m, 6);
  EXPECT_EQ(r.coord_change, (Matrix{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}));
  EXPECT_EQ(r.attempted.size(), 2u);
}

TEST(DeltaRegular, InvolutiveInputKeepsIdentity) {
  OpMatrix m = sys(3, {"y"}, {"d33*y", "d23*y", "d22*y", "d13*y - d2*y"});
  RegularResult r = delta_regularize(m, 6);
  EXPECT_EQ(r.coord_change, identity_matrix(3));
}

TEST(FirstOrder, SecondDerivativeVanishes) {
  OpMatrix m = sys(1, {"y"}, {"d11*y"});
  FirstOrderForm f = first_order_form(m);
  EXPECT_EQ(f.jet_names, (std::vector<std::string>{"y", "y_1"}));
  ASSERT_EQ(f.system.nrows(), 2);
  EXPECT_EQ(to_string(f.system.rows[0], f.system.ring, f.system.unknowns), "d1*y - y_1");
  EXPECT_EQ(to_string(f.system.rows[1], f.system.ring, f.system.unknowns), "d1*y_1");
  EXPECT_LE(f.system.order(), 1);
  // solutions y = c0 + c1 x agree through the maps
  Ring r = m.ring;
  auto sol = oredual::apply(f.to_new, {testutil::rf("3 + 5*x1", r)});
  for (auto& v : oredual::apply(f.system, sol)) EXPECT_TRUE(v.is_zero());
}

TEST(FirstOrder, AlreadyFirstOrder) {
  OpMatrix m = sys(2, {"u", "v"}, {"d1*u - v", "d2*u", "d1*v", "d2*v"});
  FirstOrderForm f = first_order_form(m);
  EXPECT_EQ(f.system.ncols, 2);
  ASSERT_EQ(f.system.nrows(), 4);
  for (auto& row : f.system.rows) {
    EXPECT_EQ(row.order(), 1);
    EXPECT_NE(std::find(m.rows.begin(), m.rows.end(), row), m.rows.end());
  }
}

TEST(FirstOrder, DoublePendulumHasSixStates) {
  OpMatrix m = sys(1, {"x", "t1", "t2"}, {"d11*x + l1*d11*t1 + g*t1", "d11*x + l2*d11*t2 + g*t2"}, {"l1", "l2", "g"});
  FirstOrderForm f = first_order_form(m);
  EXPECT_EQ(f.system.ncols, 6);
  EXPECT_EQ(f.system.order(), 1);
  for (auto& row : f.system.rows) EXPECT_EQ(row.order(), 1);
}
