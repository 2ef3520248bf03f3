#pragma once

#include <string>
#include <vector>

#include "oredual/ore.hpp"

namespace oredual {

// Constant diagonal metric; entries are +1 or -1.
struct MetricSpec {
  std::vector<int> signature;
  int n() const { return static_cast<int>(signature.size()); }
};

MetricSpec euclidean(int n);
MetricSpec minkowski();  // (+1, +1, +1, -1), time is x4

// Omega_ij = w_rj d_i xi^r + w_ir d_j xi^r over i <= j.
OpMatrix killing(const MetricSpec& w);
// adjoint(killing(w)), rows indexed by xi, columns by sigma^{ij}, i <= j.
OpMatrix cauchy(const MetricSpec& w);
// Rows are 2 R^{ij} (indices raised with w), doubled when i < j so that the
// rows are the coefficients of lambda_{ij} in sum over all (i, j).
OpMatrix ricci_linearized(const MetricSpec& w);
OpMatrix einstein_linearized(const MetricSpec& w);
// Traceless part of the Killing rows, scaled by n; the last diagonal row is dropped.
OpMatrix conformal_killing(const MetricSpec& w);
// d : p-forms -> (p+1)-forms in n variables, components over sorted index sets.
OpMatrix exterior_derivative(int n, int p);

struct Fixture {
  std::string name;
  std::string citation;  // what the system is
  std::string note;      // conventions frozen in the matrix
  OpMatrix op;
};

std::vector<std::string> fixture_names();
Fixture fixture(const std::string& name);

}  // namespace oredual
