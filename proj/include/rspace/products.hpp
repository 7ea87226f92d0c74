#pragma once

#include <string>
#include <vector>

#include "rspace/rational.hpp"
#include "rspace/solver.hpp"

namespace rspace {

/// Closed-form angle solutions for the two-factor construction with minimal
/// factors of dimensions n1 and n2. cos²θ = n1/(n1+n2) is the minimal
/// angle; the biharmonic set is {n1/(n1+n2), 1/2}. They coincide when
/// n1 = n2, in which case no proper biharmonic point exists.
struct ProductAngles {
  Rational minimal_cos2;
  std::vector<Rational> biharmonic_cos2;
  bool has_proper = false;
  Rational proper_cos2;  // 1/2 when has_proper
};
ProductAngles product_angles(int n1, int n2);

struct ProductFactor {
  const RootSystem* rs = nullptr;
  std::vector<int> delta;
  Eigen::VectorXd H;  // unit minimal point, in factor coordinates
  int dim = 0;
};

struct ProductSpec {
  ProductFactor factor1;
  ProductFactor factor2;
  double theta = 0.0;  // in (0, π/2)
};

/// H = cosθ H1 ⊕ sinθ H2 as a CellPoint of the direct-sum system.
/// Validates the spec invariants: unit factor points, factor minimality
/// (|(τ_H)_H| < 1e-8), matching dimensions, θ strictly inside (0, π/2).
CellPoint build_product_point(const RootSystem& sum, const ProductSpec& spec);

struct ProductCandidate {
  Rational cos2;
  double theta = 0.0;
  OrbitReport report;
  double factor1_radius = 0.0;  // |projection of H onto factor 1|
  double factor2_radius = 0.0;
  std::string expected;  // classification the closed form predicts
  bool pass = false;
};

struct ProductReport {
  int n1 = 0;
  int n2 = 0;
  SolveResult factor1;
  SolveResult factor2;
  ProductAngles angles;
  RootSystem sum;
  std::vector<ProductCandidate> candidates;
  bool has_proper = false;
  bool pass = false;
  std::string verdict;
};

/// End-to-end check of the product construction: solves each factor's
/// minimal orbit, builds both candidate angles and evaluates their residuals
/// through the generic orbit formulas (not the closed forms). Throws
/// std::runtime_error when a factor minimal solve fails.
ProductReport verify_product_theorem(const RootSystem& rs1,
                                     const std::vector<int>& delta1,
                                     const RootSystem& rs2,
                                     const std::vector<int>& delta2,
                                     double tol = 1e-10);

}  // namespace rspace
