#include "rspace/products.hpp"

#include <cmath>
#include <stdexcept>

namespace rspace {

namespace {

void check_factor(const ProductFactor& f, const char* which) {
  if (!f.rs) throw std::invalid_argument(std::string("product: null root system for ") + which);
  if (std::abs(f.H.norm() - 1.0) > 1e-9)
    throw std::invalid_argument(std::string("product: ") + which + " point is not unit");
  CellPoint p = make_cell_point(*f.rs, f.H);
  std::vector<int> want(f.delta);
  std::sort(want.begin(), want.end());
  if (p.delta != want)
    throw std::invalid_argument(std::string("product: ") + which +
                                " point does not lie in its declared cell");
  const double tension = tension_tangent(*f.rs, p).norm();
  if (!(tension < 1e-8))
    throw std::invalid_argument(std::string("product: ") + which +
                                " point is not minimal (|(τ_H)_H| = " +
                                std::to_string(tension) + ")");
  if (orbit_dimension(*f.rs, p) != f.dim)
    throw std::invalid_argument(std::string("product: ") + which +
                                " dimension does not match its orbit");
}

}  // namespace

ProductAngles product_angles(int n1, int n2) {
  if (n1 < 1 || n2 < 1)
    throw std::invalid_argument("product_angles: dimensions must be positive");
  ProductAngles out;
  out.minimal_cos2 = Rational(n1, n1 + n2);
  out.biharmonic_cos2 = {out.minimal_cos2};
  const Rational half(1, 2);
  if (out.minimal_cos2 != half) out.biharmonic_cos2.push_back(half);
  out.has_proper = n1 != n2;
  if (out.has_proper) out.proper_cos2 = half;
  return out;
}

CellPoint build_product_point(const RootSystem& sum, const ProductSpec& spec) {
  if (!(spec.theta > 0.0 && spec.theta < M_PI_2))
    throw std::invalid_argument("product: θ must lie strictly inside (0, π/2)");
  check_factor(spec.factor1, "factor 1");
  check_factor(spec.factor2, "factor 2");
  const int d1 = spec.factor1.rs->ambient_dim;
  const int d2 = spec.factor2.rs->ambient_dim;
  if (sum.ambient_dim != d1 + d2)
    throw std::invalid_argument("product: sum system does not match the factor dimensions");

  Eigen::VectorXd H(sum.ambient_dim);
  H.head(d1) = std::cos(spec.theta) * spec.factor1.H;
  H.tail(d2) = std::sin(spec.theta) * spec.factor2.H;
  CellPoint p = make_cell_point(sum, H);

  std::vector<int> want(spec.factor1.delta);
  for (int i : spec.factor2.delta) want.push_back(i + spec.factor1.rs->rank);
  std::sort(want.begin(), want.end());
  if (p.delta != want)
    throw std::domain_error("product: combined point does not land in Δ1 ∪ Δ2");
  return p;
}

ProductReport verify_product_theorem(const RootSystem& rs1,
                                     const std::vector<int>& delta1,
                                     const RootSystem& rs2,
                                     const std::vector<int>& delta2,
                                     double tol) {
  ProductReport rep;
  SolveOptions opts;
  opts.tol = tol;
  rep.factor1 = solve_minimal(rs1, delta1, opts);
  rep.factor2 = solve_minimal(rs2, delta2, opts);
  if (rep.factor1.status != SolveStatus::converged)
    throw std::runtime_error("verify_product_theorem: minimal solve failed on factor 1 (" +
                             rs1.label + ")");
  if (rep.factor2.status != SolveStatus::converged)
    throw std::runtime_error("verify_product_theorem: minimal solve failed on factor 2 (" +
                             rs2.label + ")");

  const SolvePoint& m1 = rep.factor1.points.front();
  const SolvePoint& m2 = rep.factor2.points.front();
  rep.n1 = m1.report.dim;
  rep.n2 = m2.report.dim;
  rep.angles = product_angles(rep.n1, rep.n2);
  rep.has_proper = rep.angles.has_proper;
  rep.sum = direct_sum(rs1, rs2);

  ProductSpec spec;
  spec.factor1 = {&rs1, m1.point.delta, m1.point.H, rep.n1};
  spec.factor2 = {&rs2, m2.point.delta, m2.point.H, rep.n2};

  rep.pass = true;
  for (const Rational& c2 : rep.angles.biharmonic_cos2) {
    ProductCandidate cand;
    cand.cos2 = c2;
    cand.theta = std::acos(std::sqrt(c2.to_double()));
    spec.theta = cand.theta;
    CellPoint p = build_product_point(rep.sum, spec);
    cand.factor1_radius = p.H.head(rs1.ambient_dim).norm();
    cand.factor2_radius = p.H.tail(rs2.ambient_dim).norm();
    cand.report = orbit_report(rep.sum, p);
    cand.expected = c2 == rep.angles.minimal_cos2
                        ? orbit_class_name(OrbitClass::minimal)
                        : orbit_class_name(OrbitClass::proper_biharmonic);
    cand.pass = cand.expected == orbit_class_name(cand.report.classification);
    rep.pass = rep.pass && cand.pass;
    rep.candidates.push_back(std::move(cand));
  }
  rep.verdict = rep.has_proper
                    ? "proper biharmonic at cos²θ = " + rep.angles.proper_cos2.str()
                    : "no proper point (dim M1 = dim M2)";
  return rep;
}

}  // namespace rspace
