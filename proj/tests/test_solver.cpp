#include <cmath>
#include <cstdlib>
#include <random>

#include "doctest.h"
#include "rspace/solver.hpp"

using namespace rspace;

namespace {

RootSystem a1(int m = 1) { return build_irreducible(Family::A, 1, {{"long", m}}); }
RootSystem a2(int m = 1) { return build_irreducible(Family::A, 2, {{"long", m}}); }

// squared cosine of the angle against factor 1 in a two-factor sum
double cos2_factor1(const RootSystem& f1, const Eigen::VectorXd& H) {
  return H.head(f1.ambient_dim).squaredNorm();
}

bool contains_cos2(const SolveResult& res, const RootSystem& f1, double target,
                   double tol) {
  for (const auto& sp : res.points)
    if (std::abs(cos2_factor1(f1, sp.point.H) - target) < tol) return true;
  return false;
}

}  // namespace

TEST_CASE("solve_minimal on A_1 finishes immediately") {
  auto rs = a1();
  auto res = solve_minimal(rs, {0});
  REQUIRE(res.status == SolveStatus::converged);
  REQUIRE(res.points.size() == 1);
  CHECK(res.points[0].iterations <= 1);
  Eigen::VectorXd expect(2);
  expect << 1, -1;
  CHECK(res.points[0].point.H.isApprox(expect.normalized(), 1e-12));
}

TEST_CASE("solve_minimal finds cos²θ = 1/3 on the (1,2) product") {
  auto f1 = a1(1);
  auto sum = direct_sum(f1, a1(2));
  auto res = solve_minimal(sum, {0, 1});
  REQUIRE(res.status == SolveStatus::converged);
  const double c2 = cos2_factor1(f1, res.points[0].point.H);
  CHECK(std::abs(c2 - 1.0 / 3.0) < 1e-10);
  CHECK(res.points[0].report.tension_norm < 1e-11);
}

TEST_CASE("solve_minimal lands on the A_2 barycentric direction") {
  auto rs = a2();
  Eigen::VectorXd bary = (rs.dual_mat.col(0) + rs.dual_mat.col(1)).normalized();
  auto p = make_cell_point(rs, bary);
  CHECK(tension_tangent(rs, p).norm() < 1e-10);  // symmetry + uniqueness
  auto res = solve_minimal(rs, {0, 1});
  REQUIRE(res.status == SolveStatus::converged);
  CHECK(geodesic_distance(res.points[0].point.H, bary) < 1e-9);
}

TEST_CASE("solve_minimal converges to one point from 20 random starts") {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> logc(-1.0, 1.0);
  for (auto rs : {a2(), build_irreducible(Family::B, 2, {{"short", 2}, {"long", 1}})}) {
    for (const auto& delta : cells(rs)) {
      std::vector<Eigen::VectorXd> found;
      for (int rep = 0; rep < 20; ++rep) {
        SolveOptions opts;
        Eigen::VectorXd x(delta.size());
        for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = std::exp(logc(rng));
        opts.start = x;
        auto res = solve_minimal(rs, delta, opts);
        REQUIRE(res.status == SolveStatus::converged);
        found.push_back(res.points[0].point.H);
      }
      for (size_t i = 1; i < found.size(); ++i)
        CHECK(geodesic_distance(found[0], found[i]) < 1e-8);
    }
  }
}

TEST_CASE("solve_biharmonic on the (1,2) product finds both angles") {
  auto f1 = a1(1);
  auto sum = direct_sum(f1, a1(2));
  auto res = solve_biharmonic(sum, {0, 1});
  REQUIRE(res.status == SolveStatus::converged);
  REQUIRE(res.points.size() == 2);
  CHECK(contains_cos2(res, f1, 1.0 / 3.0, 1e-9));
  CHECK(contains_cos2(res, f1, 0.5, 1e-9));
  for (const auto& sp : res.points) {
    const double c2 = cos2_factor1(f1, sp.point.H);
    if (std::abs(c2 - 0.5) < 1e-6) {
      CHECK(sp.report.classification == OrbitClass::proper_biharmonic);
      CHECK(sp.report.tension_norm > 0.1);
    } else {
      CHECK(sp.report.classification == OrbitClass::minimal);
    }
    CHECK(sp.report.bitension_norm < 1e-9);
  }
}

TEST_CASE("equal dimensions collapse the solution set to the minimal angle") {
  auto f1 = a1(1);
  auto sum = direct_sum(f1, a1(1));
  auto res = solve_biharmonic(sum, {0, 1});
  REQUIRE(res.status == SolveStatus::converged);
  REQUIRE(res.points.size() == 1);
  CHECK(std::abs(cos2_factor1(f1, res.points[0].point.H) - 0.5) < 1e-9);
  CHECK(res.points[0].report.classification == OrbitClass::minimal);
}

TEST_CASE("grid oracle reproduces the product angles") {
  auto f1 = a1(1);
  auto sum = direct_sum(f1, a1(2));
  auto minima = grid_oracle(sum, {0, 1}, 2000);
  REQUIRE(minima.size() == 2);
  bool saw_third = false, saw_half = false;
  for (const auto& p : minima) {
    const double c2 = cos2_factor1(f1, p.H);
    if (std::abs(c2 - 1.0 / 3.0) < 1e-7) saw_third = true;
    if (std::abs(c2 - 0.5) < 1e-7) saw_half = true;
  }
  CHECK(saw_third);
  CHECK(saw_half);
}

TEST_CASE("oracle and solver agree in both directions") {
  for (auto rs : {a2(1), a2(2), build_irreducible(Family::B, 2, {{"short", 1}, {"long", 2}}),
                  build_irreducible(Family::G2, 2, {{"short", 2}, {"long", 1}})}) {
    INFO(rs.label);
    auto sol = solve_biharmonic(rs, {0, 1});
    auto oracle = grid_oracle(rs, {0, 1}, 2000);
    REQUIRE(sol.status == SolveStatus::converged);
    for (const auto& sp : sol.points) {
      bool matched = false;
      for (const auto& om : oracle)
        if (geodesic_distance(sp.point.H, om.H) < 1e-6) matched = true;
      CHECK(matched);
    }
    for (const auto& om : oracle) {
      bool matched = false;
      for (const auto& sp : sol.points)
        if (geodesic_distance(sp.point.H, om.H) < 1e-6) matched = true;
      CHECK(matched);
    }
  }
}

TEST_CASE("the minimal point always appears among the oracle minima") {
  auto rs = build_irreducible(Family::B, 2, {{"short", 2}, {"long", 1}});
  auto mres = solve_minimal(rs, {0, 1});
  REQUIRE(mres.status == SolveStatus::converged);
  auto oracle = grid_oracle(rs, {0, 1}, 2000);
  bool matched = false;
  for (const auto& om : oracle)
    if (geodesic_distance(mres.points[0].point.H, om.H) < 1e-6) matched = true;
  CHECK(matched);
}

TEST_CASE("grid oracle rejects high-dimensional cells") {
  auto rs = build_irreducible(Family::F4, 4, {{"short", 1}, {"long", 1}});
  CHECK_THROWS_AS(grid_oracle(rs, {0, 1, 2, 3}, 50), std::invalid_argument);
}

TEST_CASE("determinism: identical inputs give identical outputs") {
  auto sum = direct_sum(a1(1), a1(2));
  auto r1 = solve_biharmonic(sum, {0, 1});
  auto r2 = solve_biharmonic(sum, {0, 1});
  REQUIRE(r1.points.size() == r2.points.size());
  for (size_t i = 0; i < r1.points.size(); ++i)
    CHECK(r1.points[i].point.H == r2.points[i].point.H);  // bitwise
}

TEST_CASE("RSB_SEED rescrambles seeds without changing the solution set") {
  auto f1 = a1(1);
  auto sum = direct_sum(f1, a1(2));
  setenv("RSB_SEED", "97", 1);
  auto res = solve_biharmonic(sum, {0, 1});
  unsetenv("RSB_SEED");
  REQUIRE(res.points.size() == 2);
  CHECK(contains_cos2(res, f1, 1.0 / 3.0, 1e-9));
  CHECK(contains_cos2(res, f1, 0.5, 1e-9));
}

TEST_CASE("A_2 solutions respect the diagram symmetry") {
  auto rs = a2();  // equal multiplicities
  auto res = solve_biharmonic(rs, {0, 1});
  REQUIRE(res.status == SolveStatus::converged);
  // α1 ↔ α2 corresponds to reversing and negating the ambient coordinates
  auto swapped = [](const Eigen::VectorXd& H) {
    Eigen::VectorXd s(3);
    s << -H[2], -H[1], -H[0];
    return s;
  };
  for (const auto& sp : res.points) {
    bool matched = false;
    for (const auto& sq : res.points)
      if (geodesic_distance(swapped(sp.point.H), sq.point.H) < 1e-8) matched = true;
    CHECK(matched);
  }
}

TEST_CASE("classify_cellwise") {
  SUBCASE("rank 1: one cell, classification only") {
    auto rs = a1(4);
    auto res = classify_cellwise(rs);
    REQUIRE(res.size() == 1);
    REQUIRE(res[0].points.size() == 1);
    CHECK(res[0].points[0].report.classification == OrbitClass::minimal);
    CHECK(res[0].minimal_status == SolveStatus::converged);
  }
  SUBCASE("(1,2) product: full cell carries the proper point") {
    auto f1 = a1(1);
    auto sum = direct_sum(f1, a1(2));
    auto res = classify_cellwise(sum);
    REQUIRE(res.size() == 3);
    bool proper_seen = false;
    for (const auto& cr : res) {
      CHECK(cr.minimal_status == SolveStatus::converged);
      for (const auto& sp : cr.points)
        if (sp.report.classification == OrbitClass::proper_biharmonic) {
          proper_seen = true;
          CHECK(cr.delta == std::vector<int>{0, 1});
          CHECK(std::abs(cos2_factor1(f1, sp.point.H) - 0.5) < 1e-9);
        }
    }
    CHECK(proper_seen);
  }
  SUBCASE("parallel and serial agree") {
    auto rs = build_irreducible(Family::B, 2, {{"short", 1}, {"long", 1}});
    auto serial = classify_cellwise(rs, 1e-10, 0, 1);
    auto parallel = classify_cellwise(rs, 1e-10, 0, 4);
    REQUIRE(serial.size() == parallel.size());
    for (size_t i = 0; i < serial.size(); ++i) {
      REQUIRE(serial[i].points.size() == parallel[i].points.size());
      for (size_t j = 0; j < serial[i].points.size(); ++j)
        CHECK(serial[i].points[j].point.H == parallel[i].points[j].point.H);
    }
  }
  SUBCASE("a system without minimal wall orbits reports the failure") {
    // Σ⁺ = {α1, α1+α2} passes validation but its singleton cells are not
    // minimal: the solve must say so instead of inventing a point.
    RatVec e1{Rational(1), Rational(0)}, e2{Rational(0), Rational(1)};
    RatVec both{Rational(1), Rational(1)};
    auto rs = make_root_system(2, {{e1, 1}, {both, 1}}, {e1, e2}, "lopsided");
    REQUIRE(validate(rs).empty());
    auto res = classify_cellwise(rs);
    REQUIRE(res.size() == 3);
    CHECK(res[0].minimal_status == SolveStatus::no_solution_found);  // Δ={α1}
    CHECK(res[1].minimal_status == SolveStatus::no_solution_found);  // Δ={α2}
    CHECK(res[2].minimal_status == SolveStatus::converged);          // full cell
  }
}

TEST_CASE("B_2 (1,1) baseline against the oracle") {
  auto rs = build_irreducible(Family::B, 2, {{"short", 1}, {"long", 1}});
  auto res = classify_cellwise(rs);
  REQUIRE(res.size() == 3);
  for (int c : {0, 1}) {  // wall cells: single minimal points
    REQUIRE(res[c].points.size() == 1);
    CHECK(res[c].points[0].report.classification == OrbitClass::minimal);
  }
  auto oracle = grid_oracle(rs, {0, 1}, 2000);
  CHECK(oracle.size() == res[2].points.size());
  for (const auto& sp : res[2].points) {
    bool matched = false;
    for (const auto& om : oracle)
      if (geodesic_distance(sp.point.H, om.H) < 1e-6) matched = true;
    CHECK(matched);
    MESSAGE("B2(1,1) full-cell point: H = (", sp.point.H[0], ", ", sp.point.H[1],
            ")  class = ", orbit_class_name(sp.report.classification),
            "  |tau| = ", sp.report.tension_norm,
            "  |tau2| = ", sp.report.bitension_norm);
  }
}
