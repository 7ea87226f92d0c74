#pragma once

#include <optional>
#include <vector>

#include "rspace/orbitgeom.hpp"

namespace rspace {

enum class SolveStatus { converged, no_solution_found, boundary_escape };
const char* solve_status_name(SolveStatus s);

struct SolvePoint {
  CellPoint point;
  OrbitReport report;
  double residual_norm = 0.0;
  int iterations = 0;
};

struct SolveResult {
  std::vector<SolvePoint> points;
  int seeds_tried = 0;
  int seeds_escaped = 0;
  SolveStatus status = SolveStatus::no_solution_found;
};

struct SolveOptions {
  double tol = 1e-10;
  int max_iterations = 200;
  /// Newton seeds for the biharmonic solve; 0 means the default of 32 per
  /// cell dimension. The RSB_SEED environment variable rescrambles the
  /// low-discrepancy sequence.
  int seeds = 0;
  double dedupe_distance = 1e-6;
  /// A bitension root this close to the cell's minimal point is identified
  /// with it (the minimal point is a root of multiplicity >= 2, where plain
  /// Newton stalls early).
  double minimal_merge_radius = 1e-3;
  /// Optional start coordinates for solve_minimal (defaults to all ones).
  std::optional<Eigen::VectorXd> start;
};

/// Finds the unique minimal orbit in the cell: damped Riemannian Newton on
/// the convex cell potential, projected to the sphere每 step, with the exact
/// ambient Hessian. Converged means |(τ_H)_H| < tol at an interior point.
SolveResult solve_minimal(const RootSystem& rs, const std::vector<int>& delta,
                          const SolveOptions& opts = {});

/// Finds biharmonic orbits in the cell: the polished minimal point (always a
/// solution) plus multi-start damped Newton on H ↦ (τ_{2,H})_H over the
/// spherical cell, seeded on a low-discrepancy simplex grid, deduplicated by
/// geodesic distance.
SolveResult solve_biharmonic(const RootSystem& rs, const std::vector<int>& delta,
                             const SolveOptions& opts = {});

/// Exhaustive verification oracle: samples |(τ_{2,H})_H| on a uniform grid
/// over the cell simplex, isolates local minima and refines each bracket by
/// trisection to 1e-8, reporting refined minima below report_threshold.
/// Only cells with |Δ| ≤ 3 are supported.
std::vector<CellPoint> grid_oracle(const RootSystem& rs,
                                   const std::vector<int>& delta,
                                   int resolution,
                                   double report_threshold = 1e-6);

struct CellResult {
  std::vector<int> delta;
  /// Union of minimal and biharmonic solutions (or the directly evaluated
  /// point of a singleton cell), deduplicated, sorted by bitension residual
  /// then coordinates. residual_norm is the bitension norm.
  std::vector<SolvePoint> points;
  SolveStatus minimal_status = SolveStatus::no_solution_found;
  SolveStatus biharmonic_status = SolveStatus::no_solution_found;
  int seeds_tried = 0;
  int seeds_escaped = 0;
};

/// Runs solve_minimal and solve_biharmonic on every nonempty cell.
/// Singleton cells hold a single point, which is evaluated and classified
/// directly. Cells are processed in enumeration order; `parallel` caps the
/// number of worker threads (0 = hardware concurrency).
std::vector<CellResult> classify_cellwise(const RootSystem& rs,
                                          double tol = 1e-10, int seeds = 0,
                                          int parallel = 0);

}  // namespace rspace
