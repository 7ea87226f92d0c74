#pragma once

#include <Eigen/Dense>

#include <vector>

#include "rspace/rootsys.hpp"

namespace rspace {

/// Two-tier tolerance band, relative to the largest root length. Pairings at
/// or below `vanish` count as zero, pairings above `active` count as active;
/// anything in between is ambiguous and rejected with a diagnostic.
struct ChamberTolerances {
  double vanish;
  double active;
};

ChamberTolerances chamber_tolerances(const RootSystem& rs);

/// A unit vector in the closed fundamental chamber, tagged with its cell Δ
/// (active simple-root indices) and the positive roots vanishing on it.
struct CellPoint {
  Eigen::VectorXd H;
  std::vector<int> delta;      // sorted indices into simple_roots
  std::vector<int> vanishing;  // sorted indices into positive_roots
};

/// All 2^r − 1 nonempty subsets of the simple roots, ordered by size then
/// lexicographically.
std::vector<std::vector<int>> cells(const RootSystem& rs);

/// H = normalize(Σ_{i∈Δ} x_i H_{α_i}) with strictly positive coordinates.
/// Throws std::invalid_argument on non-positive coordinates and
/// std::domain_error when the resulting point does not land cleanly in the
/// requested cell (tolerance dead band or wall collision).
CellPoint point_from_coordinates(const RootSystem& rs,
                                 const std::vector<int>& delta,
                                 const Eigen::VectorXd& x);

/// Indices of positive roots with <λ, H> = 0 (within tolerance). H must be
/// unit and in the closed chamber; a pairing below -tol on a simple root
/// throws std::domain_error ("outside closed chamber").
std::vector<int> vanishing_roots(const RootSystem& rs,
                                 const Eigen::VectorXd& H);

/// The cell Δ(H) = {i : <α_i, H> > tol_active}.
std::vector<int> cell_of(const RootSystem& rs, const Eigen::VectorXd& H);

/// Normalizes H and locates it in the chamber, producing a validated
/// CellPoint. Same error contract as vanishing_roots.
CellPoint make_cell_point(const RootSystem& rs, const Eigen::VectorXd& H);

/// dim Ad(K)H = Σ m(λ) over positive roots not vanishing on H.
int orbit_dimension(const RootSystem& rs, const CellPoint& p);

/// Exact vanishing set of the open cell C^Δ: positive roots whose
/// simple-root support misses Δ. Requires a valid system (dual basis and
/// nonnegative-integer decompositions).
std::vector<int> cell_vanishing(const RootSystem& rs,
                                const std::vector<int>& delta);

/// Geodesic distance on the unit sphere, stable near zero.
double geodesic_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace rspace
