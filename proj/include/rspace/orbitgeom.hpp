#pragma once

#include <Eigen/Dense>

#include <vector>

#include "rspace/chamber.hpp"
#include "rspace/rootsys.hpp"

namespace rspace {

/// Classification thresholds: two orders of magnitude above the solver
/// convergence tolerance (1e-10) to absorb conditioning.
inline constexpr double kMinimalThreshold = 1e-8;
inline constexpr double kBiharmonicThreshold = 1e-8;

enum class OrbitClass { minimal, proper_biharmonic, neither };
const char* orbit_class_name(OrbitClass c);
OrbitClass classify(double tension_norm, double bitension_norm);

/// τ̃_H = -Σ_{λ ∈ Σ⁺∖Σ_H} m(λ) λ / <λ,H>. Satisfies <τ̃_H, H> = -dim Ad(K)H.
Eigen::VectorXd tension_tilde(const RootSystem& rs, const CellPoint& p);

/// (τ_H)_H = τ̃_H + dim·H, the tangential tension (mean curvature) vector.
/// Zero iff the orbit is minimal.
Eigen::VectorXd tension_tangent(const RootSystem& rs, const CellPoint& p);

/// (τ_{2,H})_H = 2 dim (τ_H)_H - Σ m(λ) (<λ,τ̃_H>/<λ,H>²) λ^T with
/// λ^T = λ - <λ,H>H. Zero iff the orbit is biharmonic.
Eigen::VectorXd bitension(const RootSystem& rs, const CellPoint& p);

/// The two equivalent residual formulations:
///   r1 = | dim (τ_H)_H - Σ m(λ) (<λ,(τ_H)_H>/<λ,H>²) λ^T |
///   r2 = | (τ_{2,H})_H |
/// They vanish together; the underlying vectors agree identically.
struct Residuals {
  double r1;
  double r2;
};
Residuals biharmonic_residuals(const RootSystem& rs, const CellPoint& p);

/// Eigenvalue of the shape operator A_{(τ_H)_H} on the root space of λ,
/// <λ,(τ_H)_H>/<λ,H>, with multiplicity m(λ). One entry per non-vanishing
/// positive root, ordered by root index.
struct ShapeEntry {
  int root_index;
  double eigenvalue;
  int multiplicity;
};
std::vector<ShapeEntry> shape_spectrum(const RootSystem& rs, const CellPoint& p);

/// Convex cell potential F(H) = -Σ_{λ ∈ Σ⁺∖Σ_H} m(λ) log<λ,H> whose
/// spherical gradient is (τ_H)_H. Low-level evaluation at an explicit unit
/// vector with a fixed vanishing set; throws std::domain_error on a
/// non-positive pairing.
double potential_value(const RootSystem& rs, const std::vector<int>& vanishing,
                       const Eigen::VectorXd& H);

/// Ambient Hessian of the potential, Σ m(λ) λλᵀ / <λ,H>². Positive
/// semidefinite on the chamber.
Eigen::MatrixXd potential_ambient_hessian(const RootSystem& rs,
                                          const std::vector<int>& vanishing,
                                          const Eigen::VectorXd& H);

struct PotentialValue {
  double value;
  Eigen::VectorXd gradient;  // spherical gradient = tension_tangent
  CellPoint point;
};

/// F and its spherical gradient at H = normalize(Σ x_i H_{α_i}).
PotentialValue minimal_potential(const RootSystem& rs,
                                 const std::vector<int>& delta,
                                 const Eigen::VectorXd& x);

/// Everything about one orbit: dimension, tension data, residuals, shape
/// spectrum and classification.
struct OrbitReport {
  CellPoint point;
  int dim = 0;
  Eigen::VectorXd tau_tilde;
  Eigen::VectorXd tau_tangent;
  Eigen::VectorXd bitension_vec;
  double tension_norm = 0.0;
  double bitension_norm = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  std::vector<ShapeEntry> spectrum;
  OrbitClass classification = OrbitClass::neither;
};

OrbitReport orbit_report(const RootSystem& rs, const CellPoint& p);

}  // namespace rspace
