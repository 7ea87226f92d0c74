#include "rspace/orbitgeom.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rspace {

namespace {

struct Pairings {
  Eigen::VectorXd p;        // <λ_k, H> for every positive root
  std::vector<int> active;  // indices not in the vanishing set
  int dim = 0;              // Σ m(λ) over active roots
};

// Evaluates all pairings and rechecks the CellPoint against the tolerance
// band: vanishing roots must pair to ~0, active roots must clear the dead
// band. This guards every evaluation entry point.
Pairings checked_pairings(const RootSystem& rs, const CellPoint& point) {
  const auto tol = chamber_tolerances(rs);
  Pairings out;
  out.p = rs.root_mat.transpose() * point.H;
  out.active.reserve(rs.num_positive_roots());
  size_t v = 0;
  for (int k = 0; k < rs.num_positive_roots(); ++k) {
    const bool vanishes = v < point.vanishing.size() && point.vanishing[v] == k;
    if (vanishes) {
      ++v;
      if (std::abs(out.p[k]) > tol.vanish)
        throw std::domain_error("stale CellPoint: root #" + std::to_string(k) +
                                " is marked vanishing but pairs to " +
                                std::to_string(out.p[k]));
      continue;
    }
    if (std::abs(out.p[k]) <= tol.active)
      throw std::domain_error("pairing of root #" + std::to_string(k) +
                              " with H lies in the tolerance dead band (" +
                              std::to_string(out.p[k]) + ")");
    out.active.push_back(k);
    out.dim += rs.positive_roots[k].multiplicity;
  }
  return out;
}

Eigen::VectorXd tension_tilde_impl(const RootSystem& rs, const Pairings& pr) {
  Eigen::VectorXd tau = Eigen::VectorXd::Zero(rs.ambient_dim);
  for (int k : pr.active) tau -= (rs.mult[k] / pr.p[k]) * rs.root_mat.col(k);
  return tau;
}

}  // namespace

const char* orbit_class_name(OrbitClass c) {
  switch (c) {
    case OrbitClass::minimal: return "minimal";
    case OrbitClass::proper_biharmonic: return "proper_biharmonic";
    case OrbitClass::neither: return "neither";
  }
  return "?";
}

OrbitClass classify(double tension_norm, double bitension_norm) {
  if (tension_norm < kMinimalThreshold) return OrbitClass::minimal;
  if (bitension_norm < kBiharmonicThreshold) return OrbitClass::proper_biharmonic;
  return OrbitClass::neither;
}

Eigen::VectorXd tension_tilde(const RootSystem& rs, const CellPoint& p) {
  return tension_tilde_impl(rs, checked_pairings(rs, p));
}

Eigen::VectorXd tension_tangent(const RootSystem& rs, const CellPoint& p) {
  const Pairings pr = checked_pairings(rs, p);
  return tension_tilde_impl(rs, pr) + pr.dim * p.H;
}

Eigen::VectorXd bitension(const RootSystem& rs, const CellPoint& p) {
  const Pairings pr = checked_pairings(rs, p);
  const Eigen::VectorXd tau = tension_tilde_impl(rs, pr);
  const Eigen::VectorXd tangent = tau + pr.dim * p.H;
  Eigen::VectorXd out = 2.0 * pr.dim * tangent;
  for (int k : pr.active) {
    const Eigen::VectorXd lamT = rs.root_mat.col(k) - pr.p[k] * p.H;
    out -= rs.mult[k] * (rs.root_mat.col(k).dot(tau) / (pr.p[k] * pr.p[k])) * lamT;
  }
  return out;
}

Residuals biharmonic_residuals(const RootSystem& rs, const CellPoint& p) {
  const Pairings pr = checked_pairings(rs, p);
  const Eigen::VectorXd tau = tension_tilde_impl(rs, pr);
  const Eigen::VectorXd tangent = tau + pr.dim * p.H;
  // Route 1: the characterization as stated, in terms of (τ_H)_H.
  Eigen::VectorXd d1 = static_cast<double>(pr.dim) * tangent;
  for (int k : pr.active) {
    const Eigen::VectorXd lamT = rs.root_mat.col(k) - pr.p[k] * p.H;
    d1 -= rs.mult[k] * (rs.root_mat.col(k).dot(tangent) / (pr.p[k] * pr.p[k])) * lamT;
  }
  // Route 2: the (τ_{2,H})_H display, in terms of τ̃_H.
  Eigen::VectorXd d2 = 2.0 * pr.dim * tangent;
  for (int k : pr.active) {
    const Eigen::VectorXd lamT = rs.root_mat.col(k) - pr.p[k] * p.H;
    d2 -= rs.mult[k] * (rs.root_mat.col(k).dot(tau) / (pr.p[k] * pr.p[k])) * lamT;
  }
  return {d1.norm(), d2.norm()};
}

std::vector<ShapeEntry> shape_spectrum(const RootSystem& rs, const CellPoint& p) {
  const Pairings pr = checked_pairings(rs, p);
  const Eigen::VectorXd tangent = tension_tilde_impl(rs, pr) + pr.dim * p.H;
  std::vector<ShapeEntry> out;
  out.reserve(pr.active.size());
  for (int k : pr.active)
    out.push_back({k, rs.root_mat.col(k).dot(tangent) / pr.p[k],
                   rs.positive_roots[k].multiplicity});
  return out;
}

double potential_value(const RootSystem& rs, const std::vector<int>& vanishing,
                       const Eigen::VectorXd& H) {
  double value = 0.0;
  size_t v = 0;
  for (int k = 0; k < rs.num_positive_roots(); ++k) {
    if (v < vanishing.size() && vanishing[v] == k) {
      ++v;
      continue;
    }
    const double pk = rs.root_mat.col(k).dot(H);
    if (!(pk > 0.0))
      throw std::domain_error("potential_value: non-positive pairing <λ_" +
                              std::to_string(k) + ", H> = " + std::to_string(pk));
    value -= rs.mult[k] * std::log(pk);
  }
  return value;
}

Eigen::MatrixXd potential_ambient_hessian(const RootSystem& rs,
                                          const std::vector<int>& vanishing,
                                          const Eigen::VectorXd& H) {
  Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(rs.ambient_dim, rs.ambient_dim);
  size_t v = 0;
  for (int k = 0; k < rs.num_positive_roots(); ++k) {
    if (v < vanishing.size() && vanishing[v] == k) {
      ++v;
      continue;
    }
    const double pk = rs.root_mat.col(k).dot(H);
    hess += (rs.mult[k] / (pk * pk)) * rs.root_mat.col(k) *
            rs.root_mat.col(k).transpose();
  }
  return hess;
}

PotentialValue minimal_potential(const RootSystem& rs,
                                 const std::vector<int>& delta,
                                 const Eigen::VectorXd& x) {
  CellPoint point = point_from_coordinates(rs, delta, x);
  PotentialValue out;
  out.value = potential_value(rs, point.vanishing, point.H);
  out.gradient = tension_tangent(rs, point);
  out.point = std::move(point);
  return out;
}

OrbitReport orbit_report(const RootSystem& rs, const CellPoint& p) {
  const Pairings pr = checked_pairings(rs, p);
  OrbitReport rep;
  rep.point = p;
  rep.dim = pr.dim;
  rep.tau_tilde = tension_tilde_impl(rs, pr);
  rep.tau_tangent = rep.tau_tilde + pr.dim * p.H;
  rep.bitension_vec = bitension(rs, p);
  rep.tension_norm = rep.tau_tangent.norm();
  rep.bitension_norm = rep.bitension_vec.norm();
  const Residuals res = biharmonic_residuals(rs, p);
  rep.r1 = res.r1;
  rep.r2 = res.r2;
  rep.spectrum = shape_spectrum(rs, p);
  rep.classification = classify(rep.tension_norm, rep.bitension_norm);
  return rep;
}

}  // namespace rspace
