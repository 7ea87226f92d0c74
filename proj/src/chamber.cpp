#include "rspace/chamber.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rspace {

namespace {

std::string idx_list(const std::vector<int>& v) {
  std::string s = "{";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "}";
}

struct Location {
  std::vector<int> delta;
  std::vector<int> vanishing;
};

// Classifies all pairings of a unit chamber vector. Throws on points outside
// the closed chamber and on pairings inside the tolerance dead band.
Location locate(const RootSystem& rs, const Eigen::VectorXd& H) {
  const auto tol = chamber_tolerances(rs);
  Location loc;
  for (int i = 0; i < rs.rank; ++i) {
    const double p = rs.simple_mat.col(i).dot(H);
    if (p < -tol.vanish)
      throw std::domain_error("point outside closed chamber: <α_" +
                              std::to_string(i + 1) + ", H> = " + std::to_string(p));
    if (p > tol.active) {
      loc.delta.push_back(i);
    } else if (std::abs(p) > tol.vanish) {
      throw std::domain_error("pairing of simple root α_" + std::to_string(i + 1) +
                              " with H lies in the tolerance dead band (" +
                              std::to_string(p) + ")");
    }
  }
  for (int k = 0; k < rs.num_positive_roots(); ++k) {
    const double p = rs.root_mat.col(k).dot(H);
    if (std::abs(p) <= tol.vanish) {
      loc.vanishing.push_back(k);
    } else if (std::abs(p) <= tol.active) {
      throw std::domain_error("pairing of root #" + std::to_string(k) +
                              " with H lies in the tolerance dead band (" +
                              std::to_string(p) + ")");
    }
  }
  return loc;
}

void require_unit(const Eigen::VectorXd& H) {
  if (std::abs(H.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("expected a unit vector, |H| = " +
                                std::to_string(H.norm()));
}

}  // namespace

ChamberTolerances chamber_tolerances(const RootSystem& rs) {
  const double scale = rs.max_root_norm > 0 ? rs.max_root_norm : 1.0;
  return {1e-9 * scale, 1e-7 * scale};
}

std::vector<std::vector<int>> cells(const RootSystem& rs) {
  const int r = rs.rank;
  std::vector<std::vector<int>> out;
  out.reserve((1u << r) - 1);
  for (unsigned mask = 1; mask < (1u << r); ++mask) {
    std::vector<int> delta;
    for (int i = 0; i < r; ++i)
      if (mask & (1u << i)) delta.push_back(i);
    out.push_back(std::move(delta));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

CellPoint point_from_coordinates(const RootSystem& rs,
                                 const std::vector<int>& delta,
                                 const Eigen::VectorXd& x) {
  if (delta.empty())
    throw std::invalid_argument("point_from_coordinates: empty cell");
  if (rs.dual_mat.size() == 0)
    throw std::invalid_argument("point_from_coordinates: system has no dual basis");
  if (static_cast<size_t>(x.size()) != delta.size())
    throw std::invalid_argument("point_from_coordinates: coordinate count " +
                                std::to_string(x.size()) + " does not match |Δ| = " +
                                std::to_string(delta.size()));
  Eigen::VectorXd H = Eigen::VectorXd::Zero(rs.ambient_dim);
  for (size_t i = 0; i < delta.size(); ++i) {
    if (!(x[static_cast<Eigen::Index>(i)] > 0.0))
      throw std::invalid_argument("point_from_coordinates: coordinate " +
                                  std::to_string(i) + " is not strictly positive");
    if (delta[i] < 0 || delta[i] >= rs.rank)
      throw std::invalid_argument("point_from_coordinates: simple-root index " +
                                  std::to_string(delta[i]) + " out of range");
    H += x[static_cast<Eigen::Index>(i)] * rs.dual_mat.col(delta[i]);
  }
  const double norm = H.norm();
  if (!(norm > 0.0))
    throw std::logic_error("point_from_coordinates: zero vector from positive coordinates");
  H /= norm;

  Location loc = locate(rs, H);
  std::vector<int> want(delta);
  std::sort(want.begin(), want.end());
  if (loc.delta != want)
    throw std::domain_error("point_from_coordinates: point lands in cell " +
                            idx_list(loc.delta) + " instead of requested " +
                            idx_list(want));
  return {std::move(H), std::move(want), std::move(loc.vanishing)};
}

std::vector<int> vanishing_roots(const RootSystem& rs, const Eigen::VectorXd& H) {
  require_unit(H);
  return locate(rs, H).vanishing;
}

std::vector<int> cell_of(const RootSystem& rs, const Eigen::VectorXd& H) {
  require_unit(H);
  return locate(rs, H).delta;
}

CellPoint make_cell_point(const RootSystem& rs, const Eigen::VectorXd& H) {
  const double norm = H.norm();
  if (!(norm > 0.0))
    throw std::invalid_argument("make_cell_point: zero vector");
  Eigen::VectorXd unit = H / norm;
  Location loc = locate(rs, unit);
  return {std::move(unit), std::move(loc.delta), std::move(loc.vanishing)};
}

int orbit_dimension(const RootSystem& rs, const CellPoint& p) {
  int dim = 0;
  size_t v = 0;
  for (int k = 0; k < rs.num_positive_roots(); ++k) {
    if (v < p.vanishing.size() && p.vanishing[v] == k) {
      ++v;
      continue;
    }
    dim += rs.positive_roots[k].multiplicity;
  }
  return dim;
}

std::vector<int> cell_vanishing(const RootSystem& rs,
                                const std::vector<int>& delta) {
  std::vector<int> out;
  for (int k = 0; k < rs.num_positive_roots(); ++k) {
    auto coeff = simple_coefficients(rs, rs.positive_roots[k].coords);
    if (!coeff)
      throw std::invalid_argument("cell_vanishing: root #" + std::to_string(k) +
                                  " is outside span of simple roots");
    bool vanishes = true;
    for (int i : delta)
      if (!(*coeff)[i].is_zero()) {
        vanishes = false;
        break;
      }
    if (vanishes) out.push_back(k);
  }
  return out;
}

double geodesic_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double chord = (a - b).norm();
  return 2.0 * std::asin(std::min(1.0, chord / 2.0));
}

}  // namespace rspace
