#pragma once

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rspace/rational.hpp"

namespace rspace {

enum class Family { A, B, C, D, BC, G2, F4, E6, E7, E8 };

std::string family_name(Family f);
std::optional<Family> parse_family(std::string_view name);

/// Multiplicity class labels of a family, ordered by squared root length.
/// A/D/E: {"long"}; B, C, G2, F4: {"short", "long"}; BC: {"short", "long",
/// "double"} where "double" is the class of doubled roots 2λ.
std::vector<std::string> multiplicity_classes(Family f);

struct PositiveRoot {
  RatVec coords;
  int multiplicity = 1;
};

/// One failed invariant, as data. `rule` is a stable identifier, `detail`
/// names the offending roots.
struct Violation {
  std::string rule;
  std::string detail;
};

/// A restricted root system with multiplicities: Σ⁺, m(λ), the simple roots
/// and their dual basis, stored in exact rational coordinates with cached
/// double realizations. Immutable after construction; safe to share across
/// threads.
struct RootSystem {
  int ambient_dim = 0;
  int rank = 0;
  std::vector<PositiveRoot> positive_roots;
  std::vector<RatVec> simple_roots;
  /// Exact dual basis H_i with <H_i, α_j> = δ_ij. Empty when the simple
  /// roots are linearly dependent (validate reports this).
  std::vector<RatVec> dual_basis;
  std::string label;

  // Double realizations, filled by make_root_system.
  Eigen::MatrixXd root_mat;    // ambient_dim x |Σ⁺|, one root per column
  Eigen::VectorXd mult;        // |Σ⁺|
  Eigen::MatrixXd simple_mat;  // ambient_dim x rank
  Eigen::MatrixXd dual_mat;    // ambient_dim x rank (empty if no dual basis)
  double max_root_norm = 0.0;

  int num_positive_roots() const {
    return static_cast<int>(positive_roots.size());
  }
  long total_multiplicity() const {
    long s = 0;
    for (const auto& r : positive_roots) s += r.multiplicity;
    return s;
  }
};

/// Assembles a RootSystem from raw data: sets rank = |simple|, computes the
/// dual basis when possible and caches the double realizations. Throws
/// std::invalid_argument only on structural errors (coordinate counts that
/// do not match ambient_dim); mathematical defects are left to validate().
RootSystem make_root_system(int ambient_dim,
                            std::vector<PositiveRoot> positive_roots,
                            std::vector<RatVec> simple_roots,
                            std::string label);

/// Standard realization of an irreducible family. Multiplicities are keyed
/// by the labels of multiplicity_classes(family); every class must be
/// present and positive (classes that are empty at low rank are accepted
/// and ignored). A_r lives in the sum-zero hyperplane of R^{r+1}, B/C/BC/D
/// in R^r, G2 in the sum-zero hyperplane of R^3, F4 in R^4, E6/E7/E8 in R^8.
RootSystem build_irreducible(Family family, int rank,
                             const std::map<std::string, int>& multiplicities);

/// Orthogonal direct sum: ambient coordinates concatenated, factor roots in
/// disjoint coordinate blocks.
RootSystem direct_sum(const RootSystem& a, const RootSystem& b);

/// Dual basis of a simple-root set, solved exactly from the Gram system.
/// Throws std::invalid_argument if the Gram matrix is singular.
std::vector<RatVec> dual_basis(const std::vector<RatVec>& simple_roots);

/// Checks every RootSystem invariant; empty result means the system is
/// valid. Violations are data, not failures.
std::vector<Violation> validate(const RootSystem& rs);

/// Exact coefficients of v in the simple-root basis, or nullopt if v lies
/// outside span(Π). Requires the dual basis.
std::optional<RatVec> simple_coefficients(const RootSystem& rs,
                                          const RatVec& v);

Eigen::VectorXd to_vector(const RatVec& v);

}  // namespace rspace
