#include "rspace/rootsys.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rspace {

namespace {

using RatMat = std::vector<RatVec>;  // row-major

// Solves A X = B exactly by Gauss elimination with nonzero pivoting.
// A is n x n (rows), B is n x m. Returns nullopt when A is singular.
std::optional<RatMat> solve_exact(RatMat a, RatMat b) {
  const size_t n = a.size();
  const size_t m = b.empty() ? 0 : b[0].size();
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    const Rational inv = Rational(1) / a[col][col];
    for (size_t j = col; j < n; ++j) a[col][j] *= inv;
    for (size_t j = 0; j < m; ++j) b[col][j] *= inv;
    for (size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col].is_zero()) continue;
      const Rational f = a[row][col];
      for (size_t j = col; j < n; ++j) a[row][j] -= f * a[col][j];
      for (size_t j = 0; j < m; ++j) b[row][j] -= f * b[col][j];
    }
  }
  return b;
}

RatVec unit(int dim, int i, Rational scale = 1) {
  RatVec v(dim, Rational(0));
  v[i] = scale;
  return v;
}

RatVec combine(const RatVec& a, const RatVec& b, Rational ca, Rational cb) {
  RatVec v(a.size());
  for (size_t i = 0; i < a.size(); ++i) v[i] = ca * a[i] + cb * b[i];
  return v;
}

std::string coords_str(const RatVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

int required_multiplicity(const std::map<std::string, int>& mults,
                          const std::string& cls, Family f) {
  auto it = mults.find(cls);
  if (it == mults.end())
    throw std::invalid_argument("build_irreducible: missing multiplicity for class '" +
                                cls + "' of family " + family_name(f));
  if (it->second <= 0)
    throw std::invalid_argument("build_irreducible: non-positive multiplicity for class '" +
                                cls + "' of family " + family_name(f));
  return it->second;
}

struct Generated {
  std::vector<PositiveRoot> roots;
  std::vector<RatVec> simples;
  int ambient = 0;
};

Generated generate_a(int r, int m_long) {
  Generated g;
  g.ambient = r + 1;
  for (int i = 0; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j)
      g.roots.push_back({combine(unit(g.ambient, i), unit(g.ambient, j), 1, -1), m_long});
  for (int i = 0; i < r; ++i)
    g.simples.push_back(combine(unit(g.ambient, i), unit(g.ambient, i + 1), 1, -1));
  return g;
}

// B/C/BC/D share the R^r realization; which orbits appear differs.
Generated generate_bcd(Family f, int r, const std::map<std::string, int>& mults) {
  Generated g;
  g.ambient = r;
  const bool has_ei = (f == Family::B || f == Family::BC);
  const bool has_2ei = (f == Family::C || f == Family::BC);
  const bool has_eipm = true;  // e_i ± e_j, empty at r = 1
  int m_short = 0, m_long = 0, m_double = 0, m_pm = 0;
  switch (f) {
    case Family::B:
      m_short = required_multiplicity(mults, "short", f);
      m_pm = required_multiplicity(mults, "long", f);
      break;
    case Family::C:
      m_pm = required_multiplicity(mults, "short", f);
      m_long = required_multiplicity(mults, "long", f);
      break;
    case Family::BC:
      m_short = required_multiplicity(mults, "short", f);
      m_pm = required_multiplicity(mults, "long", f);
      m_double = required_multiplicity(mults, "double", f);
      break;
    case Family::D:
      m_pm = required_multiplicity(mults, "long", f);
      break;
    default:
      throw std::logic_error("generate_bcd: bad family");
  }
  if (has_eipm) {
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) {
        g.roots.push_back({combine(unit(r, i), unit(r, j), 1, -1), m_pm});
        g.roots.push_back({combine(unit(r, i), unit(r, j), 1, 1), m_pm});
      }
  }
  if (has_ei)
    for (int i = 0; i < r; ++i) g.roots.push_back({unit(r, i), m_short});
  if (has_2ei)
    for (int i = 0; i < r; ++i)
      g.roots.push_back({unit(r, i, 2), f == Family::C ? m_long : m_double});
  for (int i = 0; i + 1 < r; ++i)
    g.simples.push_back(combine(unit(r, i), unit(r, i + 1), 1, -1));
  if (f == Family::D)
    g.simples.push_back(combine(unit(r, r - 2), unit(r, r - 1), 1, 1));
  else if (f == Family::C)
    g.simples.push_back(unit(r, r - 1, 2));
  else
    g.simples.push_back(unit(r, r - 1));
  return g;
}

Generated generate_g2(int m_short, int m_long) {
  // Sum-zero realization in R^3, all coordinates integral.
  Generated g;
  g.ambient = 3;
  auto v = [](long long a, long long b, long long c) {
    return RatVec{Rational(a), Rational(b), Rational(c)};
  };
  g.simples = {v(1, -1, 0), v(-1, 2, -1)};
  g.roots = {
      {v(1, -1, 0), m_short}, {v(0, 1, -1), m_short}, {v(1, 0, -1), m_short},
      {v(-1, 2, -1), m_long}, {v(2, -1, -1), m_long}, {v(1, 1, -2), m_long},
  };
  return g;
}

Generated generate_f4(int m_short, int m_long) {
  Generated g;
  g.ambient = 4;
  const Rational h(1, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      g.roots.push_back({combine(unit(4, i), unit(4, j), 1, -1), m_long});
      g.roots.push_back({combine(unit(4, i), unit(4, j), 1, 1), m_long});
    }
  for (int i = 0; i < 4; ++i) g.roots.push_back({unit(4, i), m_short});
  for (int s1 = -1; s1 <= 1; s1 += 2)
    for (int s2 = -1; s2 <= 1; s2 += 2)
      for (int s3 = -1; s3 <= 1; s3 += 2)
        g.roots.push_back({RatVec{h, h * s1, h * s2, h * s3}, m_short});
  g.simples = {combine(unit(4, 1), unit(4, 2), 1, -1),
               combine(unit(4, 2), unit(4, 3), 1, -1), unit(4, 3),
               RatVec{h, -h, -h, -h}};
  return g;
}

// Bourbaki realizations of E6/E7/E8 in R^8.
Generated generate_e(Family f, int m_long) {
  Generated g;
  g.ambient = 8;
  const Rational h(1, 2);
  const int pair_limit = f == Family::E8 ? 8 : (f == Family::E7 ? 6 : 5);
  for (int i = 0; i < pair_limit; ++i)
    for (int j = i + 1; j < pair_limit; ++j) {
      g.roots.push_back({combine(unit(8, j), unit(8, i), 1, -1), m_long});
      g.roots.push_back({combine(unit(8, j), unit(8, i), 1, 1), m_long});
    }
  if (f == Family::E7)
    g.roots.push_back({combine(unit(8, 7), unit(8, 6), 1, -1), m_long});
  // Half-integer roots: fixed tail in e6..e8 per family, free signs in the
  // leading block subject to a parity constraint.
  const int free_count = f == Family::E8 ? 7 : (f == Family::E7 ? 6 : 5);
  const bool odd_parity = f == Family::E7;
  for (unsigned mask = 0; mask < (1u << free_count); ++mask) {
    int minus = __builtin_popcount(mask);
    if ((minus % 2 == 1) != odd_parity) continue;
    RatVec v(8, Rational(0));
    for (int i = 0; i < free_count; ++i) v[i] = (mask >> i) & 1 ? -h : h;
    v[7] = h;
    if (f == Family::E7) v[6] = -h;
    if (f == Family::E6) {
      v[6] = -h;
      v[5] = -h;
    }
    g.roots.push_back({v, m_long});
  }
  RatVec alpha1(8, -h);
  alpha1[0] = h;
  alpha1[7] = h;
  g.simples.push_back(alpha1);
  g.simples.push_back(combine(unit(8, 0), unit(8, 1), 1, 1));
  const int chain = f == Family::E8 ? 6 : (f == Family::E7 ? 5 : 4);
  for (int i = 0; i < chain; ++i)
    g.simples.push_back(combine(unit(8, i + 1), unit(8, i), 1, -1));
  return g;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::BC: return "BC";
    case Family::G2: return "G2";
    case Family::F4: return "F4";
    case Family::E6: return "E6";
    case Family::E7: return "E7";
    case Family::E8: return "E8";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  if (name == "A") return Family::A;
  if (name == "B") return Family::B;
  if (name == "C") return Family::C;
  if (name == "D") return Family::D;
  if (name == "BC") return Family::BC;
  if (name == "G2" || name == "G") return Family::G2;
  if (name == "F4" || name == "F") return Family::F4;
  if (name == "E6") return Family::E6;
  if (name == "E7") return Family::E7;
  if (name == "E8") return Family::E8;
  return std::nullopt;
}

std::vector<std::string> multiplicity_classes(Family f) {
  switch (f) {
    case Family::A:
    case Family::D:
    case Family::E6:
    case Family::E7:
    case Family::E8:
      return {"long"};
    case Family::B:
    case Family::C:
    case Family::G2:
    case Family::F4:
      return {"short", "long"};
    case Family::BC:
      return {"short", "long", "double"};
  }
  return {};
}

Eigen::VectorXd to_vector(const RatVec& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i].to_double();
  return out;
}

std::vector<RatVec> dual_basis(const std::vector<RatVec>& simple_roots) {
  const size_t r = simple_roots.size();
  RatMat gram(r, RatVec(r)), rhs(r, RatVec(r, Rational(0)));
  for (size_t i = 0; i < r; ++i) {
    rhs[i][i] = 1;
    for (size_t j = 0; j < r; ++j) gram[i][j] = dot(simple_roots[i], simple_roots[j]);
  }
  auto coeff = solve_exact(gram, rhs);
  if (!coeff)
    throw std::invalid_argument(
        "dual_basis: singular Gram matrix (simple roots are linearly dependent)");
  // H_i = Σ_j coeff[j][i] α_j
  std::vector<RatVec> duals(r);
  const size_t dim = simple_roots.empty() ? 0 : simple_roots[0].size();
  for (size_t i = 0; i < r; ++i) {
    RatVec h(dim, Rational(0));
    for (size_t j = 0; j < r; ++j)
      for (size_t c = 0; c < dim; ++c) h[c] += (*coeff)[j][i] * simple_roots[j][c];
    duals[i] = std::move(h);
  }
  return duals;
}

RootSystem make_root_system(int ambient_dim,
                            std::vector<PositiveRoot> positive_roots,
                            std::vector<RatVec> simple_roots,
                            std::string label) {
  if (ambient_dim < 1)
    throw std::invalid_argument("make_root_system: ambient_dim must be positive");
  for (const auto& pr : positive_roots)
    if (static_cast<int>(pr.coords.size()) != ambient_dim)
      throw std::invalid_argument("make_root_system: root " + coords_str(pr.coords) +
                                  " does not have " + std::to_string(ambient_dim) +
                                  " coordinates");
  for (const auto& s : simple_roots)
    if (static_cast<int>(s.size()) != ambient_dim)
      throw std::invalid_argument("make_root_system: simple root " + coords_str(s) +
                                  " does not have " + std::to_string(ambient_dim) +
                                  " coordinates");

  RootSystem rs;
  rs.ambient_dim = ambient_dim;
  rs.rank = static_cast<int>(simple_roots.size());
  rs.positive_roots = std::move(positive_roots);
  rs.simple_roots = std::move(simple_roots);
  rs.label = std::move(label);
  try {
    rs.dual_basis = dual_basis(rs.simple_roots);
  } catch (const std::invalid_argument&) {
    rs.dual_basis.clear();
  }

  const int np = rs.num_positive_roots();
  rs.root_mat.resize(ambient_dim, np);
  rs.mult.resize(np);
  for (int k = 0; k < np; ++k) {
    rs.root_mat.col(k) = to_vector(rs.positive_roots[k].coords);
    rs.mult[k] = rs.positive_roots[k].multiplicity;
  }
  rs.simple_mat.resize(ambient_dim, rs.rank);
  for (int i = 0; i < rs.rank; ++i) rs.simple_mat.col(i) = to_vector(rs.simple_roots[i]);
  if (!rs.dual_basis.empty()) {
    rs.dual_mat.resize(ambient_dim, rs.rank);
    for (int i = 0; i < rs.rank; ++i) rs.dual_mat.col(i) = to_vector(rs.dual_basis[i]);
  }
  rs.max_root_norm = 0.0;
  for (int k = 0; k < np; ++k)
    rs.max_root_norm = std::max(rs.max_root_norm, rs.root_mat.col(k).norm());
  return rs;
}

RootSystem build_irreducible(Family family, int rank,
                             const std::map<std::string, int>& multiplicities) {
  auto bad_rank = [&](const std::string& need) {
    throw std::invalid_argument("build_irreducible: family " + family_name(family) +
                                " requires rank " + need + ", got " +
                                std::to_string(rank));
  };
  Generated g;
  switch (family) {
    case Family::A:
      if (rank < 1) bad_rank(">= 1");
      g = generate_a(rank, required_multiplicity(multiplicities, "long", family));
      break;
    case Family::B:
    case Family::C:
    case Family::BC:
      if (rank < 1) bad_rank(">= 1");
      g = generate_bcd(family, rank, multiplicities);
      break;
    case Family::D:
      if (rank < 2) bad_rank(">= 2");
      g = generate_bcd(family, rank, multiplicities);
      break;
    case Family::G2:
      if (rank != 2) bad_rank("= 2");
      g = generate_g2(required_multiplicity(multiplicities, "short", family),
                      required_multiplicity(multiplicities, "long", family));
      break;
    case Family::F4:
      if (rank != 4) bad_rank("= 4");
      g = generate_f4(required_multiplicity(multiplicities, "short", family),
                      required_multiplicity(multiplicities, "long", family));
      break;
    case Family::E6:
      if (rank != 6) bad_rank("= 6");
      g = generate_e(family, required_multiplicity(multiplicities, "long", family));
      break;
    case Family::E7:
      if (rank != 7) bad_rank("= 7");
      g = generate_e(family, required_multiplicity(multiplicities, "long", family));
      break;
    case Family::E8:
      if (rank != 8) bad_rank("= 8");
      g = generate_e(family, required_multiplicity(multiplicities, "long", family));
      break;
  }
  std::ostringstream label;
  label << family_name(family);
  if (family != Family::G2 && family != Family::F4 && family != Family::E6 &&
      family != Family::E7 && family != Family::E8)
    label << rank;
  label << "{";
  auto classes = multiplicity_classes(family);
  for (size_t i = 0; i < classes.size(); ++i) {
    if (i) label << ",";
    label << multiplicities.at(classes[i]);
  }
  label << "}";
  return make_root_system(g.ambient, std::move(g.roots), std::move(g.simples),
                          label.str());
}

RootSystem direct_sum(const RootSystem& a, const RootSystem& b) {
  const int dim = a.ambient_dim + b.ambient_dim;
  auto pad_left = [&](const RatVec& v) {
    RatVec out(dim, Rational(0));
    std::copy(v.begin(), v.end(), out.begin());
    return out;
  };
  auto pad_right = [&](const RatVec& v) {
    RatVec out(dim, Rational(0));
    std::copy(v.begin(), v.end(), out.begin() + a.ambient_dim);
    return out;
  };
  std::vector<PositiveRoot> roots;
  roots.reserve(a.positive_roots.size() + b.positive_roots.size());
  for (const auto& r : a.positive_roots) roots.push_back({pad_left(r.coords), r.multiplicity});
  for (const auto& r : b.positive_roots) roots.push_back({pad_right(r.coords), r.multiplicity});
  std::vector<RatVec> simples;
  simples.reserve(a.simple_roots.size() + b.simple_roots.size());
  for (const auto& s : a.simple_roots) simples.push_back(pad_left(s));
  for (const auto& s : b.simple_roots) simples.push_back(pad_right(s));
  return make_root_system(dim, std::move(roots), std::move(simples),
                          a.label + " (+) " + b.label);
}

std::optional<RatVec> simple_coefficients(const RootSystem& rs, const RatVec& v) {
  if (rs.dual_basis.empty())
    throw std::logic_error("simple_coefficients: dual basis unavailable");
  RatVec coeff(rs.rank);
  for (int i = 0; i < rs.rank; ++i) coeff[i] = dot(rs.dual_basis[i], v);
  // Reconstruct to certify v ∈ span(Π).
  RatVec rec(rs.ambient_dim, Rational(0));
  for (int i = 0; i < rs.rank; ++i)
    for (int c = 0; c < rs.ambient_dim; ++c) rec[c] += coeff[i] * rs.simple_roots[i][c];
  for (int c = 0; c < rs.ambient_dim; ++c)
    if (rec[c] != v[c]) return std::nullopt;
  return coeff;
}

std::vector<Violation> validate(const RootSystem& rs) {
  std::vector<Violation> out;
  auto root_name = [&](int k) {
    return "root #" + std::to_string(k) + " " + coords_str(rs.positive_roots[k].coords);
  };

  for (int k = 0; k < rs.num_positive_roots(); ++k) {
    if (is_zero(rs.positive_roots[k].coords))
      out.push_back({"zero root", root_name(k)});
    if (rs.positive_roots[k].multiplicity <= 0)
      out.push_back({"non-positive multiplicity", root_name(k)});
  }
  for (size_t i = 0; i < rs.simple_roots.size(); ++i)
    if (is_zero(rs.simple_roots[i]))
      out.push_back({"zero root", "simple root #" + std::to_string(i)});

  if (static_cast<int>(rs.simple_roots.size()) != rs.rank)
    out.push_back({"rank mismatch",
                   "declared rank " + std::to_string(rs.rank) + " but " +
                       std::to_string(rs.simple_roots.size()) + " simple roots"});
  if (rs.dual_basis.empty()) {
    out.push_back({"rank mismatch", "simple roots are linearly dependent"});
    return out;  // span checks below need the dual basis
  } else {
    for (int i = 0; i < rs.rank; ++i)
      for (int j = 0; j < rs.rank; ++j)
        if (dot(rs.dual_basis[i], rs.simple_roots[j]) != Rational(i == j ? 1 : 0)) {
          out.push_back({"dual basis pairing broken",
                         "entry (" + std::to_string(i) + "," + std::to_string(j) + ")"});
        }
  }

  for (int k = 0; k < rs.num_positive_roots(); ++k) {
    const auto& coords = rs.positive_roots[k].coords;
    if (is_zero(coords)) continue;
    auto coeff = simple_coefficients(rs, coords);
    if (!coeff) {
      out.push_back({"root outside span of simple roots", root_name(k)});
      continue;
    }
    for (const auto& c : *coeff)
      if (!c.is_nonnegative_integer()) {
        out.push_back(
            {"root is not a nonnegative integer combination of simple roots",
             root_name(k)});
        break;
      }
  }

  for (int i = 0; i < rs.num_positive_roots(); ++i)
    for (int j = i + 1; j < rs.num_positive_roots(); ++j) {
      if (rs.positive_roots[i].coords == rs.positive_roots[j].coords)
        out.push_back({"duplicate root", root_name(i) + " and " + root_name(j)});
      if (rs.positive_roots[i].coords == negated(rs.positive_roots[j].coords))
        out.push_back({"negative pair in positive roots",
                       root_name(i) + " and " + root_name(j)});
    }
  return out;
}

}  // namespace rspace
