#include "rspace/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

namespace rspace {

namespace {

constexpr double kFdStep = 1e-6;
constexpr int kMaxHalvings = 30;

struct CellFrame {
  std::vector<int> delta;      // sorted
  std::vector<int> vanishing;  // exact vanishing set of the open cell
  Eigen::MatrixXd B;           // ambient x k, dual-basis columns
  Eigen::MatrixXd Q;           // ambient x k, orthonormal span of the cell
  int k = 0;
};

CellFrame make_frame(const RootSystem& rs, const std::vector<int>& delta_in) {
  if (delta_in.empty()) throw std::invalid_argument("cell solve: empty cell");
  if (rs.dual_mat.size() == 0)
    throw std::invalid_argument("cell solve: root system has no dual basis");
  CellFrame f;
  f.delta = delta_in;
  std::sort(f.delta.begin(), f.delta.end());
  for (size_t i = 0; i < f.delta.size(); ++i) {
    if (f.delta[i] < 0 || f.delta[i] >= rs.rank)
      throw std::invalid_argument("cell solve: simple-root index out of range");
    if (i > 0 && f.delta[i] == f.delta[i - 1])
      throw std::invalid_argument("cell solve: duplicate index in cell");
  }
  f.k = static_cast<int>(f.delta.size());
  f.vanishing = cell_vanishing(rs, f.delta);
  f.B.resize(rs.ambient_dim, f.k);
  for (int i = 0; i < f.k; ++i) f.B.col(i) = rs.dual_mat.col(f.delta[i]);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(f.B);
  f.Q = qr.householderQ() * Eigen::MatrixXd::Identity(rs.ambient_dim, f.k);
  return f;
}

CellPoint frame_point(const CellFrame& f, Eigen::VectorXd H) {
  return {std::move(H), f.delta, f.vanishing};
}

bool inside_open_cone(const RootSystem& rs, const CellFrame& f,
                      const Eigen::VectorXd& H, double margin) {
  for (int i : f.delta)
    if (!(rs.simple_mat.col(i).dot(H) > margin)) return false;
  return true;
}

// Orthonormal basis of the hyperplane y⊥ in R^k.
Eigen::MatrixXd tangent_basis(const Eigen::VectorXd& y) {
  const int k = static_cast<int>(y.size());
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
  Eigen::MatrixXd full = qr.householderQ() * Eigen::MatrixXd::Identity(k, k);
  return full.rightCols(k - 1);
}

unsigned long env_seed() {
  const char* e = std::getenv("RSB_SEED");
  if (!e) return 0;
  return std::strtoul(e, nullptr, 10);
}

double frac(double x) { return x - std::floor(x); }

// Deterministic low-discrepancy points on the open coordinate simplex of
// dimension k-1 (Kronecker sequence, sorted-gap map, pulled off the walls).
std::vector<Eigen::VectorXd> simplex_seeds(int k, int count) {
  const int m = k - 1;
  double phi = 2.0;  // root of x^{m+1} = x + 1
  for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / (m + 1));
  std::vector<double> alpha(m);
  for (int j = 0; j < m; ++j) alpha[j] = frac(std::pow(1.0 / phi, j + 1));
  const double scramble = frac(0.5 + 0.7548776662466927 * env_seed());

  std::vector<Eigen::VectorXd> seeds;
  seeds.reserve(count + 1);
  seeds.push_back(Eigen::VectorXd::Constant(k, 1.0 / k));  // barycenter
  const double eps = 5e-3;
  for (int n = 0; n < count; ++n) {
    std::vector<double> u(m);
    for (int j = 0; j < m; ++j) u[j] = frac(scramble + (n + 1) * alpha[j]);
    Eigen::VectorXd x(k);
    if (m == 1) {
      x << 1.0 - u[0], u[0];
    } else {
      std::sort(u.begin(), u.end());
      double prev = 0.0;
      for (int j = 0; j < m; ++j) {
        x[j] = u[j] - prev;
        prev = u[j];
      }
      x[m] = 1.0 - prev;
    }
    x = (x.array() + eps) / (1.0 + k * eps);
    seeds.push_back(std::move(x));
  }
  return seeds;
}

struct Eval {
  Eigen::VectorXd H;
  Eigen::VectorXd value;  // residual vector being zeroed
  double norm = 0.0;
};

// Evaluates the bitension residual at normalize(Q y); nullopt when the point
// leaves the open cell or hits the tolerance dead band.
std::optional<Eval> eval_bitension(const RootSystem& rs, const CellFrame& f,
                                   const Eigen::VectorXd& y) {
  Eval ev;
  ev.H = (f.Q * y).normalized();
  if (!inside_open_cone(rs, f, ev.H, 0.0)) return std::nullopt;
  try {
    ev.value = bitension(rs, frame_point(f, ev.H));
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
  ev.norm = ev.value.norm();
  return ev;
}

struct SeedOutcome {
  enum Kind { converged, escaped, stalled } kind = stalled;
  Eigen::VectorXd y;
  double res = std::numeric_limits<double>::infinity();
  int iters = 0;
};

SeedOutcome newton_bitension(const RootSystem& rs, const CellFrame& f,
                             Eigen::VectorXd y, const SolveOptions& opts) {
  SeedOutcome out;
  y.normalize();
  auto cur = eval_bitension(rs, f, y);
  if (!cur) {
    out.kind = SeedOutcome::escaped;
    return out;
  }
  int polish_left = 12;
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    out.iters = iter;
    if (cur->norm < opts.tol) {
      // Keep polishing while it still pays; degenerate roots stall here.
      if (cur->norm < opts.tol * 1e-3 || polish_left-- <= 0) break;
    }
    const Eigen::MatrixXd N = tangent_basis(y);
    const Eigen::VectorXd phi = N.transpose() * (f.Q.transpose() * cur->value);
    Eigen::MatrixXd jac(f.k - 1, f.k - 1);
    bool fd_ok = true;
    for (int j = 0; j < f.k - 1 && fd_ok; ++j) {
      const Eigen::VectorXd yp = (y + kFdStep * N.col(j)).normalized();
      const Eigen::VectorXd ym = (y - kFdStep * N.col(j)).normalized();
      auto ep = eval_bitension(rs, f, yp);
      auto em = eval_bitension(rs, f, ym);
      if (!ep || !em) {
        fd_ok = false;
        break;
      }
      jac.col(j) =
          N.transpose() * (f.Q.transpose() * (ep->value - em->value)) / (2.0 * kFdStep);
    }
    if (!fd_ok) break;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
    if (!lu.isInvertible()) break;
    const Eigen::VectorXd dz = lu.solve(-phi);

    double t = 1.0;
    bool accepted = false;
    bool any_inside = false;
    for (int h = 0; h < kMaxHalvings; ++h, t *= 0.5) {
      const Eigen::VectorXd ycand = (y + t * (N * dz)).normalized();
      auto ev = eval_bitension(rs, f, ycand);
      if (!ev) continue;
      any_inside = true;
      if (ev->norm < cur->norm) {
        y = ycand;
        cur = std::move(ev);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (!any_inside) out.kind = SeedOutcome::escaped;
      break;
    }
  }
  out.y = y;
  out.res = cur->norm;
  if (out.kind != SeedOutcome::escaped && cur->norm < opts.tol)
    out.kind = SeedOutcome::converged;
  return out;
}

void sort_points(std::vector<SolvePoint>& pts) {
  std::sort(pts.begin(), pts.end(), [](const SolvePoint& a, const SolvePoint& b) {
    if (a.residual_norm != b.residual_norm) return a.residual_norm < b.residual_norm;
    for (Eigen::Index i = 0; i < a.point.H.size(); ++i)
      if (a.point.H[i] != b.point.H[i]) return a.point.H[i] < b.point.H[i];
    return false;
  });
}

// Keeps the lower-residual representative of each geodesic cluster.
void dedupe_points(std::vector<SolvePoint>& pts, double distance) {
  sort_points(pts);
  std::vector<SolvePoint> kept;
  for (auto& p : pts) {
    bool dup = false;
    for (const auto& q : kept)
      if (geodesic_distance(p.point.H, q.point.H) <= distance) {
        dup = true;
        break;
      }
    if (!dup) kept.push_back(std::move(p));
  }
  pts = std::move(kept);
}

}  // namespace

const char* solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::no_solution_found: return "no_solution_found";
    case SolveStatus::boundary_escape: return "boundary_escape";
  }
  return "?";
}

SolveResult solve_minimal(const RootSystem& rs, const std::vector<int>& delta,
                          const SolveOptions& opts) {
  const CellFrame f = make_frame(rs, delta);
  const auto tol_band = chamber_tolerances(rs);
  SolveResult result;
  result.seeds_tried = 1;

  Eigen::VectorXd x = opts.start.value_or(Eigen::VectorXd::Ones(f.k));
  if (x.size() != f.k || (x.array() <= 0.0).any())
    throw std::invalid_argument("solve_minimal: start coordinates must be positive, one per cell index");
  Eigen::VectorXd y = (f.Q.transpose() * (f.B * x).normalized()).normalized();

  const double stop_tol = std::min(opts.tol, 1e-13);
  int iter = 0;
  double res_norm = std::numeric_limits<double>::infinity();

  // f-value and full tangential gradient; nullopt outside the cell.
  auto eval = [&](const Eigen::VectorXd& ycur)
      -> std::optional<std::tuple<Eigen::VectorXd, double, Eigen::VectorXd>> {
    Eigen::VectorXd H = (f.Q * ycur).normalized();
    if (!inside_open_cone(rs, f, H, 0.0)) return std::nullopt;
    try {
      double value = potential_value(rs, f.vanishing, H);
      Eigen::VectorXd g = tension_tangent(rs, frame_point(f, H));
      return std::make_tuple(std::move(H), value, std::move(g));
    } catch (const std::domain_error&) {
      return std::nullopt;
    }
  };

  auto cur = eval(y);
  if (cur) {
    res_norm = std::get<2>(*cur).norm();
    for (; iter < opts.max_iterations && f.k > 1; ++iter) {
      if (res_norm < stop_tol) break;
      const Eigen::VectorXd& H = std::get<0>(*cur);
      const int dim = orbit_dimension(rs, frame_point(f, H));
      const Eigen::MatrixXd W =
          f.Q.transpose() * potential_ambient_hessian(rs, f.vanishing, H) * f.Q;
      const Eigen::VectorXd gh = f.Q.transpose() * std::get<2>(*cur);
      const Eigen::MatrixXd P = Eigen::MatrixXd::Identity(f.k, f.k) - y * y.transpose();
      const Eigen::MatrixXd hess = P * W * P + dim * P + y * y.transpose();
      const Eigen::VectorXd d = hess.ldlt().solve(-(P * gh));
      const double dirder = gh.dot(d);

      double t = 1.0;
      bool accepted = false;
      for (int h = 0; h < kMaxHalvings; ++h, t *= 0.5) {
        const Eigen::VectorXd ycand = (y + t * d).normalized();
        auto ev = eval(ycand);
        if (!ev) continue;
        const double f1 = std::get<1>(*ev);
        const double g1 = std::get<2>(*ev).norm();
        if (f1 <= std::get<1>(*cur) + 1e-4 * t * dirder || g1 < res_norm) {
          y = ycand;
          cur = std::move(ev);
          res_norm = g1;
          accepted = true;
          break;
        }
      }
      if (!accepted) break;
    }
  }

  if (cur) {
    const Eigen::VectorXd& H = std::get<0>(*cur);
    CellPoint point = frame_point(f, H);
    const bool interior = inside_open_cone(rs, f, H, tol_band.active);
    if (interior) {
      OrbitReport rep = orbit_report(rs, point);
      if (rep.tension_norm < opts.tol) {
        result.points.push_back({std::move(point), std::move(rep), res_norm, iter});
        result.status = SolveStatus::converged;
        return result;
      }
    }
  }
  result.status = SolveStatus::no_solution_found;
  return result;
}

SolveResult solve_biharmonic(const RootSystem& rs, const std::vector<int>& delta,
                             const SolveOptions& opts) {
  const CellFrame f = make_frame(rs, delta);
  const auto tol_band = chamber_tolerances(rs);
  SolveResult result;

  if (f.k == 1) {
    // The cell is a single point; evaluate it.
    result.seeds_tried = 1;
    CellPoint point = frame_point(f, f.B.col(0).normalized());
    OrbitReport rep = orbit_report(rs, point);
    if (rep.bitension_norm < opts.tol) {
      result.points.push_back({std::move(point), std::move(rep), rep.bitension_norm, 0});
      result.status = SolveStatus::converged;
    }
    return result;
  }

  // The minimal orbit is always biharmonic; carry the polished point so the
  // multiplicity-degenerate root is reported at full accuracy.
  std::optional<SolvePoint> minimal_pt;
  {
    SolveOptions mopts;
    mopts.tol = opts.tol;
    mopts.max_iterations = opts.max_iterations;
    SolveResult mres = solve_minimal(rs, delta, mopts);
    if (mres.status == SolveStatus::converged) {
      SolvePoint sp = std::move(mres.points.front());
      if (sp.report.bitension_norm < opts.tol) {
        sp.residual_norm = sp.report.bitension_norm;
        minimal_pt = std::move(sp);
      }
    }
  }
  if (minimal_pt) result.points.push_back(*minimal_pt);

  const int nseeds = opts.seeds > 0 ? opts.seeds : 32 * (f.k - 1);
  for (const auto& x : simplex_seeds(f.k, nseeds)) {
    ++result.seeds_tried;
    Eigen::VectorXd y = f.Q.transpose() * (f.B * x).normalized();
    SeedOutcome oc = newton_bitension(rs, f, y, opts);
    if (oc.kind == SeedOutcome::escaped) {
      ++result.seeds_escaped;
      continue;
    }
    if (oc.kind != SeedOutcome::converged) continue;
    Eigen::VectorXd H = (f.Q * oc.y).normalized();
    if (!inside_open_cone(rs, f, H, tol_band.active)) {
      ++result.seeds_escaped;
      continue;
    }
    if (minimal_pt &&
        geodesic_distance(H, minimal_pt->point.H) < opts.minimal_merge_radius)
      continue;  // identified with the (already stored) minimal root
    CellPoint point = frame_point(f, H);
    OrbitReport rep = orbit_report(rs, point);
    result.points.push_back({std::move(point), std::move(rep), oc.res, oc.iters});
  }

  dedupe_points(result.points, opts.dedupe_distance);
  if (!result.points.empty())
    result.status = SolveStatus::converged;
  else if (result.seeds_tried > 0 && result.seeds_escaped == result.seeds_tried)
    result.status = SolveStatus::boundary_escape;
  else
    result.status = SolveStatus::no_solution_found;
  return result;
}

std::vector<CellPoint> grid_oracle(const RootSystem& rs,
                                   const std::vector<int>& delta, int resolution,
                                   double report_threshold) {
  const CellFrame f = make_frame(rs, delta);
  if (f.k > 3)
    throw std::invalid_argument(
        "grid_oracle: cell dimension too large for exhaustive search (|Δ| <= 3)");
  if (resolution < 4)
    throw std::invalid_argument("grid_oracle: resolution must be at least 4");

  constexpr double kInf = std::numeric_limits<double>::infinity();
  auto residual_at = [&](const Eigen::VectorXd& x) -> double {
    Eigen::VectorXd H = (f.B * x).normalized();
    auto ev = eval_bitension(rs, f, f.Q.transpose() * H);
    return ev ? ev->norm : kInf;
  };
  auto point_at = [&](const Eigen::VectorXd& x) {
    return frame_point(f, (f.B * x).normalized());
  };

  std::vector<CellPoint> found;
  auto push_if_root = [&](const Eigen::VectorXd& x) {
    if (residual_at(x) >= report_threshold) return;
    CellPoint p = point_at(x);
    for (const auto& q : found)
      if (geodesic_distance(p.H, q.H) <= 1e-6) return;
    found.push_back(std::move(p));
  };

  if (f.k == 1) {
    push_if_root(Eigen::VectorXd::Ones(1));
    return found;
  }

  if (f.k == 2) {
    auto coords = [](double t) {
      Eigen::VectorXd x(2);
      x << 1.0 - t, t;
      return x;
    };
    const int n = resolution;
    std::vector<double> r(n + 1, kInf);
    for (int j = 1; j < n; ++j) r[j] = residual_at(coords(static_cast<double>(j) / n));
    for (int j = 1; j < n; ++j) {
      if (!(r[j] <= r[j - 1] && r[j] <= r[j + 1]) || r[j] == kInf) continue;
      double a = std::max(1e-12, (j - 1.0) / n);
      double b = std::min(1.0 - 1e-12, (j + 1.0) / n);
      // dig past the 1e-8 bracket: a simple root needs the residual at the
      // refined point to sit well below the reporting threshold
      while (b - a > 1e-12) {
        const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
        if (residual_at(coords(m1)) < residual_at(coords(m2)))
          b = m2;
        else
          a = m1;
      }
      push_if_root(coords(0.5 * (a + b)));
    }
    return found;
  }

  // k == 3: barycentric grid, 6-neighbor minima, cyclic trisection.
  const int n = resolution;
  auto coords3 = [](double u, double v) {
    Eigen::VectorXd x(3);
    x << u, v, 1.0 - u - v;
    return x;
  };
  std::vector<std::vector<double>> r(n + 1, std::vector<double>(n + 1, kInf));
  for (int i = 1; i < n; ++i)
    for (int j = 1; j + i < n; ++j)
      r[i][j] = residual_at(coords3(static_cast<double>(i) / n, static_cast<double>(j) / n));
  const int di[] = {1, -1, 0, 0, 1, -1};
  const int dj[] = {0, 0, 1, -1, -1, 1};
  for (int i = 1; i < n; ++i)
    for (int j = 1; j + i < n; ++j) {
      if (r[i][j] == kInf) continue;
      bool is_min = true;
      for (int t = 0; t < 6 && is_min; ++t) {
        const int ii = i + di[t], jj = j + dj[t];
        if (ii < 1 || jj < 1 || ii + jj >= n) continue;
        if (r[ii][jj] < r[i][j]) is_min = false;
      }
      if (!is_min) continue;
      double u = static_cast<double>(i) / n, v = static_cast<double>(j) / n;
      double w = 2.0 / n;
      for (int sweep = 0; sweep < 48 && w > 1e-11; ++sweep) {
        for (int axis = 0; axis < 2; ++axis) {
          double& c = axis == 0 ? u : v;
          const double other = axis == 0 ? v : u;
          double a = std::max(1e-12, c - w);
          double b = std::min(1.0 - other - 1e-12, c + w);
          while (b - a > 1e-11) {
            const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
            const double f1 = axis == 0 ? residual_at(coords3(m1, other))
                                        : residual_at(coords3(other, m1));
            const double f2 = axis == 0 ? residual_at(coords3(m2, other))
                                        : residual_at(coords3(other, m2));
            if (f1 < f2)
              b = m2;
            else
              a = m1;
          }
          c = 0.5 * (a + b);
        }
        w *= 0.25;
      }
      push_if_root(coords3(u, v));
    }
  return found;
}

std::vector<CellResult> classify_cellwise(const RootSystem& rs, double tol,
                                          int seeds, int parallel) {
  const auto all_cells = cells(rs);
  std::vector<CellResult> results(all_cells.size());

  auto run_cell = [&](size_t ci) {
    const auto& delta = all_cells[ci];
    CellResult cr;
    cr.delta = delta;
    if (delta.size() == 1) {
      const CellFrame f = make_frame(rs, delta);
      CellPoint point = frame_point(f, f.B.col(0).normalized());
      OrbitReport rep = orbit_report(rs, point);
      cr.minimal_status = rep.tension_norm < tol ? SolveStatus::converged
                                                 : SolveStatus::no_solution_found;
      cr.biharmonic_status = rep.bitension_norm < tol
                                 ? SolveStatus::converged
                                 : SolveStatus::no_solution_found;
      const double res = rep.bitension_norm;
      cr.points.push_back({std::move(point), std::move(rep), res, 0});
    } else {
      SolveOptions mopts;
      mopts.tol = tol;
      SolveResult mres = solve_minimal(rs, delta, mopts);
      SolveOptions bopts;
      bopts.tol = tol;
      bopts.seeds = seeds;
      SolveResult bres = solve_biharmonic(rs, delta, bopts);
      cr.minimal_status = mres.status;
      cr.biharmonic_status = bres.status;
      cr.seeds_tried = bres.seeds_tried;
      cr.seeds_escaped = bres.seeds_escaped;
      cr.points = std::move(bres.points);
      for (auto& sp : mres.points) {
        sp.residual_norm = sp.report.bitension_norm;
        cr.points.push_back(std::move(sp));
      }
      dedupe_points(cr.points, 1e-6);
    }
    results[ci] = std::move(cr);
  };

  unsigned hw = std::thread::hardware_concurrency();
  int workers = parallel > 0 ? parallel : static_cast<int>(hw ? hw : 1);
  workers = std::min<int>(workers, static_cast<int>(all_cells.size()));
  if (workers <= 1) {
    for (size_t ci = 0; ci < all_cells.size(); ++ci) run_cell(ci);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (size_t ci = next.fetch_add(1); ci < all_cells.size();
             ci = next.fetch_add(1))
          run_cell(ci);
      });
    for (auto& th : pool) th.join();
  }
  return results;
}

}  // namespace rspace
