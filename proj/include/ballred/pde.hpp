#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ballred/constants.hpp"
#include "ballred/critical.hpp"
#include "ballred/field.hpp"
#include "ballred/profile.hpp"
#include "ballred/reduced.hpp"

namespace ballred {

/// Lattice over the meridian half-disk {s^2 + r^2 < 1, r >= 0}, s in [-1,1].
/// Evenness in s is built in: the solve runs on the quarter s >= 0 with a
/// reflection stencil at s = 0, an axis-regularized stencil at r = 0
/// (Laplacian v_ss + (N-1) v_rr there), and legs clipped to the circle for
/// nodes adjacent to the Dirichlet boundary.
struct AxiGrid {
  int n_s = 0, n_r = 0;
  double h_s = 0.0, h_r = 0.0;
  int ns_half = 0;                      // lattice lines with s >= 0
  std::vector<std::int32_t> unknown;    // quarter lattice -> unknown id or -1
  std::vector<int> ui, uj;              // quarter indices per unknown
  int n_unknowns = 0;

  std::int32_t id(int i, int j) const { return unknown[static_cast<std::size_t>(i) * n_r + j]; }
};

inline AxiGrid make_axi_grid(int n_s, int n_r) {
  if (n_s < 9 || n_r < 5) throw std::invalid_argument("make_axi_grid: grid too small");
  if (n_s % 2 == 0) throw std::invalid_argument("make_axi_grid: n_s must be odd");
  AxiGrid g;
  g.n_s = n_s;
  g.n_r = n_r;
  g.h_s = 2.0 / (n_s - 1);
  g.h_r = 1.0 / (n_r - 1);
  g.ns_half = (n_s + 1) / 2;
  g.unknown.assign(static_cast<std::size_t>(g.ns_half) * n_r, -1);
  for (int i = 0; i < g.ns_half; ++i) {
    const double s = i * g.h_s;
    for (int j = 0; j < n_r; ++j) {
      const double r = j * g.h_r;
      if (s * s + r * r < 1.0 - 1e-14) {
        g.unknown[static_cast<std::size_t>(i) * n_r + j] = g.n_unknowns++;
        g.ui.push_back(i);
        g.uj.push_back(j);
      }
    }
  }
  return g;
}

/// Newton failure carrying the residual history of the attempt.
struct NewtonFailure : std::runtime_error {
  std::vector<double> residual_history;
  NewtonFailure(const std::string& what, std::vector<double> hist)
      : std::runtime_error(what), residual_history(std::move(hist)) {}
};

/// One converged solve with the diagnostics extracted from it.
struct SolveResult {
  Field2D field;  // full reconstructed field, even in s
  double epsilon = 0.0;
  int newton_iterations = 0;
  double final_residual = 0.0;
  std::pair<double, double> peak_positive{0.0, 0.0};                   // (s, value)
  std::vector<std::pair<double, double>> peaks_negative;               // (+-s, value)
  std::vector<std::pair<double, double>> boundary_normal_derivative;   // (x1, d_nu v)
  double discrete_energy = 0.0;
  std::vector<double> residual_history;
  // fibered seed the branch was started from (zero when not branch-seeded)
  double seed_rho = 0.0, seed_lambda = 0.0, seed_mu = 0.0;
};

namespace detail {

// Assembled five-point operator for -Laplace on the quarter grid, plus the
// pointwise nonlinearity |v|^{2*-2-eps} v.
struct AxiSystem {
  AxiGrid g;
  int dim;
  Eigen::SparseMatrix<double> L;  // -Laplace_h

  AxiSystem(int n_s, int n_r, int dim_) : g(make_axi_grid(n_s, n_r)), dim(dim_) {
    build_operator();
  }

  explicit AxiSystem(AxiGrid grid, int dim_) : g(std::move(grid)), dim(dim_) { build_operator(); }

  void build_operator() {
    using T = Eigen::Triplet<double>;
    std::vector<T> trip;
    trip.reserve(static_cast<std::size_t>(g.n_unknowns) * 5);
    const double hs = g.h_s, hr = g.h_r;
    for (int u = 0; u < g.n_unknowns; ++u) {
      const int i = g.ui[u], j = g.uj[u];
      const double s = i * hs, r = j * hr;
      double diag = 0.0;

      auto add = [&](int iu, int ju, double coeff) {
        // contribution of "+coeff * v_neighbor" to Laplace; negated for -Laplace
        const std::int32_t v = g.id(iu, ju);
        if (v >= 0) trip.emplace_back(u, v, -coeff);
        // boundary neighbors carry value 0: nothing to add
      };

      // --- s-direction second derivative ---
      const bool e_inside = (s + hs) * (s + hs) + r * r < 1.0 - 1e-14;
      const double te = e_inside ? hs : std::sqrt(std::max(0.0, 1.0 - r * r)) - s;
      if (i == 0) {
        if (e_inside) {
          // reflection: v_W = v_E
          add(i + 1, j, 2.0 / (hs * hs));
          diag += -2.0 / (hs * hs);
        } else {
          // boundary on both mirrored sides at distance te
          diag += -2.0 / (te * te);
        }
      } else {
        const double hw = hs;
        add(i - 1, j, 2.0 / (hw * (hw + te)));
        if (e_inside) add(i + 1, j, 2.0 / (te * (hw + te)));
        diag += -2.0 / (hw * te);
      }

      // --- r-direction: second derivative plus first-derivative term ---
      const bool n_inside = s * s + (r + hr) * (r + hr) < 1.0 - 1e-14;
      const double tn = n_inside ? hr : std::sqrt(std::max(0.0, 1.0 - s * s)) - r;
      if (j == 0) {
        // axis: Laplacian contribution (N-1) v_rr with even reflection
        const double w = static_cast<double>(dim - 1);
        if (n_inside) {
          add(i, j + 1, w * 2.0 / (hr * hr));
          diag += -w * 2.0 / (hr * hr);
        } else {
          diag += -w * 2.0 / (tn * tn);
        }
      } else {
        const double hso = hr;  // south leg always full inside
        // v_rr
        add(i, j - 1, 2.0 / (hso * (hso + tn)));
        if (n_inside) add(i, j + 1, 2.0 / (tn * (hso + tn)));
        diag += -2.0 / (hso * tn);
        // ((N-2)/r) v_r with unequal legs
        const double w = static_cast<double>(dim - 2) / r;
        add(i, j - 1, -w * tn / (hso * (hso + tn)));
        if (n_inside) add(i, j + 1, w * hso / (tn * (hso + tn)));
        diag += w * (tn - hso) / (tn * hso);
      }

      trip.emplace_back(u, u, -diag);
    }
    L.resize(g.n_unknowns, g.n_unknowns);
    L.setFromTriplets(trip.begin(), trip.end());
    L.makeCompressed();
  }

  double exponent(double eps) const { return 2.0 * dim / (dim - 2.0) - 2.0 - eps; }

  Eigen::VectorXd nonlinearity(const Eigen::VectorXd& v, double eps) const {
    const double q = exponent(eps);
    Eigen::VectorXd out(v.size());
    for (Eigen::Index k = 0; k < v.size(); ++k)
      out(k) = std::pow(std::abs(v(k)), q) * v(k);
    return out;
  }

  Eigen::VectorXd nonlinearity_prime(const Eigen::VectorXd& v, double eps) const {
    const double q = exponent(eps);
    Eigen::VectorXd out(v.size());
    for (Eigen::Index k = 0; k < v.size(); ++k)
      out(k) = (q + 1.0) * std::pow(std::abs(v(k)), q);
    return out;
  }

  Eigen::VectorXd residual(const Eigen::VectorXd& v, double eps) const {
    return L * v - nonlinearity(v, eps);
  }

  Eigen::VectorXd restrict_field(const Field2D& f) const {
    if (f.ns() != g.n_s || f.nr() != g.n_r)
      throw std::invalid_argument("pde: field shape does not match the grid");
    Eigen::VectorXd v(g.n_unknowns);
    const int mid = g.ns_half - 1;  // full-grid index of s = 0
    for (int u = 0; u < g.n_unknowns; ++u) v(u) = f.at(mid + g.ui[u], g.uj[u]);
    return v;
  }

  Field2D extend(const Eigen::VectorXd& v) const {
    Field2D f = Field2D::zeros(symmetric_span(g.n_s), linspace(0.0, 1.0, g.n_r));
    const int mid = g.ns_half - 1;
    for (int u = 0; u < g.n_unknowns; ++u) {
      const int i = g.ui[u], j = g.uj[u];
      f.at(mid + i, j) = v(u);
      f.at(mid - i, j) = v(u);
      f.set_valid(mid + i, j, true);
      f.set_valid(mid - i, j, true);
    }
    return f;
  }
};

inline int axis_sign_changes(const Field2D& f) {
  int changes = 0;
  double prev = 0.0;
  bool have_prev = false;
  for (int i = 0; i < f.ns(); ++i) {
    if (!f.valid(i, 0)) continue;
    const double v = f.at(i, 0);
    if (v == 0.0) continue;
    if (have_prev && (v > 0.0) != (prev > 0.0)) ++changes;
    prev = v;
    have_prev = true;
  }
  return changes;
}

// Bilinear interpolation on the full even field; nodes outside the disk
// contribute their Dirichlet value 0.
inline double interp_field(const Field2D& f, double s, double r) {
  const int ns = f.ns(), nr = f.nr();
  const double hs = f.s_grid[1] - f.s_grid[0];
  const double hr = f.r_grid[1] - f.r_grid[0];
  double fs = (s - f.s_grid[0]) / hs;
  double fr = (r - f.r_grid[0]) / hr;
  int i = std::clamp(static_cast<int>(std::floor(fs)), 0, ns - 2);
  int j = std::clamp(static_cast<int>(std::floor(fr)), 0, nr - 2);
  const double ts = fs - i, tr = fr - j;
  auto val = [&](int a, int b) { return f.valid(a, b) ? f.at(a, b) : 0.0; };
  return (1 - ts) * (1 - tr) * val(i, j) + ts * (1 - tr) * val(i + 1, j) +
         (1 - ts) * tr * val(i, j + 1) + ts * tr * val(i + 1, j + 1);
}

// Discrete energy over the ball: |S^{N-2}| integral of
// 1/2 |grad v|^2 - |v|^{2*-eps}/(2*-eps) with radial weight r^{N-2}.
// Face-based gradient quadrature, node-based nonlinear part.
inline double discrete_energy(const Field2D& f, double eps, int dim) {
  const int ns = f.ns(), nr = f.nr();
  const double hs = f.s_grid[1] - f.s_grid[0];
  const double hr = f.r_grid[1] - f.r_grid[0];
  const double pex = 2.0 * dim / (dim - 2.0) - eps;
  auto val = [&](int i, int j) { return f.valid(i, j) ? f.at(i, j) : 0.0; };
  auto inside = [&](int i, int j) {
    const double s = f.s_grid[i], r = f.r_grid[j];
    return s * s + r * r < 1.0;
  };
  double grad = 0.0, bulk = 0.0;
  for (int i = 0; i < ns; ++i) {
    for (int j = 0; j < nr; ++j) {
      if (!inside(i, j)) continue;
      const double r = f.r_grid[j];
      const double v = val(i, j);
      // s-face to the east
      if (i + 1 < ns && (inside(i + 1, j) || v != 0.0)) {
        const double dv = val(i + 1, j) - v;
        grad += dv * dv / (hs * hs) * hs * hr * std::pow(r, dim - 2);
      }
      // r-face to the north
      if (j + 1 < nr && (inside(i, j + 1) || v != 0.0)) {
        const double dv = val(i, j + 1) - v;
        const double rf = r + 0.5 * hr;
        grad += dv * dv / (hr * hr) * hs * hr * std::pow(rf, dim - 2);
      }
      bulk += std::pow(std::abs(v), pex) * hs * hr * std::pow(r, dim - 2);
    }
  }
  return sphere_area(dim - 2) * (0.5 * grad - bulk / pex);
}

inline std::vector<std::pair<double, double>> sample_boundary_derivative(const Field2D& f,
                                                                         int samples = 81) {
  std::vector<std::pair<double, double>> out;
  out.reserve(samples);
  const double h = std::max(f.s_grid[1] - f.s_grid[0], f.r_grid[1] - f.r_grid[0]);
  const double d = 1.5 * h;
  for (int k = 0; k < samples; ++k) {
    const double x1 = -1.0 + 2.0 * k / (samples - 1);
    const double rr = std::sqrt(std::max(0.0, 1.0 - x1 * x1));
    const double u1 = interp_field(f, x1 * (1.0 - d), rr * (1.0 - d));
    const double u2 = interp_field(f, x1 * (1.0 - 2.0 * d), rr * (1.0 - 2.0 * d));
    out.emplace_back(x1, (-4.0 * u1 + u2) / (2.0 * d));
  }
  return out;
}

}  // namespace detail

/// Discrete residual -Laplace_h v - |v|^{2*-2-eps} v on the interior nodes
/// (zero elsewhere), with the same stencil the solver uses.
inline Field2D assemble_residual(const Field2D& v, double epsilon, int dim) {
  if (v.ns() < 9 || v.nr() < 5 || v.ns() % 2 == 0)
    throw std::invalid_argument("assemble_residual: bad field shape");
  detail::AxiSystem sys(v.ns(), v.nr(), dim);
  const Eigen::VectorXd vq = sys.restrict_field(v);
  const Eigen::VectorXd res = sys.residual(vq, epsilon);
  return sys.extend(res);
}

namespace detail {

// Damped Newton on the discrete system: backtracking line search (factor 1/2,
// max 8 backtracks) on the 2-norm of the residual. Around multi-bubble
// configurations the Jacobian carries near-singular soft modes (the dilation
// and translation directions of the bubbles); when the Newton step stalls on
// them the iteration falls back to Levenberg-Marquardt steps
// (J^T J + sigma I) with adaptive sigma, returning to pure Newton once the
// regularization becomes negligible. Convergence is gated on the max norm.
inline bool newton_core(AxiSystem& sys, Eigen::VectorXd& v, double epsilon, double tol,
                        int max_iter, std::vector<double>& history, int& iters_out) {
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  bool analyzed = false;
  double rn2 = sys.residual(v, epsilon).norm();
  double sigma = 0.0;
  history.push_back(sys.residual(v, epsilon).lpNorm<Eigen::Infinity>());
  for (int it = 0; it < max_iter; ++it) {
    const double rni = sys.residual(v, epsilon).lpNorm<Eigen::Infinity>();
    if (rni < tol) {
      iters_out = it;
      return true;
    }
    Eigen::SparseMatrix<double> J = sys.L;
    const Eigen::VectorXd gp = sys.nonlinearity_prime(v, epsilon);
    for (int u = 0; u < sys.g.n_unknowns; ++u) J.coeffRef(u, u) -= gp(u);
    const Eigen::VectorXd res = sys.residual(v, epsilon);
    bool accepted = false;
    if (sigma == 0.0) {
      if (!analyzed) {
        lu.analyzePattern(J);
        analyzed = true;
      }
      lu.factorize(J);
      if (lu.info() == Eigen::Success) {
        const Eigen::VectorXd d = lu.solve(-res);
        double tau = 1.0;
        for (int bt = 0; bt <= 8; ++bt) {
          const Eigen::VectorXd vt = v + tau * d;
          const double r2 = sys.residual(vt, epsilon).norm();
          if (r2 < rn2) {
            v = vt;
            rn2 = r2;
            accepted = true;
            break;
          }
          tau *= 0.5;
        }
      }
      if (!accepted) sigma = 1e-3 * rn2;
    }
    if (!accepted) {
      const Eigen::SparseMatrix<double> Jt = J.transpose();
      const Eigen::SparseMatrix<double> A = Jt * J;
      const Eigen::VectorXd g = Jt * res;
      for (int lift = 0; lift < 25 && !accepted; ++lift) {
        Eigen::SparseMatrix<double> As = A;
        for (int u = 0; u < sys.g.n_unknowns; ++u) As.coeffRef(u, u) += sigma;
        ldlt.compute(As);
        if (ldlt.info() == Eigen::Success) {
          const Eigen::VectorXd d = ldlt.solve(-g);
          const Eigen::VectorXd vt = v + d;
          const double r2 = sys.residual(vt, epsilon).norm();
          if (r2 < rn2) {
            v = vt;
            rn2 = r2;
            accepted = true;
            sigma *= 0.25;
            if (sigma < 1e-12 * rn2) sigma = 0.0;
            break;
          }
        }
        sigma *= 8.0;
      }
    }
    history.push_back(sys.residual(v, epsilon).lpNorm<Eigen::Infinity>());
    if (!accepted) {
      iters_out = it;
      return false;
    }
  }
  iters_out = max_iter;
  return sys.residual(v, epsilon).lpNorm<Eigen::Infinity>() < tol;
}

}  // namespace detail

/// Damped Newton iteration on the discrete system, from the given initial
/// field. When the initial guess carries the three-peak sign structure (at
/// least 2 sign changes along the s-axis), the converged solution must retain
/// it or the solve is rejected as having left the branch.
inline SolveResult newton_solve(const Field2D& initial, double epsilon, int dim, double tol,
                                int max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("newton_solve: tol must be positive");
  detail::AxiSystem sys(initial.ns(), initial.nr(), dim);
  Eigen::VectorXd v = sys.restrict_field(initial);
  const int seed_changes = detail::axis_sign_changes(initial);

  std::vector<double> history;
  int iters = 0;
  const bool converged = detail::newton_core(sys, v, epsilon, tol, max_iter, history, iters);
  const double resnorm = history.back();
  if (!converged) {
    if (iters >= max_iter)
      throw NewtonFailure("newton_solve: no convergence after max_iter", history);
    throw NewtonFailure("newton_solve: iteration stalled", history);
  }

  SolveResult out;
  out.field = sys.extend(v);
  out.epsilon = epsilon;
  out.newton_iterations = iters;
  out.final_residual = resnorm;
  out.residual_history = std::move(history);

  const int converged_changes = detail::axis_sign_changes(out.field);
  if (seed_changes >= 2 && converged_changes < 2)
    throw NewtonFailure("newton_solve: sign structure lost (left the branch)",
                        out.residual_history);

  // axis extrema: positive peak over the whole axis, negative peak on s >= 0
  double vmax = -std::numeric_limits<double>::infinity();
  double vmin = std::numeric_limits<double>::infinity();
  int imax = -1, imin = -1;
  for (int i = 0; i < out.field.ns(); ++i) {
    if (!out.field.valid(i, 0)) continue;
    const double val = out.field.at(i, 0);
    if (val > vmax) {
      vmax = val;
      imax = i;
    }
    if (i >= out.field.ns() / 2 && val < vmin) {
      vmin = val;
      imin = i;
    }
  }
  auto refine = [&](int i) {
    if (i <= 0 || i + 1 >= out.field.ns() || !out.field.valid(i - 1, 0) ||
        !out.field.valid(i + 1, 0))
      return out.field.s_grid[i];
    const double a = out.field.at(i - 1, 0), b = out.field.at(i, 0), c = out.field.at(i + 1, 0);
    const double denom = a - 2.0 * b + c;
    if (denom == 0.0) return out.field.s_grid[i];
    const double hs = out.field.s_grid[1] - out.field.s_grid[0];
    return out.field.s_grid[i] + 0.5 * hs * (a - c) / denom;
  };
  if (imax >= 0) out.peak_positive = {refine(imax), vmax};
  if (imin >= 0 && vmin < 0.0) {
    const double sneg = refine(imin);
    out.peaks_negative = {{sneg, vmin}, {-sneg, vmin}};
  }
  out.boundary_normal_derivative = detail::sample_boundary_derivative(out.field);
  out.discrete_energy = detail::discrete_energy(out.field, epsilon, dim);
  return out;
}

enum class Branch { rho1, rho2 };

/// Geometric epsilon ladder from eps_start down to eps_end; each converged
/// solution seeds the next rung.
///
/// The first rung is seeded with the three-bubble ansatz built at the
/// branch's critical radius using the PDE-matched constant (matched_c_n),
/// the scales at which the ansatz is an actual approximate solution. The
/// ansatz basin is limited (empirically the rho2 ansatz stops converging
/// directly above eps ~ 0.1 on desk grids): when the direct solve at
/// eps_start fails, the ladder bootstraps at a smaller epsilon and continues
/// upward along the branch to eps_start before descending.
///
/// The fibered scales stored in each SolveResult (and used by the
/// height-scaling diagnostic) come from the caller's cfg.
inline std::vector<SolveResult> continue_in_epsilon(double eps_start, double eps_end, int steps,
                                                    Branch which, int dim, const AxiGrid& grid,
                                                    const ReducedConfig& cfg, double tol = 1e-8,
                                                    int max_iter = 40) {
  if (!(eps_start > eps_end && eps_end > 0.0))
    throw std::invalid_argument("continue_in_epsilon: need eps_start > eps_end > 0");
  if (steps < 2) throw std::invalid_argument("continue_in_epsilon: need at least 2 steps");

  const auto rhos = find_critical_rhos(dim);
  const double rho_star = (which == Branch::rho1) ? rhos.first : rhos.second;
  const ReducedConfig cfg_seed(dim, matched_c_n(dim));
  const FiberedPoint fp_seed = fibered_point(rho_star, cfg_seed);
  const FiberedPoint fp_diag = fibered_point(rho_star, cfg);
  const ProfileSpec spec{rho_star, fp_seed.big_lambda, dim};

  auto try_solve = [&](const Field2D& s, double eps, SolveResult* out) {
    try {
      SolveResult r = newton_solve(s, eps, dim, tol, max_iter);
      if (out) *out = std::move(r);
      return true;
    } catch (const NewtonFailure&) {
      return false;
    }
  };

  // Rung 0: direct ansatz, then bootstrap-and-climb if the basin is missed.
  SolveResult first;
  bool have_first =
      try_solve(ansatz_field(spec, eps_start, cfg_seed, grid.n_s, grid.n_r), eps_start, &first);
  if (!have_first) {
    for (double eps_b : {0.1, 0.08, 0.06, 0.05, 0.04, 0.03}) {
      if (eps_b >= eps_start) continue;
      SolveResult low;
      if (!try_solve(ansatz_field(spec, eps_b, cfg_seed, grid.n_s, grid.n_r), eps_b, &low))
        continue;
      bool climbed = true;
      double eps = eps_b;
      SolveResult cur = std::move(low);
      while (eps < eps_start && climbed) {
        eps = std::min(eps * 1.12, eps_start);
        climbed = try_solve(cur.field, eps, &cur);
      }
      if (climbed) {
        first = std::move(cur);
        have_first = true;
        break;
      }
    }
  }
  if (!have_first)
    throw NewtonFailure("continue_in_epsilon: no bootstrap seed reached eps_start (branch " +
                            std::string(which == Branch::rho1 ? "rho1" : "rho2") + ")",
                        {});

  std::vector<SolveResult> ladder;
  ladder.reserve(steps);
  Field2D seed = first.field;
  for (int k = 0; k < steps; ++k) {
    const double eps =
        eps_start * std::pow(eps_end / eps_start, static_cast<double>(k) / (steps - 1));
    SolveResult res;
    if (k == 0) {
      res = std::move(first);
    } else {
      try {
        res = newton_solve(seed, eps, dim, tol, max_iter);
      } catch (NewtonFailure& e) {
        throw NewtonFailure("continue_in_epsilon: rung " + std::to_string(k) + " (eps=" +
                                std::to_string(eps) + "): " + e.what(),
                            e.residual_history);
      }
    }
    res.seed_rho = rho_star;
    res.seed_lambda = fp_diag.lambda;
    res.seed_mu = fp_diag.mu;
    seed = res.field;
    ladder.push_back(std::move(res));
  }
  return ladder;
}

/// Diagnostics extracted from a converged branch solve.
struct Diagnostics {
  double rho_hat = 0.0;        // axis location of the negative extremum
  double height_scaling = 0.0; // u(0) (lambda^2 eps)^{(N-2)/2} / alpha_N
  std::string sign_pattern;    // boundary normal-derivative signs over x1 in [-1,1]
  double energy = 0.0;
};

inline Diagnostics extract_diagnostics(const SolveResult& result, int dim) {
  Diagnostics d;
  if (result.peaks_negative.empty())
    throw std::runtime_error("extract_diagnostics: no negative extremum on the axis");
  d.rho_hat = std::abs(result.peaks_negative.front().first);
  if (result.seed_lambda > 0.0) {
    const double delta = result.seed_lambda * result.seed_lambda * result.epsilon;
    d.height_scaling =
        result.peak_positive.second * std::pow(delta, 0.5 * (dim - 2)) / bubble_norm(dim);
  }
  double amax = 0.0;
  for (const auto& [x1, val] : result.boundary_normal_derivative)
    amax = std::max(amax, std::abs(val));
  for (const auto& [x1, val] : result.boundary_normal_derivative) {
    if (val > 1e-3 * amax)
      d.sign_pattern += '+';
    else if (val < -1e-3 * amax)
      d.sign_pattern += '-';
    else
      d.sign_pattern += '0';
  }
  d.energy = result.discrete_energy;
  return d;
}

}  // namespace ballred
