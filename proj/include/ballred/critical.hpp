#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ballred/constants.hpp"
#include "ballred/reduced.hpp"
#include "ballred/roots.hpp"

namespace ballred {

enum class CriticalKind { saddle, minimum };

/// One located critical point of the reduced energy with its Morse data.
/// chi_residual is |chi(rho)| normalized by the magnitude of chi's defining
/// terms (alpha' - 2 Lambda beta'), the scale at which the closed form can be
/// evaluated at all; for moderate dimensions this coincides with the absolute
/// residual. The nondegeneracy margin is the smallest absolute eigenvalue of
/// the diagonally rescaled Hessian (congruent, hence the same inertia), which
/// stays meaningful when lambda is many orders below the other coordinates.
struct CriticalPointRecord {
  CriticalKind which;
  double rho = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  double chi_residual = 0.0;
  std::array<double, 3> hessian_eigenvalues{};  // ascending, unscaled Hessian
  int morse_index = 0;
  int degree = 0;
  double nondegeneracy_margin = 0.0;  // min |eigenvalue| of the rescaled Hessian
};

/// rho0 plus the sign brackets used to isolate the two critical radii.
struct Brackets {
  double rho0 = 0.0;
  std::pair<double, double> rho1_bracket;
  std::pair<double, double> rho2_bracket;
};

/// Zero of alpha in (0, 1/2): alpha < 0 below it, > 0 above. Bisection on the
/// closed form; alpha evaluates to -inf near 0 for large dimensions, which
/// bisection handles through the sign alone.
inline double find_rho0(int dim, double tol = 1e-13) {
  if (dim < 3) throw std::invalid_argument("find_rho0: dimension must be >= 3");
  if (!(tol > 0.0)) throw std::invalid_argument("find_rho0: tol must be positive");
  const double hi = 0.5;
  if (!(alpha(hi, dim) > 0.0))
    throw std::runtime_error("find_rho0: alpha(1/2) <= 0 (formula inconsistency)");
  double lo = 1e-3;
  while (!(alpha(lo, dim) < 0.0)) lo *= 0.5;  // alpha -> -inf at 0+
  auto a = [dim](double r) { return alpha(r, dim); };
  double r0 = bisect(a, lo, hi, tol);
  r0 = newton_polish(a, [dim](double r) { return alpha_prime(r, dim); }, r0, lo, hi);
  return r0;
}

/// Uniform chi mesh on (rho0 + guard, 1 - guard); used for bracket
/// diagnostics and the landscape export.
inline std::vector<std::pair<double, double>> scan_chi(int dim, int mesh) {
  if (mesh < 100) throw std::invalid_argument("scan_chi: mesh must be >= 100");
  const double rho0 = find_rho0(dim);
  const double lo = rho0 + kGuardOffset, hi = 1.0 - kGuardOffset;
  std::vector<std::pair<double, double>> out;
  out.reserve(mesh);
  for (int k = 0; k < mesh; ++k) {
    const double r = lo + (hi - lo) * k / (mesh - 1);
    out.emplace_back(r, chi(r, dim));
  }
  return out;
}

/// Number of sign changes of chi on the scan mesh. Two is the expected count;
/// the scanner reports the empirical number rather than assuming it.
inline int count_chi_sign_changes(int dim, int mesh = 10000) {
  const auto scan = scan_chi(dim, mesh);
  int changes = 0;
  for (std::size_t k = 1; k < scan.size(); ++k)
    if ((scan[k].second > 0.0) != (scan[k - 1].second > 0.0)) ++changes;
  return changes;
}

/// Sign brackets for the two critical radii:
///   rho1 in [rho0 + guard, 1/2] where chi goes + -> -,
///   rho2 in [rho_bar, 1 - guard] where chi goes - -> +.
inline Brackets find_brackets(int dim) {
  Brackets b;
  b.rho0 = find_rho0(dim);
  const double left = b.rho0 + kGuardOffset;
  double right = 1.0 - kGuardOffset;
  // for very large dimensions the closed forms overflow inside the guard
  // band; walk the right endpoint inward to the representable range
  while (right > kRhoBar && !std::isfinite(chi(right, dim))) right = 1.0 - 2.0 * (1.0 - right);
  const double chi_left = chi(left, dim);
  const double chi_half = chi(0.5, dim);
  const double chi_bar = chi(kRhoBar, dim);
  const double chi_right = chi(right, dim);
  if (!(chi_left > 0.0))
    throw std::runtime_error("find_brackets: chi not positive just above rho0");
  if (!(chi_half < 0.0)) throw std::runtime_error("find_brackets: chi(1/2) not negative");
  if (!(chi_bar < 0.0)) throw std::runtime_error("find_brackets: chi(rho_bar) not negative");
  if (!(chi_right > 0.0)) throw std::runtime_error("find_brackets: chi not positive near 1");
  b.rho1_bracket = {left, 0.5};
  b.rho2_bracket = {kRhoBar, right};
  return b;
}

/// The two zeros of chi: a + -> - crossing below 1/2 (local maximum of f) and
/// a - -> + crossing above rho_bar (local minimum of f). Bisection inside the
/// proved sign brackets, then a Newton polish with the analytic chi'.
inline std::pair<double, double> find_critical_rhos(int dim, double tol = 1e-13) {
  const Brackets b = find_brackets(dim);
  auto c = [dim](double r) { return chi(r, dim); };
  auto cp = [dim](double r) { return chi_prime(r, dim); };
  double r1 = bisect(c, b.rho1_bracket.first, b.rho1_bracket.second, tol);
  r1 = newton_polish(c, cp, r1, b.rho1_bracket.first, b.rho1_bracket.second);
  double r2 = bisect(c, b.rho2_bracket.first, b.rho2_bracket.second, tol);
  r2 = newton_polish(c, cp, r2, b.rho2_bracket.first, b.rho2_bracket.second);
  return {r1, r2};
}

/// Normalization for chi residuals: the magnitude of chi's two defining
/// terms, which is the evaluation scale of the closed form.
inline double chi_scale(double rho, int dim) {
  return std::max(1.0, alpha_prime(rho, dim) -
                           2.0 * capital_lambda(rho, dim) * beta_prime(rho, dim));
}

/// Full record at a chi-zero: fibered scales, 3x3 Hessian eigenvalues, Morse
/// index, degree and nondegeneracy margin.
inline CriticalPointRecord classify(double rho_star, int dim, const ReducedConfig& cfg) {
  CriticalPointRecord rec;
  rec.rho = rho_star;
  rec.chi_residual = std::abs(chi(rho_star, dim)) / chi_scale(rho_star, dim);
  const FiberedPoint fp = fibered_point(rho_star, cfg);
  rec.lambda = fp.lambda;
  rec.mu = fp.mu;

  const Eigen::Matrix3d h = hess_f(ReducedPoint{fp.lambda, fp.mu, rho_star}, cfg);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("classify: eigensolver failure");
  const Eigen::Vector3d ev = es.eigenvalues();
  for (int i = 0; i < 3; ++i) rec.hessian_eigenvalues[i] = ev(i);

  // Inertia is invariant under the congruence D H D (D positive diagonal).
  // The rescaled matrix balances the coordinate scales: its inertia stays
  // resolvable when the raw entries span many orders of magnitude (lambda
  // shrinks super-exponentially in the dimension at rho1), and its smallest
  // absolute eigenvalue is the meaningful distance from degeneracy.
  const Eigen::Vector3d d(fp.lambda, fp.mu, 1.0);
  const Eigen::Matrix3d hs = d.asDiagonal() * h * d.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> ess(hs);
  if (ess.info() != Eigen::Success) throw std::runtime_error("classify: eigensolver failure");
  double max_abs = 0.0, min_abs = std::numeric_limits<double>::infinity();
  int negatives = 0;
  for (int i = 0; i < 3; ++i) {
    max_abs = std::max(max_abs, std::abs(ess.eigenvalues()(i)));
    min_abs = std::min(min_abs, std::abs(ess.eigenvalues()(i)));
    if (ess.eigenvalues()(i) < 0.0) ++negatives;
  }
  if (min_abs < 1e-8 * max_abs)
    throw std::runtime_error("classify: numerically degenerate critical point");
  rec.morse_index = negatives;
  rec.degree = (negatives % 2 == 0) ? 1 : -1;
  rec.nondegeneracy_margin = min_abs;
  if (negatives == 0)
    rec.which = CriticalKind::minimum;
  else if (negatives == 1)
    rec.which = CriticalKind::saddle;
  else
    throw std::runtime_error("classify: unexpected Morse index");
  return rec;
}

}  // namespace ballred
