#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ballred/constants.hpp"
#include "ballred/field.hpp"
#include "ballred/geometry.hpp"
#include "ballred/reduced.hpp"
#include "ballred/roots.hpp"

namespace ballred {

/// Parameters of the limiting three-peak profile at a critical radius.
struct ProfileSpec {
  double rho;
  double big_lambda;
  int dim;
};

inline ProfileSpec make_profile_spec(double rho, int dim) {
  return ProfileSpec{rho, capital_lambda(rho, dim), dim};
}

enum class BoundarySignKind { no_change_positive, no_change_negative, changes_sign };

inline const char* to_string(BoundarySignKind k) {
  switch (k) {
    case BoundarySignKind::no_change_positive: return "NO_SIGN_CHANGE_POSITIVE";
    case BoundarySignKind::no_change_negative: return "NO_SIGN_CHANGE_NEGATIVE";
    case BoundarySignKind::changes_sign: return "CHANGES_SIGN";
  }
  return "?";
}

/// Sign classification of the boundary normal-derivative profile at one
/// critical radius, with the zero latitudes when the sign changes.
struct BoundaryClassification {
  BoundarySignKind kind;
  double m_value = 0.0;
  double M_value = 0.0;
  std::vector<double> zero_latitudes;  // x1 values with psi = 0 (empty unless sign changes)
};

/// Normal-derivative profile along the boundary latitude x1:
///   psi(rho, x1) = -Lambda(rho)
///                  + (1-rho^2) ((rho^2+1-2 rho x1)^{-N/2} + (rho^2+1+2 rho x1)^{-N/2}).
/// Even in x1 and strictly increasing in |x1|.
template <class Real>
Real psi(Real rho, Real x1, int dim) {
  if (!(x1 >= Real(-1) && x1 <= Real(1))) throw std::domain_error("psi: |x1| must be <= 1");
  const Real lam = capital_lambda(rho, dim);
  const Real q = rho * rho + Real(1);
  const Real e = Real(-0.5) * dim;
  return -lam + (Real(1) - rho * rho) *
                    (std::pow(q - Real(2) * rho * x1, e) + std::pow(q + Real(2) * rho * x1, e));
}

/// Minimum of psi over |x1| <= 1, attained at the equator x1 = 0:
///   m(rho) = -Lambda + 2 (1-rho^2) (1+rho^2)^{-N/2}; strictly decreasing.
template <class Real>
Real little_m(Real rho, int dim) {
  const Real lam = capital_lambda(rho, dim);
  return -lam + Real(2) * (Real(1) - rho * rho) * std::pow(Real(1) + rho * rho, Real(-0.5) * dim);
}

/// Maximum of psi, attained at the poles x1 = +-1:
///   M(rho) = -Lambda + (1-rho^2) ((1-rho)^{-N} + (1+rho)^{-N}).
template <class Real>
Real big_m(Real rho, int dim) {
  const Real lam = capital_lambda(rho, dim);
  return -lam + (Real(1) - rho * rho) *
                    (std::pow(Real(1) - rho, Real(-dim)) + std::pow(Real(1) + rho, Real(-dim)));
}

/// M(rho) rewritten under the substitution Lambda = -alpha'/(2 beta'), valid
/// exactly at the zeros of chi:
///   M = rho^N/(1+rho^2)^{N-1}
///     + [2^{N-1}((1+rho)^N + (1-rho)^N - rho^N) - (1-rho^2)^{N-1}]
///       / (2^{N-1} (1-rho^2)^{N-1}).
/// A second algebraic route to the same value, used as a cross-check.
template <class Real>
Real big_m_at_chi_zero(Real rho, int dim) {
  detail::require_open_unit(rho, "big_m_at_chi_zero");
  const Real pw = std::pow(Real(2), Real(dim - 1));
  const Real num = pw * (std::pow(Real(1) + rho, Real(dim)) + std::pow(Real(1) - rho, Real(dim)) -
                         std::pow(rho, Real(dim))) -
                   std::pow(Real(1) - rho * rho, Real(dim - 1));
  return std::pow(rho, Real(dim)) / std::pow(Real(1) + rho * rho, Real(dim - 1)) +
         num / (pw * std::pow(Real(1) - rho * rho, Real(dim - 1)));
}

/// Classification of the boundary normal derivative at a critical radius:
/// m > 0 means one sign everywhere (positive outward derivative of the limit
/// profile), m < 0 < M means the sign flips at a unique latitude pair +-x1*.
inline BoundaryClassification classify_boundary(double rho_star, int dim) {
  BoundaryClassification out;
  out.m_value = little_m(rho_star, dim);
  out.M_value = big_m(rho_star, dim);
  if (std::abs(out.m_value) < 1e-12 || std::abs(out.M_value) < 1e-12)
    throw std::runtime_error("classify_boundary: classification numerically undecided");
  if (out.m_value > 0.0) {
    out.kind = BoundarySignKind::no_change_positive;
  } else if (out.M_value < 0.0) {
    out.kind = BoundarySignKind::no_change_negative;
  } else {
    out.kind = BoundarySignKind::changes_sign;
    auto p = [&](double x1) { return psi(rho_star, x1, dim); };
    double z = bisect(p, 0.0, 1.0, 1e-14);
    z = newton_polish(
        p,
        [&](double x1) {
          const double q = rho_star * rho_star + 1.0;
          const double e = -0.5 * dim - 1.0;
          return (1.0 - rho_star * rho_star) * dim * rho_star *
                 (std::pow(q - 2.0 * rho_star * x1, e) - std::pow(q + 2.0 * rho_star * x1, e));
        },
        z, 0.0, 1.0);
    out.zero_latitudes = {-z, z};
  }
  return out;
}

/// Limiting profile phi(rho, .) = Lambda G(x,0) - G(x,(rho,0)) - G(x,(-rho,0))
/// sampled on the (s, r) half-disk. The three singular centers lie on the
/// s-axis and are masked together with the exterior.
inline Field2D phi_field(const ProfileSpec& spec, int n_s, int n_r) {
  if (n_s < 16 || n_r < 16) throw std::invalid_argument("phi_field: grid must be >= 16x16");
  Field2D f = Field2D::zeros(symmetric_span(n_s), linspace(0.0, 1.0, n_r));
  const int N = spec.dim;
  const Point center = Point::axis(0.0, N);
  const Point plus = Point::axis(spec.rho, N);
  const Point minus = Point::axis(-spec.rho, N);
  const double hs = 2.0 / (n_s - 1), hr = 1.0 / (n_r - 1);
  const double sing_radius = 0.5 * std::sqrt(hs * hs + hr * hr);
  // evaluate on s >= 0 and mirror: the profile is even in s
  for (int i = n_s / 2; i < n_s; ++i) {
    const double s = f.s_grid[i];
    for (int j = 0; j < n_r; ++j) {
      const double r = f.r_grid[j];
      if (s * s + r * r >= 1.0) continue;
      const double d0 = std::hypot(s, r);
      const double dp = std::hypot(s - spec.rho, r);
      const double dm = std::hypot(s + spec.rho, r);
      if (d0 < sing_radius || dp < sing_radius || dm < sing_radius) continue;
      std::vector<double> c(static_cast<std::size_t>(N), 0.0);
      c[0] = s;
      c[1] = r;
      const Point x(std::move(c));
      const double val = spec.big_lambda * green_g(x, center, N) - green_g(x, plus, N) -
                         green_g(x, minus, N);
      f.at(i, j) = val;
      f.set_valid(i, j, true);
      f.at(n_s - 1 - i, j) = val;
      f.set_valid(n_s - 1 - i, j, true);
    }
  }
  return f;
}

/// Three-bubble approximate solution
///   V = PU_{lambda^2 eps, 0} - PU_{mu^2 eps, (rho,0)} - PU_{mu^2 eps, (-rho,0)}
/// sampled with the leading-order projection. lambda and mu are the fibered
/// scales at spec.rho under cfg. Warns when a bubble scale is large relative
/// to its center's boundary distance (expansion regime violated).
inline Field2D ansatz_field(const ProfileSpec& spec, double epsilon, const ReducedConfig& cfg,
                            int n_s, int n_r, std::string* warning = nullptr) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("ansatz_field: epsilon must be positive");
  if (n_s < 16 || n_r < 16) throw std::invalid_argument("ansatz_field: grid must be >= 16x16");
  const int N = spec.dim;
  const FiberedPoint fp = fibered_point(spec.rho, cfg);
  const double delta0 = fp.lambda * fp.lambda * epsilon;
  const double delta1 = fp.mu * fp.mu * epsilon;
  if (warning) {
    warning->clear();
    if (delta0 > 0.1) *warning += "central bubble scale exceeds 0.1 * boundary distance; ";
    if (delta1 > 0.1 * (1.0 - spec.rho))
      *warning += "off-center bubble scale exceeds 0.1 * boundary distance; ";
  }
  const BubbleParams b0(delta0, Point::axis(0.0, N), N);
  const BubbleParams bp(delta1, Point::axis(spec.rho, N), N);
  const BubbleParams bm(delta1, Point::axis(-spec.rho, N), N);
  Field2D f = Field2D::zeros(symmetric_span(n_s), linspace(0.0, 1.0, n_r));
  for (int i = n_s / 2; i < n_s; ++i) {
    const double s = f.s_grid[i];
    for (int j = 0; j < n_r; ++j) {
      const double r = f.r_grid[j];
      if (s * s + r * r >= 1.0) continue;
      std::vector<double> c(static_cast<std::size_t>(N), 0.0);
      c[0] = s;
      c[1] = r;
      const Point x(std::move(c));
      const double val = projected_bubble_approx(x, b0) - projected_bubble_approx(x, bp) -
                         projected_bubble_approx(x, bm);
      f.at(i, j) = val;
      f.set_valid(i, j, true);
      f.at(n_s - 1 - i, j) = val;
      f.set_valid(n_s - 1 - i, j, true);
    }
  }
  return f;
}

/// Annotation attached to reports at the saddle radius rho1. The computed
/// signs give m(rho1) > 0 (no boundary sign change for the saddle-generated
/// profile) and m(rho2) < 0 < M(rho2) (sign change for the minimum-generated
/// profile); a labeling that attributes the boundary sign change to the first
/// solution uses the opposite pairing. The classification reported here
/// follows the computed signs.
inline const char* labeling_discrepancy_note() {
  return "labeling note: computed signs give m(rho1) > 0 (no boundary sign change at the "
         "saddle-generated profile) and m(rho2) < 0 < M(rho2) (sign change at the "
         "minimum-generated profile); statements attaching the boundary sign change to the "
         "first solution use the opposite pairing. Classification follows the computed signs.";
}

}  // namespace ballred
