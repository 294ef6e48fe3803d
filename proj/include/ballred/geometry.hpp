#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ballred/constants.hpp"
#include "ballred/quadrature.hpp"

namespace ballred {

/// A point of the closed unit ball in R^N, stored in full coordinates.
/// Every configuration used by the reduction lives on the x1-axis; axis()
/// builds (rho, 0, ..., 0).
struct Point {
  std::vector<double> x;

  Point() = default;
  explicit Point(std::vector<double> coords) : x(std::move(coords)) {}

  static Point axis(double rho, int dim) {
    std::vector<double> c(static_cast<std::size_t>(dim), 0.0);
    c[0] = rho;
    return Point(std::move(c));
  }

  int dim() const { return static_cast<int>(x.size()); }

  double norm2() const {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
  }
  double norm() const { return std::sqrt(norm2()); }
};

inline double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.x.size(); ++i) s += a.x[i] * b.x[i];
  return s;
}

inline double dist2(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    const double d = a.x[i] - b.x[i];
    s += d * d;
  }
  return s;
}

inline double dist(const Point& a, const Point& b) { return std::sqrt(dist2(a, b)); }

namespace detail {

inline void require_dim(const Point& p, int dim, const char* who) {
  if (p.dim() != dim) throw std::invalid_argument(std::string(who) + ": point dimension mismatch");
}

inline void require_closed_ball(const Point& p, const char* who) {
  if (p.norm2() > 1.0 + 8.0 * kBoundaryTol)
    throw std::domain_error(std::string(who) + ": point outside the closed unit ball");
}

}  // namespace detail

/// Regular part of the Dirichlet Green's function of the unit ball:
///   H(x,y) = (|x|^2 |y|^2 + 1 - 2 (x,y))^{-(N-2)/2}.
/// Symmetric, positive, and harmonic in each argument; H(0,0) = 1.
inline double robin_h(const Point& x, const Point& y, int dim) {
  detail::require_dim(x, dim, "robin_h");
  detail::require_dim(y, dim, "robin_h");
  detail::require_closed_ball(x, "robin_h");
  detail::require_closed_ball(y, "robin_h");
  const double radicand = x.norm2() * y.norm2() + 1.0 - 2.0 * dot(x, y);
  if (radicand <= 0.0)
    throw std::domain_error("robin_h: nonpositive radicand (corrupted input)");
  return std::pow(radicand, -0.5 * (dim - 2));
}

/// Dirichlet Green's function of the unit ball:
///   G(x,y) = |x-y|^{2-N} - H(x,y).
/// Positive for distinct interior points; vanishes when either point reaches
/// the boundary.
inline double green_g(const Point& x, const Point& y, int dim) {
  detail::require_dim(x, dim, "green_g");
  detail::require_dim(y, dim, "green_g");
  detail::require_closed_ball(x, "green_g");
  detail::require_closed_ball(y, "green_g");
  const double d2 = dist2(x, y);
  if (d2 < 1e-24) throw std::domain_error("green_g: coincident points");
  const double radicand = x.norm2() * y.norm2() + 1.0 - 2.0 * dot(x, y);
  if (radicand <= 0.0)
    throw std::domain_error("green_g: nonpositive radicand (corrupted input)");
  return std::pow(d2, -0.5 * (dim - 2)) - std::pow(radicand, -0.5 * (dim - 2));
}

/// Concentration scale and center of a bubble.
struct BubbleParams {
  double delta;
  Point center;
  int dim;

  BubbleParams(double delta_, Point center_, int dim_)
      : delta(delta_), center(std::move(center_)), dim(dim_) {
    if (delta <= 0.0) throw std::invalid_argument("BubbleParams: delta must be positive");
    if (dim < 3) throw std::invalid_argument("BubbleParams: dimension must be >= 3");
    detail::require_dim(center, dim, "BubbleParams");
  }
};

/// The standard bubble U_{delta,xi}(x) = alpha_N (delta / (delta^2 + |x-xi|^2))^{(N-2)/2},
/// the positive entire solution of -Delta U = U^{(N+2)/(N-2)}.
inline double bubble(const Point& x, const BubbleParams& p) {
  detail::require_dim(x, p.dim, "bubble");
  const double q = p.delta / (p.delta * p.delta + dist2(x, p.center));
  return bubble_norm(p.dim) * std::pow(q, 0.5 * (p.dim - 2));
}

/// Leading-order projection of a bubble onto the ball:
///   PU ~ U_{delta,xi} - alpha_N delta^{(N-2)/2} H(., xi).
/// The subtracted harmonic term matches the bubble's boundary trace at leading
/// order in delta; the remainder is O(delta^{(N+2)/2} / dist(xi, dB)^N).
inline double projected_bubble_approx(const Point& x, const BubbleParams& p) {
  detail::require_dim(x, p.dim, "projected_bubble_approx");
  return bubble(x, p) -
         bubble_norm(p.dim) * std::pow(p.delta, 0.5 * (p.dim - 2)) * robin_h(x, p.center, p.dim);
}

namespace detail {

// Poisson-integral harmonic extension of the bubble's boundary trace,
// evaluated with a tensorized Gauss-Legendre rule on the sphere angles.
// The boundary trace is axisymmetric about the center axis, so the integrand
// depends on the polar angle theta and (off the evaluation axis) one further
// angle phi.
inline double bubble_harmonic_extension(const Point& x, const BubbleParams& p, int order) {
  const int N = p.dim;
  const double aN = bubble_norm(N);
  const double xi = p.center.norm();

  // Centered bubble: the boundary trace is constant, so is its extension.
  if (xi < 1e-14) {
    const double q = p.delta / (p.delta * p.delta + 1.0);
    return aN * std::pow(q, 0.5 * (N - 2));
  }

  // Meridian coordinates of x relative to the center axis.
  const double s = dot(x, p.center) / xi;
  const double r2 = std::max(0.0, x.norm2() - s * s);
  const double r = std::sqrt(r2);
  const double xn2 = x.norm2();

  const GaussLegendre& rule = gauss_legendre(order);
  const double mid = 0.5 * M_PI, rad = 0.5 * M_PI;

  auto trace = [&](double cos_t) {
    const double dy2 = 1.0 + xi * xi - 2.0 * xi * cos_t;  // |y - xi|^2 on |y| = 1
    return aN * std::pow(p.delta / (p.delta * p.delta + dy2), 0.5 * (N - 2));
  };

  double integral = 0.0;
  if (r < 1e-14) {
    // Evaluation point on the center axis: single integral in theta.
    for (int i = 0; i < order; ++i) {
      const double t = mid + rad * rule.nodes[i];
      const double st = std::sin(t), ct = std::cos(t);
      const double kern = std::pow(1.0 + xn2 - 2.0 * s * ct, -0.5 * N);
      integral += rad * rule.weights[i] * trace(ct) * kern * std::pow(st, N - 2);
    }
    integral *= sphere_area(N - 2);
  } else {
    for (int i = 0; i < order; ++i) {
      const double t = mid + rad * rule.nodes[i];
      const double st = std::sin(t), ct = std::cos(t);
      const double u = trace(ct);
      double inner = 0.0;
      for (int j = 0; j < order; ++j) {
        const double f = mid + rad * rule.nodes[j];
        const double kern = std::pow(1.0 + xn2 - 2.0 * s * ct - 2.0 * r * st * std::cos(f), -0.5 * N);
        inner += rad * rule.weights[j] * kern * (N == 3 ? 1.0 : std::pow(std::sin(f), N - 3));
      }
      integral += rad * rule.weights[i] * u * inner * std::pow(st, N - 2);
    }
    integral *= sphere_area(N - 3);
  }
  return (1.0 - xn2) / sphere_area(N - 1) * integral;
}

}  // namespace detail

/// Exact projection oracle: PU = U - w, where w is the Poisson-integral
/// harmonic extension of the bubble's boundary trace. Error is estimated by
/// comparing against a half-order rule; throws if it exceeds rel_tol
/// (relative to max(1, |PU|)).
inline double projected_bubble_exact(const Point& x, const BubbleParams& p, int quadrature_order,
                                     double rel_tol = 1e-8) {
  detail::require_dim(x, p.dim, "projected_bubble_exact");
  detail::require_closed_ball(x, "projected_bubble_exact");
  if (quadrature_order < 8)
    throw std::invalid_argument("projected_bubble_exact: quadrature order must be >= 8");
  const double u = bubble(x, p);
  const double w = detail::bubble_harmonic_extension(x, p, quadrature_order);
  const double w_coarse = detail::bubble_harmonic_extension(x, p, quadrature_order / 2);
  const double value = u - w;
  const double err = std::abs(w - w_coarse);
  if (err > rel_tol * std::max(1.0, std::abs(value)))
    throw std::runtime_error("projected_bubble_exact: quadrature error above tolerance");
  return value;
}

/// Exterior normal derivative of G(., xi) at a boundary point:
///   d_nu G(x, xi) = -(N-2) (1 - |xi|^2) / |x - xi|^N,  |x| = 1.
inline double boundary_normal_derivative_of_g(const Point& x_boundary, const Point& xi, int dim) {
  detail::require_dim(x_boundary, dim, "boundary_normal_derivative_of_g");
  detail::require_dim(xi, dim, "boundary_normal_derivative_of_g");
  if (std::abs(x_boundary.norm() - 1.0) > kBoundaryTol)
    throw std::domain_error("boundary_normal_derivative_of_g: point not on the boundary sphere");
  detail::require_closed_ball(xi, "boundary_normal_derivative_of_g");
  return -(dim - 2) * (1.0 - xi.norm2()) * std::pow(dist2(x_boundary, xi), -0.5 * dim);
}

}  // namespace ballred
