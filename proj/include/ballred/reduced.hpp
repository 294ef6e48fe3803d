#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "ballred/constants.hpp"

namespace ballred {

/// Dimension and the positive constant c_n weighting the logarithmic part of
/// the reduced energy. Critical radii, Morse data and every sign
/// classification are independent of c_n; the fibered scales lambda, mu grow
/// like sqrt(c_n).
struct ReducedConfig {
  int dim;
  double c_n = 1.0;

  ReducedConfig(int dim_, double c = 1.0) : dim(dim_), c_n(c) {
    if (dim < 3) throw std::invalid_argument("ReducedConfig: dimension must be >= 3");
    if (!(c_n > 0.0)) throw std::invalid_argument("ReducedConfig: c_n must be positive");
  }
};

/// A point of the reduced domain D = (0,inf) x (0,inf) x (0,1).
struct ReducedPoint {
  double lambda;
  double mu;
  double rho;
};

/// A point of the fibered critical manifold: the (lambda, mu) stationarity
/// conditions hold at (lambda, mu, rho), with big_lambda = lambda / mu.
struct FiberedPoint {
  double rho;
  double big_lambda;
  double lambda;
  double mu;
};

namespace detail {
template <class Real>
void require_open_unit(Real rho, const char* who) {
  if (!(rho > Real(0) && rho < Real(1)))
    throw std::domain_error(std::string(who) + ": rho must lie in (0,1)");
}
}  // namespace detail

/// Self-interaction coefficient of the two off-center bubbles:
///   alpha(rho) = (1-rho^2)^{2-N} - (2rho)^{2-N} + (1+rho^2)^{2-N}.
/// Equals H((rho,0),(rho,0)) - G((rho,0),(-rho,0)); negative near 0, positive
/// on (rho0, 1), divergent at 1.
template <class Real>
Real alpha(Real rho, int dim) {
  detail::require_open_unit(rho, "alpha");
  const Real e = Real(2 - dim);
  return std::pow(Real(1) - rho * rho, e) - std::pow(Real(2) * rho, e) +
         std::pow(Real(1) + rho * rho, e);
}

/// Center-to-offcenter interaction: beta(rho) = G((rho,0),0) = rho^{2-N} - 1 > 0.
template <class Real>
Real beta(Real rho, int dim) {
  detail::require_open_unit(rho, "beta");
  return std::pow(rho, Real(2 - dim)) - Real(1);
}

template <class Real>
Real alpha_prime(Real rho, int dim) {
  detail::require_open_unit(rho, "alpha_prime");
  const Real e = Real(1 - dim);
  return Real(dim - 2) * (Real(2) * rho * std::pow(Real(1) - rho * rho, e) +
                          Real(2) * std::pow(Real(2) * rho, e) -
                          Real(2) * rho * std::pow(Real(1) + rho * rho, e));
}

template <class Real>
Real beta_prime(Real rho, int dim) {
  detail::require_open_unit(rho, "beta_prime");
  return -Real(dim - 2) * std::pow(rho, Real(1 - dim));
}

template <class Real>
Real alpha_second(Real rho, int dim) {
  detail::require_open_unit(rho, "alpha_second");
  const Real m = Real(1) - rho * rho, p = Real(1) + rho * rho;
  const Real e1 = Real(1 - dim), e0 = Real(-dim);
  return Real(dim - 2) *
         (Real(2) * std::pow(m, e1) + Real(4) * (dim - 1) * rho * rho * std::pow(m, e0) -
          Real(4) * (dim - 1) * std::pow(Real(2) * rho, e0) - Real(2) * std::pow(p, e1) +
          Real(4) * (dim - 1) * rho * rho * std::pow(p, e0));
}

template <class Real>
Real beta_second(Real rho, int dim) {
  detail::require_open_unit(rho, "beta_second");
  return Real(dim - 2) * Real(dim - 1) * std::pow(rho, Real(-dim));
}

/// Positive root of Lambda^2 + beta Lambda - alpha = 0, defined for alpha > 0.
/// Evaluated in the rationalized form 2 alpha / (beta + sqrt(beta^2 + 4 alpha))
/// which avoids the cancellation of the textbook quadratic formula when
/// beta^2 >> alpha.
template <class Real>
Real capital_lambda(Real rho, int dim) {
  const Real a = alpha(rho, dim);
  if (!(a > Real(0)))
    throw std::domain_error("capital_lambda: alpha(rho) <= 0 (rho at or below rho0)");
  const Real b = beta(rho, dim);
  return Real(2) * a / (b + std::sqrt(b * b + Real(4) * a));
}

/// d Lambda / d rho = (alpha' - Lambda beta') / sqrt(beta^2 + 4 alpha) > 0 on (rho0, 1).
template <class Real>
Real capital_lambda_prime(Real rho, int dim) {
  const Real a = alpha(rho, dim);
  if (!(a > Real(0)))
    throw std::domain_error("capital_lambda_prime: alpha(rho) <= 0 (rho at or below rho0)");
  const Real b = beta(rho, dim);
  const Real lam = Real(2) * a / (b + std::sqrt(b * b + Real(4) * a));
  return (alpha_prime(rho, dim) - lam * beta_prime(rho, dim)) / std::sqrt(b * b + Real(4) * a);
}

/// Sign-carrying factor of f': chi = alpha' + 2 Lambda beta'. Its zeros are the
/// critical radii; independent of c_n.
template <class Real>
Real chi(Real rho, int dim) {
  return alpha_prime(rho, dim) + Real(2) * capital_lambda(rho, dim) * beta_prime(rho, dim);
}

template <class Real>
Real chi_prime(Real rho, int dim) {
  return alpha_second(rho, dim) + Real(2) * capital_lambda_prime(rho, dim) * beta_prime(rho, dim) +
         Real(2) * capital_lambda(rho, dim) * beta_second(rho, dim);
}

/// The (lambda, mu)-stationary point over rho:
///   mu = sqrt(c_n / (2 alpha + 2 Lambda beta)),  lambda = Lambda mu.
inline FiberedPoint fibered_point(double rho, const ReducedConfig& cfg) {
  const double a = alpha(rho, cfg.dim);
  if (!(a > 0.0)) throw std::domain_error("fibered_point: rho at or below rho0");
  const double b = beta(rho, cfg.dim);
  const double lam = capital_lambda(rho, cfg.dim);
  const double denom = 2.0 * a + 2.0 * lam * b;
  if (!(denom > 0.0)) throw std::runtime_error("fibered_point: nonpositive fiber denominator");
  const double mu = std::sqrt(cfg.c_n / denom);
  return FiberedPoint{rho, lam, lam * mu, mu};
}

/// Reduced energy F(lambda, mu, rho) =
///   lambda^2 + 2 mu^2 alpha + 4 lambda mu beta - c_n ln(lambda) - 2 c_n ln(mu).
inline double big_f(const ReducedPoint& p, const ReducedConfig& cfg) {
  if (!(p.lambda > 0.0 && p.mu > 0.0)) throw std::domain_error("big_f: point outside D");
  detail::require_open_unit(p.rho, "big_f");
  const double a = alpha(p.rho, cfg.dim), b = beta(p.rho, cfg.dim);
  return p.lambda * p.lambda + 2.0 * p.mu * p.mu * a + 4.0 * p.lambda * p.mu * b -
         cfg.c_n * std::log(p.lambda) - 2.0 * cfg.c_n * std::log(p.mu);
}

inline Eigen::Vector3d grad_f(const ReducedPoint& p, const ReducedConfig& cfg) {
  if (!(p.lambda > 0.0 && p.mu > 0.0)) throw std::domain_error("grad_f: point outside D");
  detail::require_open_unit(p.rho, "grad_f");
  const double a = alpha(p.rho, cfg.dim), b = beta(p.rho, cfg.dim);
  const double ap = alpha_prime(p.rho, cfg.dim), bp = beta_prime(p.rho, cfg.dim);
  Eigen::Vector3d g;
  g(0) = 2.0 * p.lambda + 4.0 * p.mu * b - cfg.c_n / p.lambda;
  g(1) = 4.0 * p.mu * a + 4.0 * p.lambda * b - 2.0 * cfg.c_n / p.mu;
  g(2) = 2.0 * p.mu * p.mu * ap + 4.0 * p.lambda * p.mu * bp;
  return g;
}

inline Eigen::Matrix3d hess_f(const ReducedPoint& p, const ReducedConfig& cfg) {
  if (!(p.lambda > 0.0 && p.mu > 0.0)) throw std::domain_error("hess_f: point outside D");
  detail::require_open_unit(p.rho, "hess_f");
  const double a = alpha(p.rho, cfg.dim), b = beta(p.rho, cfg.dim);
  const double ap = alpha_prime(p.rho, cfg.dim), bp = beta_prime(p.rho, cfg.dim);
  const double app = alpha_second(p.rho, cfg.dim), bpp = beta_second(p.rho, cfg.dim);
  Eigen::Matrix3d h;
  h(0, 0) = 2.0 + cfg.c_n / (p.lambda * p.lambda);
  h(0, 1) = h(1, 0) = 4.0 * b;
  h(0, 2) = h(2, 0) = 4.0 * p.mu * bp;
  h(1, 1) = 4.0 * a + 2.0 * cfg.c_n / (p.mu * p.mu);
  h(1, 2) = h(2, 1) = 4.0 * p.mu * ap + 4.0 * p.lambda * bp;
  h(2, 2) = 2.0 * p.mu * p.mu * app + 4.0 * p.lambda * p.mu * bpp;
  return h;
}

/// F restricted to the fibered manifold:
///   f(rho) = (3/2) c_n - c_n ln(lambda(rho) mu(rho)^2).
inline double little_f(double rho, const ReducedConfig& cfg) {
  const FiberedPoint fp = fibered_point(rho, cfg);
  return cfg.c_n * (1.5 - std::log(fp.lambda) - 2.0 * std::log(fp.mu));
}

/// Derivative of the boundary minimum profile
///   m(rho) = -Lambda(rho) + 2 (1-rho^2) (1+rho^2)^{-N/2}:
///   m' = -Lambda' - 4 rho (1+rho^2)^{-N/2} - 2 N rho (1-rho^2) (1+rho^2)^{-N/2-1} < 0.
template <class Real>
Real m_prime(Real rho, int dim) {
  const Real p = Real(1) + rho * rho;
  return -capital_lambda_prime(rho, dim) - Real(4) * rho * std::pow(p, Real(-0.5) * dim) -
         Real(2) * dim * rho * (Real(1) - rho * rho) * std::pow(p, Real(-0.5) * dim - 1);
}

/// Value of c_n for which the fibered scales reproduce the blow-up scales of
/// the PDE under the concentration convention delta^{N-2} = lambda^2 eps:
///   c_n = (N-2)/2 * Gamma(N/2)^2 / Gamma(N)   (pi/16 for N = 3).
inline double matched_c_n(int dim) {
  const double g = std::tgamma(0.5 * dim);
  return 0.5 * (dim - 2) * g * g / std::tgamma(dim);
}

}  // namespace ballred
