#pragma once

#include <chrono>
#include <cmath>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ballred/constants.hpp"
#include "ballred/critical.hpp"
#include "ballred/field.hpp"
#include "ballred/profile.hpp"
#include "ballred/reduced.hpp"

namespace ballred {

enum class Relation { LT, GT, LE, GE };

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::LT: return "LT";
    case Relation::GT: return "GT";
    case Relation::LE: return "LE";
    case Relation::GE: return "GE";
  }
  return "?";
}

/// One audited inequality: computed sides, signed margin (positive =
/// satisfied) and the witness point for extremal (mesh) checks. Checks whose
/// dimension guard excludes the current dimension are recorded as skipped.
struct InequalityCheck {
  std::string name;
  int dimension = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  Relation relation = Relation::LT;
  double margin = 0.0;
  bool passed = false;
  std::optional<double> witness;
  bool skipped = false;
};

struct VerificationReport {
  std::pair<int, int> dimension_range{0, 0};
  std::vector<InequalityCheck> checks;
  bool all_passed = true;
  long long runtime_ms = 0;
};

namespace detail {

inline InequalityCheck make_check(std::string name, int dim, double lhs, double rhs, Relation rel,
                                  std::optional<double> witness = std::nullopt) {
  InequalityCheck c;
  c.name = std::move(name);
  c.dimension = dim;
  c.lhs = lhs;
  c.rhs = rhs;
  c.relation = rel;
  c.witness = witness;
  switch (rel) {
    case Relation::LT:
    case Relation::LE: c.margin = rhs - lhs; break;
    case Relation::GT:
    case Relation::GE: c.margin = lhs - rhs; break;
  }
  const bool strict = (rel == Relation::LT || rel == Relation::GT);
  c.passed = strict ? (c.margin > 0.0) : (c.margin >= -1e-14);
  return c;
}

inline InequalityCheck skipped_check(std::string name, int dim, Relation rel) {
  InequalityCheck c;
  c.name = std::move(name);
  c.dimension = dim;
  c.relation = rel;
  c.passed = true;
  c.skipped = true;
  return c;
}

// Plain and extended-precision evaluations of an isolated strict inequality
// must agree in sign, otherwise the check is recorded as failed.
inline InequalityCheck checked_sign_agreement(InequalityCheck c, long double lhs_ld,
                                              long double rhs_ld) {
  const long double m =
      (c.relation == Relation::LT || c.relation == Relation::LE) ? rhs_ld - lhs_ld : lhs_ld - rhs_ld;
  if ((m > 0.0L) != (c.margin > 0.0)) c.passed = false;
  return c;
}

}  // namespace detail

/// All named inequality labels audited per dimension, in report order.
inline std::vector<std::string> audit_check_names() {
  return {"one",           "first",        "first-aux",    "ineq",        "ineq-tangency",
          "sob",           "two",          "two-tail",     "an0",         "an0-tangency",
          "an0-right-slope", "an2-identity", "an2-chain-a", "an2-chain-b", "an2-chain-c",
          "an3",           "an1",          "14",           "pa3",         "mum",
          "m-rhobar",      "emme-poly",    "emme-rho1",    "emme-rho1-subst", "emme-rho2",
          "emme-rho2-subst", "13",         "13bis-m",      "13bis-M",     "limiti-lower",
          "limiti-upper"};
}

/// Audit of every named inequality at one dimension. Failures are recorded in
/// the report, never thrown. mesh controls the resolution of the sweep-based
/// checks.
inline VerificationReport audit_dimension(int dim, int mesh = 1000) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.dimension_range = {dim, dim};
  using detail::make_check;
  using detail::skipped_check;
  const double rb = kRhoBar;
  const long double rb_ld = (std::sqrt(5.0L) - 1.0L) / 2.0L;

  const double rho0 = find_rho0(dim);
  const auto [rho1, rho2] = find_critical_rhos(dim);

  // chi(1/2) < 0
  rep.checks.push_back(detail::checked_sign_agreement(
      make_check("one", dim, chi(0.5, dim), 0.0, Relation::LT, 0.5), chi(0.5L, dim), 0.0L));

  // alpha(1/2) < beta^2(1/2) and the stronger 4 alpha(1/2) <= beta^2(1/2), N >= 4
  if (dim >= 4) {
    const double b_half = beta(0.5, dim);
    rep.checks.push_back(
        make_check("first", dim, alpha(0.5, dim), b_half * b_half, Relation::LT, 0.5));
    rep.checks.push_back(
        make_check("first-aux", dim, 4.0 * alpha(0.5, dim), b_half * b_half, Relation::LE, 0.5));
  } else {
    rep.checks.push_back(skipped_check("first", dim, Relation::LT));
    rep.checks.push_back(skipped_check("first-aux", dim, Relation::LE));
  }

  // sqrt(1+x) - 1 >= (2/5) x on (0,1); worst margin and witness, plus the
  // slope comparison at the tangency x = 0 where both sides vanish.
  {
    double worst = std::numeric_limits<double>::infinity();
    double wl = 0, wr = 0, wx = 0;
    for (int k = 1; k <= mesh; ++k) {
      const double x = static_cast<double>(k) / (mesh + 1);
      const double l = std::sqrt(1.0 + x) - 1.0, r = 0.4 * x;
      if (l - r < worst) {
        worst = l - r;
        wl = l;
        wr = r;
        wx = x;
      }
    }
    rep.checks.push_back(make_check("ineq", dim, wl, wr, Relation::GE, wx));
    rep.checks.push_back(make_check("ineq-tangency", dim, 0.5, 0.4, Relation::GT, 0.0));
  }

  // chi(1/2) <= alpha'(1/2) + (8/5)(alpha/beta)(1/2) beta'(1/2), N >= 4
  if (dim >= 4) {
    const double bound = alpha_prime(0.5, dim) +
                         1.6 * alpha(0.5, dim) / beta(0.5, dim) * beta_prime(0.5, dim);
    rep.checks.push_back(make_check("sob", dim, chi(0.5, dim), bound, Relation::LE, 0.5));
  } else {
    rep.checks.push_back(skipped_check("sob", dim, Relation::LE));
  }

  // chi(rho_bar) < 0
  rep.checks.push_back(detail::checked_sign_agreement(
      make_check("two", dim, chi(rb, dim), 0.0, Relation::LT, rb), chi(rb_ld, dim), 0.0L));

  // 5 rb^2 - 2 + 7 rb / 2^{N-1} < 0, N >= 7 (tail of the rho_bar sign estimate)
  if (dim >= 7) {
    const double lhs = 5.0 * rb * rb - 2.0 + 7.0 * rb / std::pow(2.0, dim - 1);
    rep.checks.push_back(make_check("two-tail", dim, lhs, 0.0, Relation::LT, rb));
  } else {
    rep.checks.push_back(skipped_check("two-tail", dim, Relation::LT));
  }

  // sqrt(1+t) - 1 >= t/3 holds with equality at both ends of [0,3]; the mesh
  // sweeps the open interval and the endpoints are covered by slope
  // comparisons (1/2 > 1/3 entering from 0, 1/4 < 1/3 entering from 3).
  {
    double worst = std::numeric_limits<double>::infinity();
    double wl = 0, wr = 0, wt = 0;
    for (int k = 1; k < mesh; ++k) {
      const double t = 3.0 * k / mesh;
      const double l = std::sqrt(1.0 + t) - 1.0, r = t / 3.0;
      if (l - r < worst) {
        worst = l - r;
        wl = l;
        wr = r;
        wt = t;
      }
    }
    rep.checks.push_back(make_check("an0", dim, wl, wr, Relation::GE, wt));
    rep.checks.push_back(
        make_check("an0-tangency", dim, 0.5, 1.0 / 3.0, Relation::GT, 0.0));
    rep.checks.push_back(
        make_check("an0-right-slope", dim, 0.25, 1.0 / 3.0, Relation::LT, 3.0));
  }

  // golden-ratio identity 1 - rb^2 = rb and the chain
  // 1 + rb^2 >= 2 rb >= rb sqrt(1+rb^2) >= 1 - rb^2
  rep.checks.push_back(
      make_check("an2-identity", dim, std::abs(1.0 - rb * rb - rb), 5e-16, Relation::LE, rb));
  rep.checks.push_back(make_check("an2-chain-a", dim, 1.0 + rb * rb, 2.0 * rb, Relation::GE, rb));
  rep.checks.push_back(
      make_check("an2-chain-b", dim, 2.0 * rb, rb * std::sqrt(1.0 + rb * rb), Relation::GE, rb));
  rep.checks.push_back(make_check("an2-chain-c", dim, rb * std::sqrt(1.0 + rb * rb), 1.0 - rb * rb,
                                  Relation::GE, rb));

  // 4 alpha(rb) / beta^2(rb) <= 3 and Lambda(rb) > (2/3) alpha(rb) rb^{N-2}, N >= 6
  if (dim >= 6) {
    const double b_rb = beta(rb, dim);
    rep.checks.push_back(
        make_check("an3", dim, 4.0 * alpha(rb, dim) / (b_rb * b_rb), 3.0, Relation::LE, rb));
    rep.checks.push_back(make_check("an1", dim, capital_lambda(rb, dim),
                                    (2.0 / 3.0) * alpha(rb, dim) * std::pow(rb, dim - 2),
                                    Relation::GT, rb));
  } else {
    rep.checks.push_back(skipped_check("an3", dim, Relation::LE));
    rep.checks.push_back(skipped_check("an1", dim, Relation::GT));
  }

  // Lambda' > 0 and m' < 0 sampled on (rho0 + guard, 1 - guard); mesh points
  // where the closed forms exceed double range (huge N near 1) are skipped
  {
    const double lo = rho0 + kGuardOffset, hi = 1.0 - kGuardOffset;
    double lam_min = std::numeric_limits<double>::infinity(), lam_wit = lo;
    double mp_max = -std::numeric_limits<double>::infinity(), mp_wit = lo;
    for (int k = 0; k <= mesh; ++k) {
      const double r = lo + (hi - lo) * k / mesh;
      const double lp = capital_lambda_prime(r, dim);
      const double mp = m_prime(r, dim);
      if (!std::isfinite(lp) || !std::isfinite(mp)) continue;
      if (lp < lam_min) {
        lam_min = lp;
        lam_wit = r;
      }
      if (mp > mp_max) {
        mp_max = mp;
        mp_wit = r;
      }
    }
    rep.checks.push_back(make_check("14", dim, lam_min, 0.0, Relation::GT, lam_wit));
    rep.checks.push_back(make_check("pa3", dim, mp_max, 0.0, Relation::LT, mp_wit));
  }

  // m(1/2) > 0 and m(rho_bar) < 0
  rep.checks.push_back(detail::checked_sign_agreement(
      make_check("mum", dim, little_m(0.5, dim), 0.0, Relation::GT, 0.5),
      little_m(0.5L, dim), 0.0L));
  rep.checks.push_back(detail::checked_sign_agreement(
      make_check("m-rhobar", dim, little_m(rb, dim), 0.0, Relation::LT, rb),
      little_m(rb_ld, dim), 0.0L));

  // 2^{N-1}((1+rho)^N + (1-rho)^N - rho^N) - (1-rho^2)^{N-1} > 0 on [0,1]
  {
    const double pw = std::pow(2.0, dim - 1);
    double worst = std::numeric_limits<double>::infinity(), wwit = 0, wl = 0;
    for (int k = 0; k <= mesh; ++k) {
      const double r = static_cast<double>(k) / mesh;
      const double val = pw * (std::pow(1.0 + r, dim) + std::pow(1.0 - r, dim) -
                               std::pow(r, dim)) -
                         std::pow(1.0 - r * r, dim - 1);
      if (val < worst) {
        worst = val;
        wl = val;
        wwit = r;
      }
    }
    rep.checks.push_back(make_check("emme-poly", dim, wl, 0.0, Relation::GT, wwit));
  }

  // M > 0 at the two chi-zeros, by direct evaluation and by the algebraic
  // form valid exactly at those zeros.
  rep.checks.push_back(detail::checked_sign_agreement(
      make_check("emme-rho1", dim, big_m(rho1, dim), 0.0, Relation::GT, rho1),
      big_m(static_cast<long double>(rho1), dim), 0.0L));
  rep.checks.push_back(make_check("emme-rho1-subst", dim, big_m_at_chi_zero(rho1, dim), 0.0,
                                  Relation::GT, rho1));
  rep.checks.push_back(detail::checked_sign_agreement(
      make_check("emme-rho2", dim, big_m(rho2, dim), 0.0, Relation::GT, rho2),
      big_m(static_cast<long double>(rho2), dim), 0.0L));
  rep.checks.push_back(make_check("emme-rho2-subst", dim, big_m_at_chi_zero(rho2, dim), 0.0,
                                  Relation::GT, rho2));

  // final classification inputs m(rho1) > 0, m(rho2) < 0 < M(rho2)
  rep.checks.push_back(detail::checked_sign_agreement(
      make_check("13", dim, little_m(rho1, dim), 0.0, Relation::GT, rho1),
      little_m(static_cast<long double>(rho1), dim), 0.0L));
  rep.checks.push_back(detail::checked_sign_agreement(
      make_check("13bis-m", dim, little_m(rho2, dim), 0.0, Relation::LT, rho2),
      little_m(static_cast<long double>(rho2), dim), 0.0L));
  rep.checks.push_back(detail::checked_sign_agreement(
      make_check("13bis-M", dim, big_m(rho2, dim), 0.0, Relation::GT, rho2),
      big_m(static_cast<long double>(rho2), dim), 0.0L));

  // Divergence probes. f diverges only logarithmically at both endpoints, so
  // no representable rho reaches |f| = 1e6; the probes therefore check the
  // divergence *rate* f' = 2 mu^2 chi, which grows like 1/dist, against the
  // 1e6 threshold, together with monotone growth of f along a geometric mesh
  // approaching the endpoint.
  {
    const ReducedConfig cfg(dim, 1.0);
    // closed forms overflow for very large dimensions close to the endpoints;
    // probes stop at the last representable mesh point
    auto representable = [&](double r) {
      const double a = alpha(r, dim);
      return std::isfinite(a) && a > 0.0 && std::isfinite(beta(r, dim));
    };
    auto fprime = [&](double r) {
      const FiberedPoint fp = fibered_point(r, cfg);
      return 2.0 * fp.mu * fp.mu * chi(r, dim);
    };
    // toward rho0+, inside (rho0, rho1) where f is increasing
    bool monotone = true;
    double innermost = rho0 + (rho1 - rho0) * 0.1;
    {
      double prev = std::numeric_limits<double>::infinity();
      double span = rho1 - rho0;
      for (int k = 1; k <= 9; ++k) {
        const double r = rho0 + span * std::pow(10.0, -k);
        if (!representable(r)) break;
        const double f = little_f(r, cfg);
        if (!std::isfinite(f)) break;
        if (f >= prev) monotone = false;
        prev = f;
        innermost = r;
      }
    }
    InequalityCheck c =
        make_check("limiti-lower", dim, fprime(innermost), 1e6, Relation::GT, innermost);
    if (!monotone) c.passed = false;
    rep.checks.push_back(c);
    // toward 1-, inside (rho2, 1) where f is increasing
    monotone = true;
    innermost = 1.0 - (1.0 - rho2) * 0.1;
    {
      double prev = -std::numeric_limits<double>::infinity();
      double span = 1.0 - rho2;
      for (int k = 1; k <= 9; ++k) {
        const double r = 1.0 - span * std::pow(10.0, -k);
        if (!representable(r)) break;
        const double f = little_f(r, cfg);
        if (!std::isfinite(f)) break;
        if (f <= prev) monotone = false;
        prev = f;
        innermost = r;
      }
    }
    c = make_check("limiti-upper", dim, fprime(innermost), 1e6, Relation::GT, innermost);
    if (!monotone) c.passed = false;
    rep.checks.push_back(c);
  }

  for (const auto& c : rep.checks) rep.all_passed = rep.all_passed && c.passed;
  rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return rep;
}

/// Concatenated audits over a dimension range; dimensions run concurrently.
inline VerificationReport audit_range(int dim_lo, int dim_hi, int mesh = 1000) {
  if (dim_lo < 3 || dim_hi < dim_lo)
    throw std::invalid_argument("audit_range: need 3 <= dim_lo <= dim_hi");
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.dimension_range = {dim_lo, dim_hi};
  std::vector<std::future<VerificationReport>> jobs;
  for (int d = dim_lo; d <= dim_hi; ++d)
    jobs.push_back(std::async(std::launch::async, [d, mesh] { return audit_dimension(d, mesh); }));
  for (auto& j : jobs) {
    VerificationReport r = j.get();
    rep.all_passed = rep.all_passed && r.all_passed;
    for (auto& c : r.checks) rep.checks.push_back(std::move(c));
  }
  rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return rep;
}

enum class ReportFormat { JSON, TEXT };

/// Deterministic serialization of a report. JSON follows the fixed schema
/// with 17-significant-digit numbers; TEXT is a human-readable table.
inline std::string emit_report(const VerificationReport& r, ReportFormat format) {
  std::ostringstream os;
  if (format == ReportFormat::JSON) {
    os << "{\"dimension_range\":[" << r.dimension_range.first << ',' << r.dimension_range.second
       << "],\"all_passed\":" << (r.all_passed ? "true" : "false") << ",\"checks\":[";
    for (std::size_t k = 0; k < r.checks.size(); ++k) {
      const auto& c = r.checks[k];
      if (k) os << ',';
      os << "{\"name\":\"" << c.name << "\",\"dimension\":" << c.dimension
         << ",\"lhs\":" << format_sig17(c.lhs) << ",\"rhs\":" << format_sig17(c.rhs)
         << ",\"relation\":\"" << to_string(c.relation) << "\",\"margin\":"
         << format_sig17(c.margin) << ",\"passed\":" << (c.passed ? "true" : "false");
      if (c.witness) os << ",\"witness\":" << format_sig17(*c.witness);
      if (c.skipped) os << ",\"skipped\":true";
      os << '}';
    }
    os << "],\"runtime_ms\":" << r.runtime_ms << '}';
  } else {
    os << "inequality audit, dimensions " << r.dimension_range.first << ".."
       << r.dimension_range.second << "\n";
    for (const auto& c : r.checks) {
      if (c.skipped) {
        os << "[SKIP] N=" << c.dimension << ' ' << c.name << "\n";
        continue;
      }
      char buf[160];
      std::snprintf(buf, sizeof(buf), "[%s] N=%d %-16s lhs=% .6g %s rhs=% .6g margin=% .6g",
                    c.passed ? "PASS" : "FAIL", c.dimension, c.name.c_str(), c.lhs,
                    to_string(c.relation), c.rhs, c.margin);
      os << buf;
      if (c.witness) {
        std::snprintf(buf, sizeof(buf), " witness=%.6g", *c.witness);
        os << buf;
      }
      os << "\n";
    }
    os << (r.all_passed ? "ALL PASSED" : "FAILURES PRESENT") << " (" << r.runtime_ms << " ms)\n";
  }
  return os.str();
}

}  // namespace ballred
