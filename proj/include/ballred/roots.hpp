#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

namespace ballred {

/// Bisection on a bracket with f(lo) f(hi) < 0, down to the given width.
/// The bracket sign pattern must be established by the caller.
template <class F>
double bisect(F&& f, double lo, double hi, double width_tol, int max_iter = 200) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::invalid_argument("bisect: endpoints do not bracket a sign change");
  for (int it = 0; it < max_iter && (hi - lo) > width_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// A few Newton steps to polish a root already isolated in [lo, hi]; steps
/// leaving the interval are rejected. Never used to globalize.
template <class F, class DF>
double newton_polish(F&& f, DF&& df, double x0, double lo, double hi, int iters = 6) {
  double x = x0;
  for (int it = 0; it < iters; ++it) {
    const double fx = f(x);
    const double dfx = df(x);
    if (dfx == 0.0) break;
    const double xn = x - fx / dfx;
    if (!(xn > lo && xn < hi)) break;
    if (xn == x) break;
    x = xn;
  }
  return x;
}

}  // namespace ballred
