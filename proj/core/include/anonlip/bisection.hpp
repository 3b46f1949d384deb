#pragma once

#include <cmath>
#include <string>

#include "anonlip/errors.hpp"

namespace anonlip {

struct BisectionResult {
  double root;
  double residual;  ///< f(root)
  int iterations;
};

/// Bisection on [lo, hi] for a continuous f with a sign change. Stops when
/// |f(mid)| <= tol or when the bracket can no longer be halved in double
/// precision. Throws BracketError if f(lo) and f(hi) share a sign, or if the
/// final residual still exceeds tol.
template <class F>
BisectionResult bisect(F&& f, double lo, double hi, double tol,
                       int max_iterations = 200) {
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return {lo, 0.0, 0};
  if (f_hi == 0.0) return {hi, 0.0, 0};
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw BracketError("bisect: no sign change on [" + std::to_string(lo) +
                       ", " + std::to_string(hi) + "]");
  }
  double mid = 0.5 * (lo + hi);
  double f_mid = f(mid);
  int it = 1;
  while (std::abs(f_mid) > tol && it < max_iterations) {
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
    const double next = 0.5 * (lo + hi);
    if (next == lo || next == hi) break;
    mid = next;
    f_mid = f(mid);
    ++it;
  }
  if (std::abs(f_mid) > tol) {
    throw BracketError("bisect: residual " + std::to_string(f_mid) +
                       " above tolerance after " + std::to_string(it) +
                       " iterations");
  }
  return {mid, f_mid, it};
}

}  // namespace anonlip
