#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace anonlip {

// Worst-case Lipschitz constant lambda(n, k, delta) of delta-perturbed
// n-player k-action anonymous games. Every function here requires
// 0 < delta < 1 and throws std::invalid_argument otherwise.

enum class LambdaMethod {
  closed_form_k3,  ///< (1 - delta) P(S^{2 delta / k}_{n-2} in {0, 1})
  exact_m,         ///< (1 - delta) M(n - 2, delta), k = 2
  even_walk,       ///< (1 - delta) P(S^{delta (1 - delta / 2)}_{n/2 - 1} = 0)
  odd_bracket,     ///< exact M value with the adjacent-even bracket attached
  oracle,          ///< brute-force total variation
};

std::string_view to_string(LambdaMethod m) noexcept;

struct LambdaResult {
  double value;
  double lower;
  double upper;
  LambdaMethod method;
  std::optional<double> asymptotic;
};

/// k >= 3 characterisation via the passage probability of the lazy walk
/// with rate 2 delta / k.
LambdaResult lambda_k3(std::int64_t n, int k, double delta);

/// Exact k = 2 value for every n >= 2.
LambdaResult lambda_k2(std::int64_t n, double delta);

/// k = 2 and even n: probability that the walk with rate delta (1 - delta/2)
/// sits at 0 after n/2 - 1 steps, times 1 - delta.
double lambda_k2_even(std::int64_t n, double delta);

struct LambdaBracket {
  double lower;
  double upper;
};

/// k = 2 and odd n >= 3: [lambda_{n+1}, sqrt(lambda_{n-1} lambda_{n+1})].
LambdaBracket lambda_k2_odd_bounds(std::int64_t n, double delta);

/// Dispatch on k. For k = 2 and odd n the result carries the odd-n bracket
/// (method odd_bracket) while value stays exact. The asymptotic estimate is
/// always attached.
LambdaResult lambda(std::int64_t n, int k, double delta);

/// (1 - delta) sqrt(k / (pi n delta)) for k >= 3,
/// (1 - delta) / sqrt(pi n delta (1 - delta / 2)) for k = 2.
double asymptotic_estimate(std::int64_t n, int k, double delta);

struct FixedPoint {
  double delta;
  double lambda;
  double residual;  ///< lambda(n, k, delta) - delta
  int iterations;
};

/// Solves lambda(n, k, delta) = delta by bisection over (0, 1). Monotonicity
/// in delta is not assumed; the residual is checked instead, and
/// BracketError is thrown if the sign condition or the residual fails.
FixedPoint delta_star(std::int64_t n, int k, double tol);

}  // namespace anonlip
