#include "anonlip/lipschitz.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "anonlip/bisection.hpp"
#include "anonlip/poisson_binomial.hpp"
#include "anonlip/walk.hpp"

namespace anonlip {
namespace {

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("lambda: delta must lie in (0, 1), got " +
                                std::to_string(delta));
  }
}

void check_players(std::int64_t n) {
  if (n < 2) {
    throw std::invalid_argument("lambda: n must be >= 2, got " +
                                std::to_string(n));
  }
}

LambdaResult exact(double value, LambdaMethod method) {
  return {value, value, value, method, std::nullopt};
}

}  // namespace

std::string_view to_string(LambdaMethod m) noexcept {
  switch (m) {
    case LambdaMethod::closed_form_k3: return "closed-form-k3";
    case LambdaMethod::exact_m: return "exact-M";
    case LambdaMethod::even_walk: return "even-walk";
    case LambdaMethod::odd_bracket: return "odd-bracket";
    case LambdaMethod::oracle: return "oracle";
  }
  return "unknown";
}

LambdaResult lambda_k3(std::int64_t n, int k, double delta) {
  if (k < 3) {
    throw std::invalid_argument("lambda_k3: k must be >= 3 (use lambda_k2 for k = 2)");
  }
  check_players(n);
  check_delta(delta);
  const WalkParams walk(n - 2, 2.0 * delta / k);
  return exact((1.0 - delta) * passage_prob(walk), LambdaMethod::closed_form_k3);
}

LambdaResult lambda_k2(std::int64_t n, double delta) {
  check_players(n);
  check_delta(delta);
  return exact((1.0 - delta) * m_stat(n - 2, delta).value, LambdaMethod::exact_m);
}

double lambda_k2_even(std::int64_t n, double delta) {
  check_players(n);
  check_delta(delta);
  if (n % 2 != 0) {
    throw std::invalid_argument("lambda_k2_even: n must be even, got " +
                                std::to_string(n));
  }
  const WalkParams walk(n / 2 - 1, delta * (1.0 - 0.5 * delta));
  return (1.0 - delta) * point_prob(walk, 0);
}

LambdaBracket lambda_k2_odd_bounds(std::int64_t n, double delta) {
  if (n < 3 || n % 2 == 0) {
    throw std::invalid_argument("lambda_k2_odd_bounds: n must be odd and >= 3, got " +
                                std::to_string(n));
  }
  const double below = lambda_k2_even(n - 1, delta);
  const double above = lambda_k2_even(n + 1, delta);
  return {above, std::sqrt(below * above)};
}

LambdaResult lambda(std::int64_t n, int k, double delta) {
  if (k < 2) {
    throw std::invalid_argument("lambda: k must be >= 2, got " + std::to_string(k));
  }
  LambdaResult result = k >= 3 ? lambda_k3(n, k, delta) : lambda_k2(n, delta);
  if (k == 2 && n % 2 == 1) {
    const LambdaBracket bracket = lambda_k2_odd_bounds(n, delta);
    result.lower = bracket.lower;
    result.upper = bracket.upper;
    result.method = LambdaMethod::odd_bracket;
  }
  result.asymptotic = asymptotic_estimate(n, k, delta);
  return result;
}

double asymptotic_estimate(std::int64_t n, int k, double delta) {
  if (n < 1) throw std::invalid_argument("asymptotic_estimate: n must be >= 1");
  if (k < 2) throw std::invalid_argument("asymptotic_estimate: k must be >= 2");
  check_delta(delta);
  const double nd = std::numbers::pi * static_cast<double>(n) * delta;
  if (k == 2) return (1.0 - delta) / std::sqrt(nd * (1.0 - 0.5 * delta));
  return (1.0 - delta) * std::sqrt(static_cast<double>(k) / nd);
}

FixedPoint delta_star(std::int64_t n, int k, double tol) {
  check_players(n);
  if (k < 2) throw std::invalid_argument("delta_star: k must be >= 2");
  if (!(tol > 0.0)) throw std::invalid_argument("delta_star: tol must be > 0");

  // lambda -> 1 as delta -> 0 and lambda -> 0 as delta -> 1, so the
  // residual changes sign on any interval reaching close enough to both ends.
  constexpr double edge = 1e-9;
  auto residual = [&](double d) { return lambda(n, k, d).value - d; };
  const BisectionResult root = bisect(residual, edge, 1.0 - edge, tol);
  return {root.root, root.root + root.residual, root.residual, root.iterations};
}

}  // namespace anonlip
