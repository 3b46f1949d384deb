#include "anonlip/walk.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace anonlip {

WalkParams::WalkParams(std::int64_t steps, double rate)
    : steps_(steps), rate_(rate) {
  if (steps < 0) {
    throw std::invalid_argument("walk: step count must be >= 0, got " +
                                std::to_string(steps));
  }
  if (!(rate > 0.0 && rate <= 1.0)) {
    throw std::invalid_argument("walk: rate must lie in (0, 1], got " +
                                std::to_string(rate));
  }
}

IntegerPmf walk_pmf(const WalkParams& p) {
  const std::int64_t n = p.steps();
  const double stay = 1.0 - p.rate();
  const double move = 0.5 * p.rate();
  const std::size_t width = static_cast<std::size_t>(2 * n + 1);
  const std::size_t center = static_cast<std::size_t>(n);

  // Two buffers padded by one cell on each side so the stencil never
  // branches at the edges.
  std::vector<double> cur(width + 2, 0.0), next(width + 2, 0.0);
  cur[center + 1] = 1.0;
  for (std::int64_t step = 1; step <= n; ++step) {
    const std::size_t lo = center + 1 - static_cast<std::size_t>(step);
    const std::size_t hi = center + 1 + static_cast<std::size_t>(step);
    for (std::size_t i = lo; i <= hi; ++i) {
      // cur[i-1] + cur[i+1] is commutative, which keeps t and -t identical.
      next[i] = stay * cur[i] + move * (cur[i - 1] + cur[i + 1]);
    }
    std::swap(cur, next);
  }
  return IntegerPmf(-n, std::vector<double>(cur.begin() + 1, cur.end() - 1));
}

double passage_prob(const WalkParams& p) {
  const IntegerPmf law = walk_pmf(p);
  return law(0) + law(1);
}

double stay_below_prob(const WalkParams& p) {
  const std::int64_t n = p.steps();
  const double stay = 1.0 - p.rate();
  const double move = 0.5 * p.rate();

  // survive[i] holds the mass at position -i that has never touched +1.
  // Index n + 1 is a zero pad below the reachable range.
  const std::size_t size = static_cast<std::size_t>(n) + 2;
  std::vector<double> survive(size, 0.0), next(size, 0.0);
  survive[0] = 1.0;
  for (std::int64_t step = 1; step <= n; ++step) {
    const std::size_t deepest = static_cast<std::size_t>(step);
    // Position 0: the up-move from 0 is absorbed at +1.
    next[0] = stay * survive[0] + move * survive[1];
    for (std::size_t i = 1; i <= deepest; ++i) {
      next[i] = stay * survive[i] + move * survive[i - 1] + move * survive[i + 1];
    }
    std::swap(survive, next);
  }
  return std::accumulate(survive.begin(), survive.end(), 0.0);
}

double point_prob(const WalkParams& p, std::int64_t t) {
  if (t < -p.steps() || t > p.steps()) return 0.0;
  return walk_pmf(p)(t);
}

}  // namespace anonlip
