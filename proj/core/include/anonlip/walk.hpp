#pragma once

#include <cstdint>

#include "anonlip/integer_pmf.hpp"

namespace anonlip {

/// Parameters of the lazy symmetric random walk S^r_n on the integers:
/// S_0 = 0 and each step is 0 with probability 1 - r and +1 / -1 with
/// probability r/2 each.
class WalkParams {
 public:
  /// Throws std::invalid_argument unless steps >= 0 and 0 < rate <= 1.
  WalkParams(std::int64_t steps, double rate);

  std::int64_t steps() const noexcept { return steps_; }
  double rate() const noexcept { return rate_; }

 private:
  std::int64_t steps_;
  double rate_;
};

/// Law of S^r_n on [-n, n]. The update is applied symmetrically, so the
/// returned pmf satisfies pmf(t) == pmf(-t) exactly.
IntegerPmf walk_pmf(const WalkParams& p);

/// P(S^r_n in {0, 1}).
double passage_prob(const WalkParams& p);

/// P(S_1 < 1, ..., S_n < 1), computed by propagating the walk with an
/// absorbing barrier at +1 and summing the surviving mass. Shares no code
/// with walk_pmf; by the reflection principle it equals passage_prob.
double stay_below_prob(const WalkParams& p);

/// P(S^r_n = t); zero outside [-n, n].
double point_prob(const WalkParams& p, std::int64_t t);

}  // namespace anonlip
