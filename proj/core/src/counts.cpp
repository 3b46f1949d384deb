#include "anonlip/counts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace anonlip {

CountVector::CountVector(std::vector<int> counts) : counts_(std::move(counts)) {
  for (int c : counts_) {
    if (c < 0) throw std::invalid_argument("CountVector: negative count");
    total_ += c;
  }
}

CountVector CountVector::of_profile(std::span<const int> profile, int actions) {
  std::vector<int> counts(static_cast<std::size_t>(actions), 0);
  for (int a : profile) {
    if (a < 0 || a >= actions) {
      throw std::invalid_argument("profile action " + std::to_string(a) +
                                  " outside [0, " + std::to_string(actions) + ")");
    }
    ++counts[static_cast<std::size_t>(a)];
  }
  return CountVector(std::move(counts));
}

std::uint64_t binomial(int n, int r) {
  if (r < 0 || n < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t out = 1;
  for (int i = 1; i <= r; ++i) {
    const auto num = static_cast<std::uint64_t>(n - r + i);
    // out * num is divisible by i; divide first where possible.
    const std::uint64_t g = std::gcd(out, static_cast<std::uint64_t>(i));
    const std::uint64_t a = out / g;
    const std::uint64_t b = num / (static_cast<std::uint64_t>(i) / g);
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
      throw std::overflow_error("binomial coefficient overflows 64 bits");
    }
    out = a * b;
  }
  return out;
}

namespace {

// Number of compositions of `total` into `parts` nonnegative parts.
std::uint64_t compositions(int total, int parts) {
  if (parts == 0) return total == 0 ? 1 : 0;
  return binomial(total + parts - 1, parts - 1);
}

void enumerate(int remaining, int position, std::vector<int>& current,
               std::vector<CountVector>& out) {
  const auto last = current.size() - 1;
  if (static_cast<std::size_t>(position) == last) {
    current[last] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    current[static_cast<std::size_t>(position)] = v;
    enumerate(remaining - v, position + 1, current, out);
  }
}

}  // namespace

CountSpace::CountSpace(int total, int actions) : total_(total), actions_(actions) {
  if (total < 0) throw std::invalid_argument("CountSpace: total must be >= 0");
  if (actions < 1) throw std::invalid_argument("CountSpace: need at least one action");
  vectors_.reserve(static_cast<std::size_t>(compositions(total, actions)));
  std::vector<int> current(static_cast<std::size_t>(actions), 0);
  enumerate(total, 0, current, vectors_);
}

std::size_t CountSpace::rank(std::span<const int> counts) const {
  if (counts.size() != static_cast<std::size_t>(actions_)) {
    throw std::invalid_argument("CountSpace::rank: wrong number of actions");
  }
  std::uint64_t r = 0;
  int remaining = total_;
  for (int i = 0; i + 1 < actions_; ++i) {
    const int c = counts[static_cast<std::size_t>(i)];
    if (c < 0 || c > remaining) {
      throw std::invalid_argument("CountSpace::rank: vector not in space");
    }
    // Every vector with a smaller entry at position i comes first.
    for (int v = 0; v < c; ++v) r += compositions(remaining - v, actions_ - i - 1);
    remaining -= c;
  }
  if (counts.back() != remaining) {
    throw std::invalid_argument("CountSpace::rank: counts do not sum to total");
  }
  return static_cast<std::size_t>(r);
}

std::size_t CountSpace::rank(const CountVector& c) const { return rank(c.counts()); }

std::vector<CountVector> enumerate_count_vectors(int m, int k) {
  return CountSpace(m, k).vectors();
}

std::vector<double> perturbed_action_law(int action, int k, double delta) {
  if (k < 1) throw std::invalid_argument("perturbed_action_law: k must be >= 1");
  if (action < 0 || action >= k) {
    throw std::invalid_argument("perturbed_action_law: action " + std::to_string(action) +
                                " outside [0, " + std::to_string(k) + ")");
  }
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw std::invalid_argument("perturbed_action_law: delta must lie in [0, 1)");
  }
  std::vector<double> law(static_cast<std::size_t>(k), delta / k);
  law[static_cast<std::size_t>(action)] = 1.0 - delta + delta / k;
  return law;
}

CountDistribution::CountDistribution(CountSpace space, std::vector<double> probs)
    : space_(std::move(space)), probs_(std::move(probs)) {
  if (probs_.size() != space_.size()) {
    throw std::invalid_argument("CountDistribution: size mismatch");
  }
  const double sum = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("CountDistribution: probabilities sum to " +
                                std::to_string(sum));
  }
}

double CountDistribution::probability(const CountVector& c) const {
  if (c.actions() != actions() || c.total() != total()) return 0.0;
  return probs_[space_.rank(c)];
}

CountDistribution count_distribution(std::span<const int> profile, int k, double delta) {
  std::vector<int> order(profile.begin(), profile.end());
  std::sort(order.begin(), order.end());

  CountSpace space(0, k);
  std::vector<double> probs{1.0};
  std::vector<int> scratch(static_cast<std::size_t>(k));
  for (std::size_t player = 0; player < order.size(); ++player) {
    const std::vector<double> law = perturbed_action_law(order[player], k, delta);
    CountSpace grown(space.total() + 1, k);
    std::vector<double> next(grown.size(), 0.0);
    for (std::size_t r = 0; r < space.size(); ++r) {
      if (probs[r] == 0.0) continue;
      const auto& counts = space.at(r).counts();
      std::copy(counts.begin(), counts.end(), scratch.begin());
      for (int j = 0; j < k; ++j) {
        const double w = law[static_cast<std::size_t>(j)];
        if (w == 0.0) continue;
        ++scratch[static_cast<std::size_t>(j)];
        next[grown.rank(scratch)] += probs[r] * w;
        --scratch[static_cast<std::size_t>(j)];
      }
    }
    space = std::move(grown);
    probs = std::move(next);
  }
  return CountDistribution(std::move(space), std::move(probs));
}

double shifted_tv(const CountDistribution& d, int j1, int j2) {
  const int k = d.actions();
  if (j1 < 0 || j1 >= k || j2 < 0 || j2 >= k) {
    throw std::invalid_argument("shifted_tv: action outside [0, k)");
  }
  if (j1 == j2) return 0.0;
  const CountSpace shifted(d.total() + 1, k);
  std::vector<double> diff(shifted.size(), 0.0);
  std::vector<int> scratch(static_cast<std::size_t>(k));
  const auto probs = d.probs();
  for (std::size_t r = 0; r < d.space().size(); ++r) {
    const auto& counts = d.space().at(r).counts();
    std::copy(counts.begin(), counts.end(), scratch.begin());
    ++scratch[static_cast<std::size_t>(j1)];
    diff[shifted.rank(scratch)] += probs[r];
    --scratch[static_cast<std::size_t>(j1)];
    ++scratch[static_cast<std::size_t>(j2)];
    diff[shifted.rank(scratch)] -= probs[r];
  }
  double l1 = 0.0;
  for (double v : diff) l1 += std::abs(v);
  return 0.5 * l1;
}

}  // namespace anonlip
