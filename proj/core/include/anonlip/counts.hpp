#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace anonlip {

/// Occupancy vector: counts()[j] players take action j. Actions are
/// 0-based throughout the library.
class CountVector {
 public:
  CountVector() = default;
  explicit CountVector(std::vector<int> counts);

  int actions() const noexcept { return static_cast<int>(counts_.size()); }
  int total() const noexcept { return total_; }
  int operator[](int action) const { return counts_.at(static_cast<std::size_t>(action)); }
  const std::vector<int>& counts() const noexcept { return counts_; }

  /// Occupancy vector of a pure profile.
  static CountVector of_profile(std::span<const int> profile, int actions);

  friend bool operator==(const CountVector&, const CountVector&) = default;
  friend auto operator<=>(const CountVector& a, const CountVector& b) {
    return a.counts_ <=> b.counts_;
  }

 private:
  std::vector<int> counts_;
  int total_ = 0;
};

/// Binomial coefficient as an unsigned 64-bit integer; throws
/// std::overflow_error if the result does not fit.
std::uint64_t binomial(int n, int r);

/// All compositions of `total` into `actions` nonnegative parts in ascending
/// lexicographic order, with O(actions) ranking.
class CountSpace {
 public:
  /// Throws std::invalid_argument unless total >= 0 and actions >= 1.
  CountSpace(int total, int actions);

  int total() const noexcept { return total_; }
  int actions() const noexcept { return actions_; }
  std::size_t size() const noexcept { return vectors_.size(); }

  const CountVector& at(std::size_t rank) const { return vectors_.at(rank); }
  const std::vector<CountVector>& vectors() const noexcept { return vectors_; }

  /// Lexicographic rank. Throws std::invalid_argument if \p c does not
  /// belong to this space.
  std::size_t rank(const CountVector& c) const;
  std::size_t rank(std::span<const int> counts) const;

 private:
  int total_;
  int actions_;
  std::vector<CountVector> vectors_;
};

/// Compositions of m into k parts; see CountSpace.
std::vector<CountVector> enumerate_count_vectors(int m, int k);

/// Law of the delta-perturbed action: 1 - delta + delta/k on \p action,
/// delta/k elsewhere. delta = 0 is accepted and gives the point mass used
/// when evaluating an unperturbed game.
std::vector<double> perturbed_action_law(int action, int k, double delta);

/// Law of N(a^delta) over a CountSpace.
class CountDistribution {
 public:
  CountDistribution(CountSpace space, std::vector<double> probs);

  const CountSpace& space() const noexcept { return space_; }
  int total() const noexcept { return space_.total(); }
  int actions() const noexcept { return space_.actions(); }
  std::span<const double> probs() const noexcept { return probs_; }
  double probability(const CountVector& c) const;

  friend bool operator==(const CountDistribution& a, const CountDistribution& b) {
    return a.total() == b.total() && a.actions() == b.actions() && a.probs_ == b.probs_;
  }

 private:
  CountSpace space_;
  std::vector<double> probs_;
};

/// Law of N(a^delta) for the pure profile \p profile. Players are convolved
/// in order of their action, so permuted profiles give bit-identical results.
CountDistribution count_distribution(std::span<const int> profile, int k,
                                     double delta);

/// d_TV(e_{j1} + N, e_{j2} + N) where N has law \p d.
double shifted_tv(const CountDistribution& d, int j1, int j2);

}  // namespace anonlip
