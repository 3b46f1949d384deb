#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace anonlip {

/// Probability mass function on a contiguous integer range
/// [offset, offset + size - 1]. Entries outside the range are zero.
///
/// The full range is kept even when tail entries are zero or negligible so
/// that identities between different computations compare like with like.
class IntegerPmf {
 public:
  /// Point mass at 0.
  IntegerPmf();

  /// Throws std::invalid_argument if \p probs is empty, has a negative or
  /// non-finite entry, or does not sum to 1 within 1e-9.
  IntegerPmf(std::int64_t offset, std::vector<double> probs);

  static IntegerPmf point_mass(std::int64_t at);

  std::int64_t offset() const noexcept { return offset_; }
  std::int64_t min_support() const noexcept { return offset_; }
  std::int64_t max_support() const noexcept {
    return offset_ + static_cast<std::int64_t>(probs_.size()) - 1;
  }
  std::size_t size() const noexcept { return probs_.size(); }
  std::span<const double> probs() const noexcept { return probs_; }

  /// P(X = t); zero outside the stored range.
  double operator()(std::int64_t t) const noexcept;

  double total() const noexcept;
  double mean() const noexcept;
  double variance() const noexcept;

  IntegerPmf shifted(std::int64_t by) const;

  friend bool operator==(const IntegerPmf&, const IntegerPmf&) = default;

 private:
  std::int64_t offset_;
  std::vector<double> probs_;
};

/// Total variation distance, half the L1 distance between the two pmfs.
double total_variation(const IntegerPmf& a, const IntegerPmf& b) noexcept;

}  // namespace anonlip
