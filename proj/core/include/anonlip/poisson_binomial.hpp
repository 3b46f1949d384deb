#pragma once

#include <cstdint>
#include <vector>

#include "anonlip/integer_pmf.hpp"

namespace anonlip {

enum class Sign : int { plus = 1, minus = -1 };

/// X = shift + sum_i sign_i * B_i with independent B_i ~ Bernoulli(p_i).
class PoissonBinomial {
 public:
  /// Throws std::invalid_argument if some p_i lies outside [0, 1] or if
  /// \p signs is non-empty with a length different from \p probs.
  /// An empty \p signs means every term is added.
  explicit PoissonBinomial(std::vector<double> probs, std::int64_t shift = 0,
                           std::vector<Sign> signs = {});

  const std::vector<double>& probs() const noexcept { return probs_; }
  std::int64_t shift() const noexcept { return shift_; }
  Sign sign(std::size_t i) const noexcept {
    return signs_.empty() ? Sign::plus : signs_[i];
  }

  double mean() const noexcept;
  double variance() const noexcept;

 private:
  std::vector<double> probs_;
  std::int64_t shift_;
  std::vector<Sign> signs_;
};

/// Exact pmf by sequential convolution, one Bernoulli term at a time.
IntegerPmf pb_pmf(const PoissonBinomial& x);

/// Smallest t maximising P(X = t).
std::int64_t pb_mode(const PoissonBinomial& x);

/// d_TV(X, X + 1). Computed both as max_t P(X = t) and as half the L1
/// distance between the pmf and its unit shift; throws IntegrityError if the
/// two disagree by more than 1e-12. Returns the former.
double tv_shift(const PoissonBinomial& x);

struct NormalApproxError {
  double max_error;  ///< max_t |sigma P(X=t) - phi((t - mu) / sigma)|
  double sigma;
};

/// Local normal approximation error against the standard normal density.
/// Throws std::invalid_argument when the variance is zero.
NormalApproxError normal_approx_error(const PoissonBinomial& x);

/// Binomial(trials, q) pmf on [0, trials].
IntegerPmf binomial_pmf(std::int64_t trials, double q);

struct MStatResult {
  double value;
  std::int64_t argmax_l;
  std::int64_t argmax_s;
};

/// M(n, delta) = max over l in {0..n} and s of
///   P(X_1 + ... + X_l + (1 - X_{l+1}) + ... + (1 - X_n) = s)
/// with X_i i.i.d. Bernoulli(delta / 2). M(0, delta) = 1.
///
/// The law is invariant under (l, s) -> (n - l, n - s), so only l >= n/2 is
/// scanned; ties go to the smaller s, then the smaller l.
MStatResult m_stat(std::int64_t n, double delta);

/// P_n: probability that two i.i.d. Binomial(n, delta / 2) variables agree.
double p_stat(std::int64_t n, double delta);

}  // namespace anonlip
