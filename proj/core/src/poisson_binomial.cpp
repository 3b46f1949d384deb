#include "anonlip/poisson_binomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "anonlip/errors.hpp"

namespace anonlip {
namespace {

void check_delta(double delta, const char* who) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument(std::string(who) +
                                ": delta must lie in (0, 1), got " +
                                std::to_string(delta));
  }
}

double standard_normal_density(double x) {
  return std::exp(-0.5 * x * x) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2);
}

}  // namespace

PoissonBinomial::PoissonBinomial(std::vector<double> probs, std::int64_t shift,
                                 std::vector<Sign> signs)
    : probs_(std::move(probs)), shift_(shift), signs_(std::move(signs)) {
  for (double p : probs_) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument(
          "PoissonBinomial: success probability outside [0, 1]: " +
          std::to_string(p));
    }
  }
  if (!signs_.empty() && signs_.size() != probs_.size()) {
    throw std::invalid_argument(
        "PoissonBinomial: signs and probs have different lengths");
  }
}

double PoissonBinomial::mean() const noexcept {
  double mu = static_cast<double>(shift_);
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    mu += static_cast<int>(sign(i)) * probs_[i];
  }
  return mu;
}

double PoissonBinomial::variance() const noexcept {
  double var = 0.0;
  for (double p : probs_) var += p * (1.0 - p);
  return var;
}

IntegerPmf pb_pmf(const PoissonBinomial& x) {
  // A subtracted term -B equals (1 - B) - 1 with 1 - B ~ Bernoulli(1 - p),
  // so every term is convolved as an added Bernoulli and the offset absorbs
  // the -1.
  std::int64_t offset = x.shift();
  std::vector<double> pmf{1.0};
  pmf.reserve(x.probs().size() + 1);
  for (std::size_t i = 0; i < x.probs().size(); ++i) {
    double p = x.probs()[i];
    if (x.sign(i) == Sign::minus) {
      p = 1.0 - p;
      --offset;
    }
    pmf.push_back(0.0);
    for (std::size_t t = pmf.size() - 1; t > 0; --t) {
      pmf[t] = pmf[t] * (1.0 - p) + pmf[t - 1] * p;
    }
    pmf[0] *= 1.0 - p;
  }
  return IntegerPmf(offset, std::move(pmf));
}

std::int64_t pb_mode(const PoissonBinomial& x) {
  const IntegerPmf pmf = pb_pmf(x);
  const auto probs = pmf.probs();
  const auto it = std::max_element(probs.begin(), probs.end());
  return pmf.offset() + (it - probs.begin());
}

double tv_shift(const PoissonBinomial& x) {
  const IntegerPmf pmf = pb_pmf(x);
  const auto probs = pmf.probs();
  const double by_mode = *std::max_element(probs.begin(), probs.end());
  const double by_l1 = total_variation(pmf, pmf.shifted(1));
  if (std::abs(by_mode - by_l1) > 1e-12) {
    throw IntegrityError("tv_shift: mode value " + std::to_string(by_mode) +
                         " disagrees with L1 value " + std::to_string(by_l1));
  }
  return by_mode;
}

NormalApproxError normal_approx_error(const PoissonBinomial& x) {
  const double var = x.variance();
  if (!(var > 0.0)) {
    throw std::invalid_argument(
        "normal_approx_error: variance is zero (all p_i in {0, 1})");
  }
  const double sigma = std::sqrt(var);
  const double mu = x.mean();
  const IntegerPmf pmf = pb_pmf(x);
  double worst = 0.0;
  for (std::int64_t t = pmf.min_support(); t <= pmf.max_support(); ++t) {
    const double z = (static_cast<double>(t) - mu) / sigma;
    worst = std::max(worst, std::abs(sigma * pmf(t) - standard_normal_density(z)));
  }
  return {worst, sigma};
}

IntegerPmf binomial_pmf(std::int64_t trials, double q) {
  if (trials < 0) {
    throw std::invalid_argument("binomial_pmf: negative number of trials");
  }
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("binomial_pmf: q outside [0, 1]");
  }
  const auto size = static_cast<std::size_t>(trials) + 1;
  std::vector<double> pmf(size, 0.0);
  if (q == 0.0 || q == 1.0) {
    pmf[q == 0.0 ? 0 : size - 1] = 1.0;
    return IntegerPmf(0, std::move(pmf));
  }
  // Anchor at the mode with weight 1 and walk outwards with the ratio
  // P(t+1)/P(t) = (n-t)/(t+1) * q/(1-q); normalising at the end avoids the
  // underflow of (1-q)^n for large n.
  const double odds = q / (1.0 - q);
  const auto mode = std::min<std::int64_t>(
      trials, static_cast<std::int64_t>(std::floor((trials + 1) * q)));
  const auto m = static_cast<std::size_t>(mode);
  pmf[m] = 1.0;
  for (std::size_t t = m; t + 1 < size; ++t) {
    pmf[t + 1] = pmf[t] * odds * static_cast<double>(trials - static_cast<std::int64_t>(t)) /
                 static_cast<double>(t + 1);
  }
  for (std::size_t t = m; t > 0; --t) {
    pmf[t - 1] = pmf[t] / odds * static_cast<double>(t) /
                 static_cast<double>(trials - static_cast<std::int64_t>(t) + 1);
  }
  double sum = 0.0;
  for (double v : pmf) sum += v;
  for (double& v : pmf) v /= sum;
  return IntegerPmf(0, std::move(pmf));
}

MStatResult m_stat(std::int64_t n, double delta) {
  check_delta(delta, "m_stat");
  if (n < 0) throw std::invalid_argument("m_stat: n must be >= 0");
  if (n == 0) return {1.0, 0, 0};

  const double q = 0.5 * delta;
  MStatResult best{-1.0, 0, 0};
  for (std::int64_t l = (n + 1) / 2; l <= n; ++l) {
    // Sum = A + (n - l) - B with A ~ Bin(l, q), B ~ Bin(n - l, q).
    const IntegerPmf a = binomial_pmf(l, q);
    const IntegerPmf b = binomial_pmf(n - l, q);
    const double mu = static_cast<double>(l) * q + static_cast<double>(n - l) * (1.0 - q);
    const auto s_lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(mu)) - 1);
    const auto s_hi = std::min<std::int64_t>(n, static_cast<std::int64_t>(std::ceil(mu)) + 1);
    for (std::int64_t s = s_lo; s <= s_hi; ++s) {
      // P(A - B = s - (n - l)) = sum_u P(A = u) P(B = u - s + n - l).
      const std::int64_t gap = n - l - s;
      double prob = 0.0;
      const std::int64_t u_lo = std::max<std::int64_t>(0, -gap);
      const std::int64_t u_hi = std::min<std::int64_t>(l, n - l - gap);
      for (std::int64_t u = u_lo; u <= u_hi; ++u) prob += a(u) * b(u + gap);
      const bool better =
          prob > best.value ||
          (prob == best.value &&
           (s < best.argmax_s || (s == best.argmax_s && l < best.argmax_l)));
      if (better) best = {prob, l, s};
    }
  }
  return best;
}

double p_stat(std::int64_t n, double delta) {
  check_delta(delta, "p_stat");
  if (n < 0) throw std::invalid_argument("p_stat: n must be >= 0");
  const IntegerPmf b = binomial_pmf(n, 0.5 * delta);
  double sum = 0.0;
  for (double v : b.probs()) sum += v * v;
  return sum;
}

}  // namespace anonlip
