#include "anonlip/integer_pmf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace anonlip {

IntegerPmf::IntegerPmf() : offset_(0), probs_{1.0} {}

IntegerPmf::IntegerPmf(std::int64_t offset, std::vector<double> probs)
    : offset_(offset), probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw std::invalid_argument("IntegerPmf: empty probability vector");
  }
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) {
      throw std::invalid_argument("IntegerPmf: negative or non-finite entry " +
                                  std::to_string(p));
    }
  }
  const double sum = total();
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("IntegerPmf: entries sum to " +
                                std::to_string(sum));
  }
}

IntegerPmf IntegerPmf::point_mass(std::int64_t at) {
  return IntegerPmf(at, std::vector<double>{1.0});
}

double IntegerPmf::operator()(std::int64_t t) const noexcept {
  if (t < min_support() || t > max_support()) return 0.0;
  return probs_[static_cast<std::size_t>(t - offset_)];
}

double IntegerPmf::total() const noexcept {
  return std::accumulate(probs_.begin(), probs_.end(), 0.0);
}

double IntegerPmf::mean() const noexcept {
  double m = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    m += probs_[i] * static_cast<double>(offset_ + static_cast<std::int64_t>(i));
  }
  return m;
}

double IntegerPmf::variance() const noexcept {
  const double mu = mean();
  double v = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    const double d =
        static_cast<double>(offset_ + static_cast<std::int64_t>(i)) - mu;
    v += probs_[i] * d * d;
  }
  return v;
}

IntegerPmf IntegerPmf::shifted(std::int64_t by) const {
  IntegerPmf out = *this;
  out.offset_ += by;
  return out;
}

double total_variation(const IntegerPmf& a, const IntegerPmf& b) noexcept {
  const std::int64_t lo = std::min(a.min_support(), b.min_support());
  const std::int64_t hi = std::max(a.max_support(), b.max_support());
  double l1 = 0.0;
  for (std::int64_t t = lo; t <= hi; ++t) l1 += std::abs(a(t) - b(t));
  return 0.5 * l1;
}

}  // namespace anonlip
