#include "anonlip/oracle.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "anonlip/errors.hpp"

namespace anonlip {

OracleResult lambda_oracle(int n, int k, double delta, OracleBudget budget) {
  if (n < 2) throw std::invalid_argument("lambda_oracle: n must be >= 2");
  if (k < 2) throw std::invalid_argument("lambda_oracle: k must be >= 2");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("lambda_oracle: delta must lie in (0, 1)");
  }
  if (n > budget.max_players || k > budget.max_actions) {
    throw BudgetExceeded("lambda_oracle: instance n=" + std::to_string(n) +
                         ", k=" + std::to_string(k) + " exceeds budget n <= " +
                         std::to_string(budget.max_players) + ", k <= " +
                         std::to_string(budget.max_actions));
  }

  const CountSpace classes(n - 2, k);
  std::vector<double> tv(classes.size());
  double best = 0.0;
  std::vector<int> profile;
  for (std::size_t r = 0; r < classes.size(); ++r) {
    const auto& counts = classes.at(r).counts();
    profile.clear();
    for (int j = 0; j < k; ++j) profile.insert(profile.end(), static_cast<std::size_t>(counts[static_cast<std::size_t>(j)]), j);
    tv[r] = shifted_tv(count_distribution(profile, k, delta), 0, 1);
    if (tv[r] > best) best = tv[r];
  }
  std::size_t witness = 0;
  while (tv[witness] < best - 1e-13) ++witness;
  return {(1.0 - delta) * best, classes.at(witness)};
}

}  // namespace anonlip
