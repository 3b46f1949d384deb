#pragma once

#include "anonlip/counts.hpp"

namespace anonlip {

/// Largest instance lambda_oracle agrees to evaluate.
struct OracleBudget {
  int max_players = 14;
  int max_actions = 4;
};

struct OracleResult {
  double value;
  /// Count class of the n - 2 bystanders attaining the maximum: the
  /// lexicographically smallest class within 1e-13 of it.
  CountVector worst_class;
};

/// lambda(n, k, delta) straight from its total-variation definition:
/// (1 - delta) times the maximum over count classes c of n - 2 bystanders of
/// d_TV(e_0 + N, e_1 + N), N the perturbed occupancy law of c.
///
/// Throws std::invalid_argument for n < 2, k < 2 or delta outside (0, 1),
/// and BudgetExceeded when n or k exceeds \p budget.
OracleResult lambda_oracle(int n, int k, double delta, OracleBudget budget = {});

}  // namespace anonlip
