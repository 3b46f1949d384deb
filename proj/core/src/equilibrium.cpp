#include "anonlip/equilibrium.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "anonlip/errors.hpp"

namespace anonlip {
namespace {

void check_delta(double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw std::invalid_argument("equilibrium: delta must lie in [0, 1), got " +
                                std::to_string(delta));
  }
}

void check_profile(const AnonymousGame& g, std::span<const int> profile) {
  if (profile.size() != static_cast<std::size_t>(g.players())) {
    throw std::invalid_argument("profile has " + std::to_string(profile.size()) +
                                " entries, game has " + std::to_string(g.players()) +
                                " players");
  }
  for (int a : profile) {
    if (a < 0 || a >= g.actions()) {
      throw std::invalid_argument("profile action " + std::to_string(a) + " out of range");
    }
  }
}

std::size_t table_size(int n, int k) {
  return static_cast<std::size_t>(n) * static_cast<std::size_t>(k) *
         static_cast<std::size_t>(binomial(n + k - 2, k - 1));
}

// Evaluates one game at one delta. The opponents' occupancy law depends only
// on their count class, so laws are cached by its rank.
class Evaluator {
 public:
  Evaluator(const AnonymousGame& g, double delta)
      : g_(g), delta_(delta), cache_(g.opponent_space().size()) {
    for (int j = 0; j < g.actions(); ++j) laws_.push_back(perturbed_action_law(j, g.actions(), delta));
  }

  // values[j] = E[g_i(j, N(a_{-i}^delta))].
  void action_values(std::span<const int> profile, int player, std::vector<double>& values) {
    const int k = g_.actions();
    opponents_.assign(profile.begin(), profile.end());
    opponents_.erase(opponents_.begin() + player);
    const std::size_t cls =
        g_.opponent_space().rank(CountVector::of_profile(opponents_, k));
    if (!cache_[cls]) cache_[cls] = count_distribution(opponents_, k, delta_);
    const auto probs = cache_[cls]->probs();
    values.assign(static_cast<std::size_t>(k), 0.0);
    for (int j = 0; j < k; ++j) {
      double v = 0.0;
      for (std::size_t r = 0; r < probs.size(); ++r) {
        if (probs[r] != 0.0) v += probs[r] * g_.payoff(player, j, r);
      }
      values[static_cast<std::size_t>(j)] = v;
    }
  }

  double mix(int action, const std::vector<double>& values) const {
    const auto& law = laws_[static_cast<std::size_t>(action)];
    double v = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) v += law[j] * values[j];
    return v;
  }

  RegretReport regret(std::span<const int> profile) {
    RegretReport report;
    report.per_player.reserve(profile.size());
    std::vector<double> values;
    for (int i = 0; i < g_.players(); ++i) {
      action_values(profile, i, values);
      const int own = profile[static_cast<std::size_t>(i)];
      const double current = mix(own, values);
      PlayerRegret pr{own, 0.0};
      for (int b = 0; b < g_.actions(); ++b) {
        const double gain = mix(b, values) - current;
        if (gain > pr.regret) pr = {b, gain};
      }
      report.max_regret = std::max(report.max_regret, pr.regret);
      report.per_player.push_back(pr);
    }
    return report;
  }

 private:
  const AnonymousGame& g_;
  double delta_;
  std::vector<std::vector<double>> laws_;
  std::vector<std::optional<CountDistribution>> cache_;
  std::vector<int> opponents_;
};

std::uint64_t profile_count(const AnonymousGame& g, SearchBudget budget) {
  std::uint64_t total = 1;
  for (int i = 0; i < g.players(); ++i) {
    total *= static_cast<std::uint64_t>(g.actions());
    if (total > budget.max_profiles) {
      throw BudgetExceeded("equilibrium search: k^n = " + std::to_string(g.actions()) +
                           "^" + std::to_string(g.players()) + " exceeds budget of " +
                           std::to_string(budget.max_profiles) + " profiles");
    }
  }
  return total;
}

// Advances to the next profile in lexicographic order; false after the last.
bool next_profile(Profile& a, int k) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (++a[i] < k) return true;
    a[i] = 0;
  }
  return false;
}

EquilibriumSearch scan(const AnonymousGame& g, double delta,
                       std::optional<double> epsilon, SearchBudget budget) {
  check_delta(delta);
  profile_count(g, budget);
  Evaluator eval(g, delta);
  EquilibriumSearch out{std::nullopt, {}, {}, std::numeric_limits<double>::infinity(), 0};
  Profile a(static_cast<std::size_t>(g.players()), 0);
  do {
    RegretReport report = eval.regret(a);
    ++out.scanned;
    if (report.max_regret < out.best_max_regret) {
      out.best_max_regret = report.max_regret;
      out.best = a;
      out.report = report;
    }
    if (epsilon && report.max_regret <= *epsilon) {
      out.profile = a;
      out.report = std::move(report);
      return out;
    }
  } while (next_profile(a, g.actions()));
  return out;
}

}  // namespace

AnonymousGame::AnonymousGame(int players, int actions, std::vector<double> payoffs)
    : players_(players),
      actions_(actions),
      opponents_(players >= 2 ? players - 1 : 0, actions >= 1 ? actions : 1),
      payoffs_(std::move(payoffs)) {
  if (players < 2) throw std::invalid_argument("AnonymousGame: need n >= 2");
  if (actions < 2) throw std::invalid_argument("AnonymousGame: need k >= 2");
  const std::size_t expected = table_size(players, actions);
  if (payoffs_.size() != expected) {
    throw std::invalid_argument("AnonymousGame: payoff table has " +
                                std::to_string(payoffs_.size()) + " entries, expected " +
                                std::to_string(expected));
  }
  for (std::size_t i = 0; i < payoffs_.size(); ++i) {
    if (!(payoffs_[i] >= 0.0 && payoffs_[i] <= 1.0)) {
      throw std::invalid_argument("AnonymousGame: payoff entry " + std::to_string(i) +
                                  " = " + std::to_string(payoffs_[i]) +
                                  " outside [0, 1]");
    }
  }
}

AnonymousGame AnonymousGame::from_function(int players, int actions, const PayoffFn& fn) {
  if (players < 2 || actions < 2) {
    throw std::invalid_argument("AnonymousGame: need n >= 2 and k >= 2");
  }
  const CountSpace space(players - 1, actions);
  std::vector<double> table;
  table.reserve(table_size(players, actions));
  for (int i = 0; i < players; ++i) {
    for (int j = 0; j < actions; ++j) {
      for (const CountVector& c : space.vectors()) table.push_back(fn(i, j, c));
    }
  }
  return AnonymousGame(players, actions, std::move(table));
}

double AnonymousGame::payoff(int player, int action, std::size_t opponent_rank) const {
  if (player < 0 || player >= players_ || action < 0 || action >= actions_ ||
      opponent_rank >= opponents_.size()) {
    throw std::out_of_range("AnonymousGame::payoff: index out of range");
  }
  const std::size_t idx =
      (static_cast<std::size_t>(player) * static_cast<std::size_t>(actions_) +
       static_cast<std::size_t>(action)) * opponents_.size() + opponent_rank;
  return payoffs_[idx];
}

double AnonymousGame::payoff(int player, int action, const CountVector& opponents) const {
  return payoff(player, action, opponents_.rank(opponents));
}

double AnonymousGame::pure_payoff(std::span<const int> profile, int player) const {
  check_profile(*this, profile);
  Profile others(profile.begin(), profile.end());
  others.erase(others.begin() + player);
  return payoff(player, profile[static_cast<std::size_t>(player)],
                CountVector::of_profile(others, actions_));
}

double perturbed_payoff(const AnonymousGame& g, std::span<const int> profile, int player,
                        double delta) {
  check_delta(delta);
  check_profile(g, profile);
  if (player < 0 || player >= g.players()) {
    throw std::invalid_argument("perturbed_payoff: player out of range");
  }
  Evaluator eval(g, delta);
  std::vector<double> values;
  eval.action_values(profile, player, values);
  return eval.mix(profile[static_cast<std::size_t>(player)], values);
}

RegretReport regret(const AnonymousGame& g, std::span<const int> profile, double delta) {
  check_delta(delta);
  check_profile(g, profile);
  Evaluator eval(g, delta);
  return eval.regret(profile);
}

RegretReport mixed_regret_in_base(const AnonymousGame& g, std::span<const int> profile,
                                  double delta) {
  check_delta(delta);
  check_profile(g, profile);
  // Opponents play a^delta; the deviator compares its own mixed a_i^delta
  // with every pure action of g, i.e. the perturbation only on others.
  Evaluator eval(g, delta);
  RegretReport report;
  std::vector<double> values;
  for (int i = 0; i < g.players(); ++i) {
    eval.action_values(profile, i, values);
    const int own = profile[static_cast<std::size_t>(i)];
    const double current = eval.mix(own, values);
    PlayerRegret pr{own, 0.0};
    for (int b = 0; b < g.actions(); ++b) {
      const double gain = values[static_cast<std::size_t>(b)] - current;
      if (gain > pr.regret) pr = {b, gain};
    }
    report.max_regret = std::max(report.max_regret, pr.regret);
    report.per_player.push_back(pr);
  }
  return report;
}

EquilibriumSearch find_eps_nash(const AnonymousGame& g, double delta, double epsilon,
                                SearchBudget budget) {
  return scan(g, delta, epsilon, budget);
}

EquilibriumSearch min_max_regret(const AnonymousGame& g, double delta, SearchBudget budget) {
  return scan(g, delta, std::nullopt, budget);
}

AnonymousGame party_game(int n, std::span<const Parity> preferences) {
  if (n < 2) throw std::invalid_argument("party_game: need n >= 2");
  if (preferences.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("party_game: need one parity preference per player");
  }
  return AnonymousGame::from_function(n, 2, [&](int i, int j, const CountVector& others) {
    if (j == kStay) return 0.5;
    const int attendance = others[kAttend] + 1;
    const Parity parity = attendance % 2 == 0 ? Parity::even : Parity::odd;
    return parity == preferences[static_cast<std::size_t>(i)] ? 1.0 : 0.0;
  });
}

AnonymousGame random_game(int n, int k, std::uint64_t seed) {
  if (n < 2 || k < 2) throw std::invalid_argument("random_game: need n >= 2 and k >= 2");
  std::mt19937_64 rng(seed);
  std::vector<double> table(table_size(n, k));
  for (double& v : table) v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return AnonymousGame(n, k, std::move(table));
}

}  // namespace anonlip
