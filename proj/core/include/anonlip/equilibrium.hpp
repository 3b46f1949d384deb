#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "anonlip/counts.hpp"

namespace anonlip {

using Profile = std::vector<int>;

/// n-player k-action anonymous game. Player i's payoff depends on their own
/// action and the occupancy vector of the other n - 1 players; payoffs lie
/// in [0, 1].
///
/// Storage is dense in (player, action, rank) order, where rank is the
/// lexicographic rank of the opponents' count vector in CountSpace(n-1, k).
class AnonymousGame {
 public:
  /// Throws std::invalid_argument unless n >= 2, k >= 2, the table has
  /// n * k * C(n + k - 2, k - 1) entries and every entry is in [0, 1].
  AnonymousGame(int players, int actions, std::vector<double> payoffs);

  using PayoffFn = std::function<double(int player, int action, const CountVector& opponents)>;
  static AnonymousGame from_function(int players, int actions, const PayoffFn& fn);

  int players() const noexcept { return players_; }
  int actions() const noexcept { return actions_; }
  const CountSpace& opponent_space() const noexcept { return opponents_; }
  std::span<const double> table() const noexcept { return payoffs_; }

  double payoff(int player, int action, std::size_t opponent_rank) const;
  double payoff(int player, int action, const CountVector& opponents) const;

  /// Unperturbed payoff g_i(a).
  double pure_payoff(std::span<const int> profile, int player) const;

 private:
  int players_;
  int actions_;
  CountSpace opponents_;
  std::vector<double> payoffs_;
};

// In the functions below delta = 0 evaluates the unperturbed game g; any
// delta in (0, 1) evaluates the perturbed game g^delta.

/// E[g_i(a^delta)], exact.
double perturbed_payoff(const AnonymousGame& g, std::span<const int> profile,
                        int player, double delta);

struct PlayerRegret {
  int best_deviation;  ///< current action when no deviation is profitable
  double regret;
};

struct RegretReport {
  double max_regret = 0.0;
  std::vector<PlayerRegret> per_player;
};

/// Pure-deviation regret of \p profile in g^delta.
RegretReport regret(const AnonymousGame& g, std::span<const int> profile, double delta);

/// Regret in the unperturbed game g of the mixed profile a^delta against
/// pure deviations. Bounded by delta + regret(g, a, delta).max_regret.
RegretReport mixed_regret_in_base(const AnonymousGame& g, std::span<const int> profile,
                                  double delta);

struct SearchBudget {
  std::uint64_t max_profiles = 10'000'000;
};

struct EquilibriumSearch {
  /// Lexicographically first pure profile with max regret <= epsilon.
  std::optional<Profile> profile;
  /// Regret of *profile, or of `best` when no profile qualified.
  RegretReport report;
  /// Profile with the smallest max regret among those scanned.
  Profile best;
  double best_max_regret;
  std::uint64_t scanned;
};

/// Exhaustive scan of [k]^n in lexicographic order. Stops at the first
/// profile with max regret <= epsilon; when none exists the whole space has
/// been scanned and `best` is the exact min-max profile. Throws
/// BudgetExceeded when k^n exceeds \p budget.
EquilibriumSearch find_eps_nash(const AnonymousGame& g, double delta, double epsilon,
                                SearchBudget budget = {});

/// Full scan returning the minimum over profiles of the max regret.
EquilibriumSearch min_max_regret(const AnonymousGame& g, double delta,
                                 SearchBudget budget = {});

enum class Parity { even, odd };

inline constexpr int kAttend = 0;
inline constexpr int kStay = 1;

/// Party game: action 0 attends, action 1 stays home. An attendee gets 1 when
/// the total attendance has their preferred parity and 0 otherwise; staying
/// home pays 1/2.
AnonymousGame party_game(int n, std::span<const Parity> preferences);

/// Payoffs i.i.d. uniform on [0, 1] from std::mt19937_64(seed), drawn in
/// table order using the top 53 bits of each output.
AnonymousGame random_game(int n, int k, std::uint64_t seed);

}  // namespace anonlip
