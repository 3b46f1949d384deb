#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace anonlip {

/// Mirror coupling of e_0 + sum X_i and e_1 + sum X'_i.
///
/// Each replication draws chi_i ~ Bernoulli(delta) and U_i ~ Uniform{0..k-1}
/// for i = 1..n and sets X_i = e_{U_i} if chi_i else e_{a_i}. X'_i uses the
/// same chi_i with U'_i = 1 - U_i whenever the chains have not met and
/// U_i is 0 or 1, and U'_i = U_i otherwise.
///
/// Randomness: replications are split into blocks of kCouplingBlock; block b
/// uses std::mt19937_64 seeded with std::seed_seq{seed_lo, seed_hi, b}.
/// Results depend only on (parameters, seed), never on the worker count.
struct CouplingConfig {
  int steps = 0;
  int actions = 3;
  double delta = 0.3;
  std::uint64_t samples = 1;
  std::uint64_t seed = 0;
  /// Baseline profile a (0-based actions, length steps). Defaults to all
  /// action 2 for k >= 3 and all action 0 for k = 2.
  std::optional<std::vector<int>> baseline;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;
};

inline constexpr std::uint64_t kCouplingBlock = 1u << 14;

struct CouplingEstimate {
  double estimate;   ///< fraction of replications with Z_n != Z'_n
  double std_error;  ///< sqrt(estimate (1 - estimate) / samples)
  std::uint64_t samples;
  std::uint64_t seed;
};

/// Throws std::invalid_argument for steps < 0, k < 2, delta outside (0, 1),
/// samples < 1, or a malformed baseline.
CouplingEstimate simulate_coupling(const CouplingConfig& config);

struct MeetTimeHistogram {
  /// first_meet[i] counts replications whose chains first agree after step
  /// i (1 <= i <= n); first_meet[n + 1] counts those that never met.
  /// first_meet[0] is always 0.
  std::vector<std::uint64_t> first_meet;
  /// Moves of the gap S_i = 1 - (Z_i)_0 + (Z'_i)_0 from a state S != 1:
  /// {down, stay, up}.
  std::array<std::uint64_t, 3> gap_moves{};
  /// Steps at which equal chains became unequal again (zero by construction).
  std::uint64_t persistence_violations = 0;
  /// coupled_marginals[i][j] counts X'_{i+1} = e_j.
  std::vector<std::vector<std::uint64_t>> coupled_marginals;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

MeetTimeHistogram simulate_meet_time(const CouplingConfig& config);

}  // namespace anonlip
