#include "anonlip/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

namespace anonlip {
namespace {

std::vector<int> resolve_baseline(const CouplingConfig& c) {
  if (c.steps < 0) throw std::invalid_argument("coupling: steps must be >= 0");
  if (c.actions < 2) throw std::invalid_argument("coupling: k must be >= 2");
  if (!(c.delta > 0.0 && c.delta < 1.0)) {
    throw std::invalid_argument("coupling: delta must lie in (0, 1)");
  }
  if (c.samples < 1) throw std::invalid_argument("coupling: samples must be >= 1");
  if (!c.baseline) {
    return std::vector<int>(static_cast<std::size_t>(c.steps), c.actions >= 3 ? 2 : 0);
  }
  const auto& a = *c.baseline;
  if (a.size() != static_cast<std::size_t>(c.steps)) {
    throw std::invalid_argument("coupling: baseline must have one action per step");
  }
  for (int v : a) {
    if (v < 0 || v >= c.actions) {
      throw std::invalid_argument("coupling: baseline action " + std::to_string(v) +
                                  " out of range");
    }
  }
  return a;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Runs replications [first, last) of one block into `out`.
void run_block(const CouplingConfig& c, const std::vector<int>& baseline,
               std::uint64_t block, std::uint64_t first, std::uint64_t last,
               MeetTimeHistogram& out) {
  std::seed_seq seq{static_cast<std::uint32_t>(c.seed),
                    static_cast<std::uint32_t>(c.seed >> 32),
                    static_cast<std::uint32_t>(block),
                    static_cast<std::uint32_t>(block >> 32)};
  std::mt19937_64 rng(seq);
  const int k = c.actions;
  const int n = c.steps;
  std::vector<int> z(static_cast<std::size_t>(k)), zp(static_cast<std::size_t>(k));

  for (std::uint64_t rep = first; rep < last; ++rep) {
    std::fill(z.begin(), z.end(), 0);
    std::fill(zp.begin(), zp.end(), 0);
    z[0] = 1;
    zp[1] = 1;
    bool met = false;
    int first_meet = n + 1;
    for (int i = 0; i < n; ++i) {
      const bool chi = uniform01(rng) < c.delta;
      const int u = std::min(k - 1, static_cast<int>(uniform01(rng) * k));
      const int u_prime = (!met && u <= 1) ? 1 - u : u;
      const int base = baseline[static_cast<std::size_t>(i)];
      const int x = chi ? u : base;
      const int xp = chi ? u_prime : base;

      const int gap_before = 1 - z[0] + zp[0];
      ++z[static_cast<std::size_t>(x)];
      ++zp[static_cast<std::size_t>(xp)];
      ++out.coupled_marginals[static_cast<std::size_t>(i)][static_cast<std::size_t>(xp)];
      if (!met) {
        const int gap_after = 1 - z[0] + zp[0];
        ++out.gap_moves[static_cast<std::size_t>(gap_after - gap_before + 1)];
      }
      const bool equal = z == zp;
      if (met && !equal) ++out.persistence_violations;
      if (!met && equal) {
        met = true;
        first_meet = i + 1;
      }
    }
    ++out.first_meet[static_cast<std::size_t>(first_meet)];
  }
}

void merge(MeetTimeHistogram& into, const MeetTimeHistogram& from) {
  for (std::size_t i = 0; i < into.first_meet.size(); ++i) into.first_meet[i] += from.first_meet[i];
  for (std::size_t i = 0; i < 3; ++i) into.gap_moves[i] += from.gap_moves[i];
  into.persistence_violations += from.persistence_violations;
  for (std::size_t i = 0; i < into.coupled_marginals.size(); ++i) {
    for (std::size_t j = 0; j < into.coupled_marginals[i].size(); ++j) {
      into.coupled_marginals[i][j] += from.coupled_marginals[i][j];
    }
  }
}

MeetTimeHistogram empty_histogram(const CouplingConfig& c) {
  MeetTimeHistogram h;
  h.first_meet.assign(static_cast<std::size_t>(c.steps) + 2, 0);
  h.coupled_marginals.assign(static_cast<std::size_t>(c.steps),
                             std::vector<std::uint64_t>(static_cast<std::size_t>(c.actions), 0));
  h.samples = c.samples;
  h.seed = c.seed;
  return h;
}

}  // namespace

MeetTimeHistogram simulate_meet_time(const CouplingConfig& config) {
  const std::vector<int> baseline = resolve_baseline(config);
  const std::uint64_t blocks = (config.samples + kCouplingBlock - 1) / kCouplingBlock;
  unsigned workers = config.workers != 0 ? config.workers : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, blocks));

  // Worker w handles blocks w, w + workers, ...; counts are integers so the
  // merged result does not depend on the partition.
  std::vector<MeetTimeHistogram> partial(workers, empty_histogram(config));
  auto work = [&](unsigned w) {
    for (std::uint64_t b = w; b < blocks; b += workers) {
      const std::uint64_t first = b * kCouplingBlock;
      const std::uint64_t last = std::min(config.samples, first + kCouplingBlock);
      run_block(config, baseline, b, first, last, partial[w]);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  MeetTimeHistogram total = empty_histogram(config);
  for (const auto& p : partial) merge(total, p);
  return total;
}

CouplingEstimate simulate_coupling(const CouplingConfig& config) {
  const MeetTimeHistogram h = simulate_meet_time(config);
  const auto unmet = h.first_meet.back();
  const double estimate = static_cast<double>(unmet) / static_cast<double>(h.samples);
  return {estimate, std::sqrt(estimate * (1.0 - estimate) / static_cast<double>(h.samples)),
          h.samples, h.seed};
}

}  // namespace anonlip
