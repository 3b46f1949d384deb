// Acceptance suite: one [PASS]/[FAIL] line per criterion. Exit status is the
// number of failed criteria (capped at 1 for ctest).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "anonlip/coupling.hpp"
#include "anonlip/equilibrium.hpp"
#include "anonlip/lipschitz.hpp"
#include "anonlip/oracle.hpp"
#include "anonlip/poisson_binomial.hpp"
#include "anonlip/walk.hpp"
#include "cli/app.hpp"

namespace {

using namespace anonlip;

// Pinned tolerances.
constexpr double kOracleTol = 1e-9;
constexpr double kEvenFormTol = 1e-12;
constexpr double kSandwichSlack = 1e-12;
constexpr double kReflectionTol = 1e-12;
constexpr double kDualTvTol = 1e-12;
constexpr double kRatioTol = 0.05;
constexpr double kRatioGate = 100.0;      // n delta / k
constexpr double kRatioMonotoneSlack = 1e-12;
constexpr double kDecayFactor = 2.0;
constexpr double kSigmas = 4.0;
constexpr std::uint64_t kReplications = 1'000'000;
constexpr double kRegretSlack = 1e-9;
constexpr double kPartyFloor = 0.5;
constexpr double kPartyDelta = 0.3;

const std::vector<double> kDeltaGrid{0.1, 0.25, 0.5, 0.75, 0.9};

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome c1_k3_oracle() {
  double worst = 0.0;
  int cases = 0;
  for (int k : {3, 4}) {
    for (int n = 2; n <= 8; ++n) {
      for (double d : kDeltaGrid) {
        worst = std::max(worst, std::abs(lambda_k3(n, k, d).value - lambda_oracle(n, k, d).value));
        ++cases;
      }
    }
  }
  return {worst <= kOracleTol, fmt::format("{} cases, max |diff| {:.3g} (tol {:g})", cases, worst, kOracleTol)};
}

Outcome c2_k2_oracle() {
  double worst_oracle = 0.0;
  for (int n = 2; n <= 12; ++n) {
    for (double d : kDeltaGrid) {
      worst_oracle = std::max(worst_oracle, std::abs(lambda_k2(n, d).value - lambda_oracle(n, 2, d).value));
    }
  }
  double worst_even = 0.0;
  for (int n = 2; n <= 100; n += 2) {
    for (double d : kDeltaGrid) {
      worst_even = std::max(worst_even, std::abs(lambda_k2(n, d).value - lambda_k2_even(n, d)));
    }
  }
  return {worst_oracle <= kOracleTol && worst_even <= kEvenFormTol,
          fmt::format("oracle max |diff| {:.3g} (tol {:g}); even form max |diff| {:.3g} (tol {:g})",
                      worst_oracle, kOracleTol, worst_even, kEvenFormTol)};
}

Outcome c3_odd_sandwich() {
  int violations = 0;
  int cases = 0;
  double min_gap_low = 1.0;
  double min_gap_high = 1.0;
  for (int n = 3; n <= 99; n += 2) {
    for (double d : kDeltaGrid) {
      const double v = lambda_k2(n, d).value;
      const double lo = lambda_k2_even(n + 1, d);
      const double hi = std::sqrt(lambda_k2_even(n - 1, d) * lambda_k2_even(n + 1, d));
      ++cases;
      if (!(v >= lo && v <= hi + kSandwichSlack)) ++violations;
      min_gap_low = std::min(min_gap_low, v - lo);
      min_gap_high = std::min(min_gap_high, hi - v);
    }
  }
  return {violations == 0, fmt::format("{} cases, {} violations, min margins {:.3g} / {:.3g}", cases,
                                       violations, min_gap_low, min_gap_high)};
}

Outcome c4_reflection() {
  double worst = 0.0;
  for (double r : {0.01, 0.1, 0.25, 0.5, 0.75, 1.0}) {
    for (int n = 0; n <= 200; ++n) {
      const WalkParams p(n, r);
      worst = std::max(worst, std::abs(stay_below_prob(p) - passage_prob(p)));
    }
  }
  return {worst <= kReflectionTol, fmt::format("max |diff| {:.3g} (tol {:g})", worst, kReflectionTol)};
}

Outcome c5_mode_and_tv() {
  std::mt19937_64 rng(20240501);
  std::uniform_int_distribution<int> length(1, 30);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> shift(-5, 5);
  int bad_mode = 0;
  double worst_tv = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int m = length(rng);
    std::vector<double> probs(static_cast<std::size_t>(m));
    std::vector<Sign> signs(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      probs[static_cast<std::size_t>(i)] = unit(rng);
      signs[static_cast<std::size_t>(i)] = unit(rng) < 0.3 ? Sign::minus : Sign::plus;
    }
    const PoissonBinomial x(probs, shift(rng), signs);
    const double mu = x.mean();
    const std::int64_t mode = pb_mode(x);
    if (mode != static_cast<std::int64_t>(std::floor(mu)) &&
        mode != static_cast<std::int64_t>(std::ceil(mu))) {
      ++bad_mode;
    }
    const IntegerPmf pmf = pb_pmf(x);
    double peak = 0.0;
    double half_l1 = 0.0;
    for (std::int64_t t = pmf.min_support(); t <= pmf.max_support() + 1; ++t) {
      peak = std::max(peak, pmf(t));
      half_l1 += std::abs(pmf(t) - pmf(t - 1));
    }
    half_l1 *= 0.5;
    worst_tv = std::max({worst_tv, std::abs(peak - half_l1), std::abs(tv_shift(x) - peak)});
  }
  return {bad_mode == 0 && worst_tv <= kDualTvTol,
          fmt::format("200 instances, {} mode violations, max TV disagreement {:.3g} (tol {:g})",
                      bad_mode, worst_tv, kDualTvTol)};
}

Outcome c6_convergence() {
  bool ok = true;
  double worst_gated = 0.0;
  int gated = 0;
  std::string where;
  for (int k : {2, 3, 5}) {
    for (double d : {0.1, 0.3}) {
      double previous = std::numeric_limits<double>::infinity();
      for (int e = 7; e <= 14; ++e) {
        const std::int64_t n = std::int64_t{1} << e;
        const double dev = std::abs(lambda(n, k, d).value / asymptotic_estimate(n, k, d) - 1.0);
        if (dev > previous + kRatioMonotoneSlack) {
          ok = false;
          where += fmt::format(" non-monotone at k={} delta={} n={};", k, d, n);
        }
        previous = dev;
        if (static_cast<double>(n) * d / k >= kRatioGate) {
          ++gated;
          worst_gated = std::max(worst_gated, dev);
          if (dev > kRatioTol) {
            ok = false;
            where += fmt::format(" |ratio-1|={:.3g} at k={} delta={} n={};", dev, k, d, n);
          }
        }
      }
    }
  }
  return {ok, fmt::format("{} gated points, max |ratio-1| {:.3g} (tol {:g}); monotone in n{}", gated,
                          worst_gated, kRatioTol, where)};
}

Outcome c7_error_decay() {
  double c_hat = 0.0;
  std::string values;
  bool ok = true;
  for (int m : {16, 64, 256, 1024, 4096}) {
    const NormalApproxError e = normal_approx_error(PoissonBinomial(std::vector<double>(static_cast<std::size_t>(m), 0.5)));
    const double scaled = e.max_error * e.sigma;
    if (m == 16) c_hat = kDecayFactor * scaled;
    ok = ok && scaled <= c_hat;
    values += fmt::format(" m={}:{:.4g}", m, scaled);
  }
  return {ok, fmt::format("error*sigma{} (bound {:.4g})", values, c_hat)};
}

Outcome c8_coupling() {
  bool ok = true;
  std::string detail;
  struct Triple {
    int n, k;
    double delta;
  };
  for (const Triple t : {Triple{20, 3, 0.3}, Triple{50, 4, 0.5}, Triple{10, 2, 0.2}}) {
    CouplingConfig cfg;
    cfg.steps = t.n;
    cfg.actions = t.k;
    cfg.delta = t.delta;
    cfg.samples = kReplications;
    cfg.seed = 0x5eed'0000 + static_cast<std::uint64_t>(t.n);
    const auto start = std::chrono::steady_clock::now();
    const MeetTimeHistogram h = simulate_meet_time(cfg);
    const CouplingEstimate e = simulate_coupling(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double exact = passage_prob(WalkParams(t.n, 2.0 * t.delta / t.k));
    const double z = (e.estimate - exact) / e.std_error;

    const double moves = static_cast<double>(h.gap_moves[0] + h.gap_moves[1] + h.gap_moves[2]);
    const double step = t.delta / t.k;
    const double rates[3] = {step, 1.0 - 2.0 * step, step};
    double worst_gap_z = 0.0;
    for (int m = 0; m < 3; ++m) {
      const double freq = static_cast<double>(h.gap_moves[static_cast<std::size_t>(m)]) / moves;
      worst_gap_z = std::max(worst_gap_z, std::abs(freq - rates[m]) / std::sqrt(rates[m] * (1 - rates[m]) / moves));
    }
    const bool pass = std::abs(z) <= kSigmas && worst_gap_z <= kSigmas && h.persistence_violations == 0;
    ok = ok && pass;
    detail += fmt::format(" ({},{},{}): z={:.2f} gap max|z|={:.2f} {:.1f}s;", t.n, t.k, t.delta, z,
                          worst_gap_z, secs);
  }
  return {ok, fmt::format("{} replications each, bound {} sigma;{}", kReplications, kSigmas, detail)};
}

Outcome c9_regret_bound() {
  std::mt19937_64 rng(9090);
  std::uniform_int_distribution<int> players(2, 7);
  std::uniform_int_distribution<int> actions(2, 3);
  int failures = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 50; ++i) {
    const int n = players(rng);
    const int k = actions(rng);
    const AnonymousGame g = random_game(n, k, 1000 + static_cast<std::uint64_t>(i));
    for (double d : {0.1, 0.3}) {
      const double bound = 2.0 * k * lambda(n, k, d).value + kRegretSlack;
      const EquilibriumSearch s = min_max_regret(g, d);
      if (s.best_max_regret > bound) ++failures;
      worst_slack = std::min(worst_slack, bound - s.best_max_regret);
    }
  }
  return {failures == 0, fmt::format("50 games x 2 deltas, {} above bound, min slack {:.3g}", failures,
                                     worst_slack)};
}

Outcome c10_party() {
  int games = 0;
  int base_failures = 0;
  int perturbed_failures = 0;
  double least_base = std::numeric_limits<double>::infinity();
  for (int n = 2; n <= 8; ++n) {
    const double eps = 2.0 * 2 * lambda(n, 2, kPartyDelta).value + kRegretSlack;
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
      std::vector<Parity> prefs;
      for (int i = 0; i < n; ++i) prefs.push_back((mask >> i) & 1u ? Parity::odd : Parity::even);
      const AnonymousGame g = party_game(n, prefs);
      ++games;
      const double base = min_max_regret(g, 0.0).best_max_regret;
      least_base = std::min(least_base, base);
      if (base < kPartyFloor) ++base_failures;
      if (!find_eps_nash(g, kPartyDelta, eps).profile) ++perturbed_failures;
    }
  }
  return {base_failures == 0 && perturbed_failures == 0,
          fmt::format("{} games, least unperturbed min-max regret {:.4g} (floor {}), {} without a "
                      "perturbed profile at auto epsilon",
                      games, least_base, kPartyFloor, perturbed_failures)};
}

std::string capture(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = cli::run_cli(args, out, err);
  return fmt::format("{}\n{}{}", status, out.str(), err.str());
}

Outcome c11_determinism() {
  const std::vector<std::vector<std::string>> suite{
      {"sweep", "--n-start", "2", "--n-stop", "200", "--n-step", "3", "--k", "2", "--deltas", "0.1,0.3,0.7"},
      {"sweep", "--n-start", "2", "--n-stop", "200", "--n-step", "7", "--k", "4", "--deltas", "0.25,0.5"},
      {"lambda", "--n", "9", "--k", "3", "--delta", "0.3", "--method", "both", "--json"},
      {"coupling", "--n", "30", "--k", "3", "--delta", "0.4", "--samples", "200000", "--seed", "17", "--json"},
      {"meet-time", "--n", "15", "--k", "2", "--delta", "0.2", "--samples", "100000", "--seed", "3", "--json"},
      {"equilibrium", "--random", "6", "--actions", "3", "--seed", "41", "--delta", "0.3", "--json"},
      {"delta-star", "--n", "500", "--k", "3", "--json"},
      {"verify", "--json"},
  };
  int mismatches = 0;
  for (const auto& args : suite) {
    auto alt = args;
    if (args[0] == "sweep") alt.insert(alt.end(), {"--jobs", "5"});
    if (args[0] == "coupling" || args[0] == "meet-time") alt.insert(alt.end(), {"--workers", "3"});
    const std::string first = capture(args);
    if (first.rfind("0\n", 0) != 0 || capture(args) != first || capture(alt) != first) ++mismatches;
  }
  return {mismatches == 0, fmt::format("{} commands run three times (varying workers), {} mismatches",
                                       suite.size(), mismatches)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "k>=3 closed form equals oracle", c1_k3_oracle},
      {2, "k=2 closed form equals oracle and even-n form", c2_k2_oracle},
      {3, "k=2 odd-n sandwich", c3_odd_sandwich},
      {4, "reflection: stay-below equals passage", c4_reflection},
      {5, "Poisson-Binomial mode and dual TV", c5_mode_and_tv},
      {6, "ratio to asymptotic estimate converges", c6_convergence},
      {7, "normal approximation error decays like 1/sigma", c7_error_decay},
      {8, "mirror coupling simulation", c8_coupling},
      {9, "regret bound on random games", c9_regret_bound},
      {10, "party games", c10_party},
      {11, "determinism of CSV and JSON output", c11_determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << fmt::format("[{}] {:>2} {}: {} [{:.1f}s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                             o.detail, secs)
              << std::flush;
    failed += o.pass ? 0 : 1;
  }
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failed),
                           criteria.size());
  return failed == 0 ? 0 : 1;
}
