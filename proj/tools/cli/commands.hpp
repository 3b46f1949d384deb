#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "anonlip/oracle.hpp"
#include "anonlip/equilibrium.hpp"

namespace anonlip::cli {

// Every command writes its result to `out` and returns the process exit
// status. Failures are reported by throwing; run_cli turns them into a
// one-line error message.

/// Version of the structured (--json) output objects.
inline constexpr int kOutputSchemaVersion = 1;

/// All numbers are printed with 15 significant digits.
std::string format_number(double x);

/// x rounded to 15 significant digits, for JSON output.
double round15(double x);

enum class OutputFormat { text, json };

enum class LambdaMethodOption { formula, oracle, both };

struct LambdaOptions {
  int n = 2;
  int k = 3;
  double delta = 0.5;
  LambdaMethodOption method = LambdaMethodOption::formula;
  OracleBudget budget;
  OutputFormat format = OutputFormat::text;
};
int cmd_lambda(const LambdaOptions& opt, std::ostream& out);

enum class SweepFormat { csv, text };

struct SweepSpec {
  int n_start = 2;
  int n_stop = 2;
  int n_step = 1;
  int k = 3;
  std::vector<double> deltas{0.5};
  std::string output = "-";  ///< "-" writes to the command's output stream
  SweepFormat format = SweepFormat::csv;
  unsigned jobs = 0;          ///< 0 picks std::thread::hardware_concurrency()
};

inline constexpr const char* kSweepHeader = "n,k,delta,lambda,lower,upper,asymptotic,ratio";

/// Rows ordered by n (outer) then delta (inner); identical bytes for
/// identical specs regardless of `jobs`.
std::string render_sweep(const SweepSpec& spec);
int cmd_sweep(const SweepSpec& spec, std::ostream& out);

struct CouplingOptions {
  int n = 20;
  int k = 3;
  double delta = 0.3;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  std::optional<std::vector<int>> baseline;
  unsigned workers = 0;
  OutputFormat format = OutputFormat::text;
};
int cmd_coupling(const CouplingOptions& opt, std::ostream& out);
int cmd_meet_time(const CouplingOptions& opt, std::ostream& out);

struct EquilibriumOptions {
  enum class Source { file, party, random };
  Source source = Source::file;
  std::string game_file;
  int players = 0;                 ///< party / random
  std::string preferences;         ///< party: one 'e' or 'o' per player
  int actions = 2;                 ///< random
  std::uint64_t seed = 1;          ///< random
  double delta = 0.1;
  std::optional<double> epsilon;   ///< empty means auto: 2 k lambda + 1e-9
  SearchBudget budget;
  OutputFormat format = OutputFormat::text;
};
int cmd_equilibrium(const EquilibriumOptions& opt, std::ostream& out);

struct DeltaStarOptions {
  int n = 100;
  int k = 3;
  double tol = 1e-10;
  OutputFormat format = OutputFormat::text;
};
int cmd_delta_star(const DeltaStarOptions& opt, std::ostream& out);

struct VerifyOptions {
  int max_n_k3 = 8;
  std::vector<int> ks{3, 4};
  int max_n_k2 = 12;
  std::vector<double> deltas{0.1, 0.25, 0.5, 0.75, 0.9};
  double tolerance = 1e-9;
  OutputFormat format = OutputFormat::text;
};
/// Formula-vs-oracle grid; exits 1 when the largest deviation exceeds the
/// tolerance.
int cmd_verify(const VerifyOptions& opt, std::ostream& out);

/// Parses "e"/"o" characters into parities.
std::vector<Parity> parse_preferences(const std::string& text, int players);

}  // namespace anonlip::cli
