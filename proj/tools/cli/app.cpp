#include "cli/app.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "anonlip/errors.hpp"
#include "cli/commands.hpp"
#include "cli/game_file.hpp"

namespace anonlip::cli {
namespace {

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    int v = 0;
    const char* first = text.data() + pos;
    const char* last = text.data() + end;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
      throw std::invalid_argument("expected comma-separated integers, got '" + text + "'");
    }
    values.push_back(v);
    pos = end + 1;
  }
  return values;
}

int parse_party_size(const std::string& text) {
  std::string digits = text;
  if (digits.rfind("n=", 0) == 0) digits = digits.substr(2);
  int n = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw std::invalid_argument("--party expects N or n=N, got '" + text + "'");
  }
  return n;
}

void add_oracle_budget(CLI::App* cmd, OracleBudget& b) {
  cmd->add_option("--max-players", b.max_players, "oracle refuses larger n")->capture_default_str();
  cmd->add_option("--max-actions", b.max_actions, "oracle refuses larger k")->capture_default_str();
}

void add_json_flag(CLI::App* cmd, OutputFormat& fmt) {
  cmd->add_flag_callback("--json", [&fmt] { fmt = OutputFormat::json; }, "structured output");
}

void print_error(std::ostream& err, const char* kind, const std::string& message) {
  err << "error[" << kind << "]: " << message << '\n';
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lipschitz constants of perturbed anonymous games", "anonlip"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "anonlip 0.1.0");

  int status = kExitOk;

  // lambda
  LambdaOptions lam;
  std::string lam_method = "formula";
  auto* c_lambda = app.add_subcommand("lambda", "Lipschitz constant of the perturbed game");
  c_lambda->add_option("--n", lam.n, "players")->required();
  c_lambda->add_option("--k", lam.k, "actions")->required();
  c_lambda->add_option("--delta", lam.delta, "perturbation in (0, 1)")->required();
  c_lambda->add_option("--method", lam_method, "formula | oracle | both")
      ->check(CLI::IsMember({"formula", "oracle", "both"}))
      ->capture_default_str();
  add_oracle_budget(c_lambda, lam.budget);
  add_json_flag(c_lambda, lam.format);
  c_lambda->callback([&] {
    lam.method = lam_method == "oracle" ? LambdaMethodOption::oracle
                 : lam_method == "both" ? LambdaMethodOption::both
                                        : LambdaMethodOption::formula;
    status = cmd_lambda(lam, out);
  });

  // sweep
  SweepSpec sweep;
  std::string sweep_format = "csv";
  auto* c_sweep = app.add_subcommand("sweep", "lambda over a grid of n and delta");
  c_sweep->add_option("--n-start", sweep.n_start)->required();
  c_sweep->add_option("--n-stop", sweep.n_stop)->required();
  c_sweep->add_option("--n-step", sweep.n_step)->capture_default_str();
  c_sweep->add_option("--k", sweep.k)->required();
  c_sweep->add_option("--deltas", sweep.deltas, "comma-separated")->delimiter(',')->required();
  c_sweep->add_option("--output", sweep.output, "file, or - for stdout")->capture_default_str();
  c_sweep->add_option("--format", sweep_format)->check(CLI::IsMember({"csv", "text"}))->capture_default_str();
  c_sweep->add_option("--jobs", sweep.jobs, "worker threads, 0 = all cores")->capture_default_str();
  c_sweep->callback([&] {
    sweep.format = sweep_format == "text" ? SweepFormat::text : SweepFormat::csv;
    status = cmd_sweep(sweep, out);
  });

  // coupling, meet-time
  CouplingOptions coup;
  std::string coup_baseline;
  auto add_coupling_options = [&](CLI::App* cmd) {
    cmd->add_option("--n", coup.n, "walk steps (players minus two)")->required();
    cmd->add_option("--k", coup.k)->capture_default_str();
    cmd->add_option("--delta", coup.delta)->capture_default_str();
    cmd->add_option("--samples", coup.samples)->capture_default_str();
    cmd->add_option("--seed", coup.seed)->capture_default_str();
    cmd->add_option("--baseline", coup_baseline, "comma-separated actions, one per step");
    cmd->add_option("--workers", coup.workers, "0 = all cores")->capture_default_str();
    add_json_flag(cmd, coup.format);
  };
  auto finish_coupling = [&] {
    if (!coup_baseline.empty()) coup.baseline = parse_int_list(coup_baseline);
  };
  auto* c_coupling = app.add_subcommand("coupling", "Monte Carlo estimate of the mirror coupling");
  add_coupling_options(c_coupling);
  c_coupling->callback([&] {
    finish_coupling();
    status = cmd_coupling(coup, out);
  });
  auto* c_meet = app.add_subcommand("meet-time", "first-meeting histogram and gap move rates");
  add_coupling_options(c_meet);
  c_meet->callback([&] {
    finish_coupling();
    status = cmd_meet_time(coup, out);
  });

  // equilibrium
  EquilibriumOptions eq;
  std::string eq_party;
  std::string eq_eps = "auto";
  auto* c_eq = app.add_subcommand("equilibrium", "pure approximate equilibrium of a perturbed game");
  auto* o_game = c_eq->add_option("--game", eq.game_file, "JSON game file");
  auto* o_party = c_eq->add_option("--party", eq_party, "party game with N players (N or n=N)");
  auto* o_random = c_eq->add_option("--random", eq.players, "random game with N players");
  o_game->excludes(o_party, o_random);
  o_party->excludes(o_random);
  c_eq->add_option("--prefs", eq.preferences, "party preferences, one e/o per player");
  c_eq->add_option("--actions", eq.actions, "random game actions")->capture_default_str();
  c_eq->add_option("--seed", eq.seed, "random game seed")->capture_default_str();
  c_eq->add_option("--delta", eq.delta)->capture_default_str();
  c_eq->add_option("--eps", eq_eps, "auto or a number")->capture_default_str();
  c_eq->add_option("--budget", eq.budget.max_profiles, "profile limit")->capture_default_str();
  add_json_flag(c_eq, eq.format);
  c_eq->callback([&] {
    if (o_game->count() > 0) {
      eq.source = EquilibriumOptions::Source::file;
    } else if (o_party->count() > 0) {
      eq.source = EquilibriumOptions::Source::party;
      eq.players = parse_party_size(eq_party);
    } else if (o_random->count() > 0) {
      eq.source = EquilibriumOptions::Source::random;
    } else {
      throw CLI::ValidationError("equilibrium", "one of --game, --party, --random is required");
    }
    if (eq_eps != "auto") {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(eq_eps.data(), eq_eps.data() + eq_eps.size(), v);
      if (ec != std::errc{} || ptr != eq_eps.data() + eq_eps.size() || v < 0.0) {
        throw std::invalid_argument("--eps expects auto or a nonnegative number, got '" + eq_eps + "'");
      }
      eq.epsilon = v;
    }
    status = cmd_equilibrium(eq, out);
  });

  // delta-star
  DeltaStarOptions ds;
  auto* c_ds = app.add_subcommand("delta-star", "fixed point delta = lambda(n, k, delta)");
  c_ds->add_option("--n", ds.n)->required();
  c_ds->add_option("--k", ds.k)->required();
  c_ds->add_option("--tol", ds.tol)->capture_default_str();
  add_json_flag(c_ds, ds.format);
  c_ds->callback([&] { status = cmd_delta_star(ds, out); });

  // verify
  VerifyOptions ver;
  auto* c_ver = app.add_subcommand("verify", "closed forms against the brute-force oracle");
  c_ver->add_option("--max-n", ver.max_n_k3, "largest n for k >= 3")->capture_default_str();
  c_ver->add_option("--max-n-k2", ver.max_n_k2, "largest n for k = 2")->capture_default_str();
  c_ver->add_option("--ks", ver.ks, "action counts >= 3")->delimiter(',');
  c_ver->add_option("--deltas", ver.deltas)->delimiter(',');
  c_ver->add_option("--tolerance", ver.tolerance)->capture_default_str();
  add_json_flag(c_ver, ver.format);
  c_ver->callback([&] { status = cmd_verify(ver, out); });

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
    return status;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << "anonlip 0.1.0\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    print_error(err, "usage", e.what());
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    print_error(err, "budget_exceeded", e.what());
  } catch (const BracketError& e) {
    print_error(err, "bracket_failure", e.what());
  } catch (const IntegrityError& e) {
    print_error(err, "integrity", e.what());
  } catch (const GameFileError& e) {
    print_error(err, "game_file", e.what());
  } catch (const std::invalid_argument& e) {
    print_error(err, "invalid_argument", e.what());
  } catch (const std::out_of_range& e) {
    print_error(err, "invalid_argument", e.what());
  } catch (const std::overflow_error& e) {
    print_error(err, "invalid_argument", e.what());
  } catch (const std::exception& e) {
    print_error(err, "io", e.what());
  }
  return kExitError;
}

}  // namespace anonlip::cli
