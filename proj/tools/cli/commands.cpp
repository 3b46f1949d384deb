#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "anonlip/coupling.hpp"
#include "anonlip/lipschitz.hpp"
#include "anonlip/walk.hpp"
#include "cli/game_file.hpp"

namespace anonlip::cli {
namespace {

using nlohmann::json;

void write_json(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

json header(const char* schema) {
  return {{"schema", schema}, {"version", kOutputSchemaVersion}};
}

std::string profile_string(const std::vector<int>& a) { return fmt::format("{}", fmt::join(a, " ")); }

unsigned resolve_jobs(unsigned jobs) {
  if (jobs == 0) jobs = std::thread::hardware_concurrency();
  return std::max(1u, jobs);
}

double z_score(double estimate, double exact, double std_error) {
  if (std_error > 0.0) return (estimate - exact) / std_error;
  return estimate == exact ? 0.0 : std::numeric_limits<double>::infinity();
}

json regret_json(const RegretReport& r) {
  json players = json::array();
  for (const auto& p : r.per_player) {
    players.push_back({{"best_deviation", p.best_deviation}, {"regret", round15(p.regret)}});
  }
  return {{"max_regret", round15(r.max_regret)}, {"per_player", std::move(players)}};
}

}  // namespace

std::string format_number(double x) { return fmt::format("{:.15g}", x); }

double round15(double x) {
  if (!std::isfinite(x)) return x;
  return std::stod(format_number(x));
}

// ---------------------------------------------------------------------------
// lambda

int cmd_lambda(const LambdaOptions& opt, std::ostream& out) {
  std::optional<LambdaResult> formula;
  std::optional<OracleResult> oracle;
  if (opt.method != LambdaMethodOption::oracle) formula = lambda(opt.n, opt.k, opt.delta);
  if (opt.method != LambdaMethodOption::formula) {
    oracle = lambda_oracle(opt.n, opt.k, opt.delta, opt.budget);
  }
  LambdaResult shown = formula ? *formula
                               : LambdaResult{oracle->value, oracle->value, oracle->value,
                                              LambdaMethod::oracle,
                                              asymptotic_estimate(opt.n, opt.k, opt.delta)};

  if (opt.format == OutputFormat::json) {
    json doc = header("anonlip.lambda");
    doc["n"] = opt.n;
    doc["k"] = opt.k;
    doc["delta"] = round15(opt.delta);
    doc["method"] = std::string(to_string(shown.method));
    doc["lambda"] = round15(shown.value);
    doc["lower"] = round15(shown.lower);
    doc["upper"] = round15(shown.upper);
    doc["asymptotic"] = round15(*shown.asymptotic);
    if (oracle) {
      json o{{"lambda", round15(oracle->value)}, {"worst_class", oracle->worst_class.counts()}};
      if (formula) o["abs_diff"] = round15(std::abs(formula->value - oracle->value));
      doc["oracle"] = std::move(o);
    }
    write_json(out, doc);
    return 0;
  }

  out << fmt::format("n           {}\n", opt.n);
  out << fmt::format("k           {}\n", opt.k);
  out << fmt::format("delta       {}\n", format_number(opt.delta));
  out << fmt::format("method      {}\n", to_string(shown.method));
  out << fmt::format("lambda      {}\n", format_number(shown.value));
  out << fmt::format("bracket     [{}, {}]\n", format_number(shown.lower), format_number(shown.upper));
  out << fmt::format("asymptotic  {}\n", format_number(*shown.asymptotic));
  if (oracle) {
    out << fmt::format("oracle      {}\n", format_number(oracle->value));
    out << fmt::format("worst_class ({})\n", fmt::join(oracle->worst_class.counts(), ", "));
    if (formula) {
      out << fmt::format("abs_diff    {}\n", format_number(std::abs(formula->value - oracle->value)));
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

namespace {

struct SweepRow {
  int n;
  double delta;
  LambdaResult result;
};

void validate(const SweepSpec& s) {
  if (s.n_start < 2) throw std::invalid_argument("sweep: n-start must be >= 2");
  if (s.n_stop < s.n_start) throw std::invalid_argument("sweep: n-stop must be >= n-start");
  if (s.n_step < 1) throw std::invalid_argument("sweep: n-step must be >= 1");
  if (s.k < 2) throw std::invalid_argument("sweep: k must be >= 2");
  if (s.deltas.empty()) throw std::invalid_argument("sweep: need at least one delta");
  for (double d : s.deltas) {
    if (!(d > 0.0 && d < 1.0)) {
      throw std::invalid_argument("sweep: delta " + format_number(d) + " outside (0, 1)");
    }
  }
}

}  // namespace

std::string render_sweep(const SweepSpec& spec) {
  validate(spec);
  std::vector<SweepRow> rows;
  for (int n = spec.n_start; n <= spec.n_stop; n += spec.n_step) {
    for (double d : spec.deltas) rows.push_back({n, d, {}});
  }

  // Rows are independent; worker w fills rows w, w + jobs, ...
  const unsigned jobs = std::min<unsigned>(resolve_jobs(spec.jobs), static_cast<unsigned>(rows.size()));
  std::vector<std::future<void>> pending;
  for (unsigned w = 0; w < jobs; ++w) {
    pending.push_back(std::async(std::launch::async, [&rows, &spec, w, jobs] {
      for (std::size_t i = w; i < rows.size(); i += jobs) {
        rows[i].result = lambda(rows[i].n, spec.k, rows[i].delta);
      }
    }));
  }
  for (auto& f : pending) f.get();

  std::string text;
  if (spec.format == SweepFormat::csv) {
    text += kSweepHeader;
    text += '\n';
  } else {
    text += fmt::format("{:>6} {:>3} {:>17} {:>17} {:>17} {:>17} {:>17} {:>17}\n", "n", "k",
                        "delta", "lambda", "lower", "upper", "asymptotic", "ratio");
  }
  for (const SweepRow& r : rows) {
    const double asym = *r.result.asymptotic;
    const std::string cells[] = {format_number(r.delta), format_number(r.result.value),
                                 format_number(r.result.lower), format_number(r.result.upper),
                                 format_number(asym), format_number(r.result.value / asym)};
    if (spec.format == SweepFormat::csv) {
      text += fmt::format("{},{},{}\n", r.n, spec.k, fmt::join(cells, ","));
    } else {
      text += fmt::format("{:>6} {:>3} {:>17} {:>17} {:>17} {:>17} {:>17} {:>17}\n", r.n, spec.k,
                          cells[0], cells[1], cells[2], cells[3], cells[4], cells[5]);
    }
  }
  return text;
}

int cmd_sweep(const SweepSpec& spec, std::ostream& out) {
  const std::string text = render_sweep(spec);
  if (spec.output == "-") {
    out << text;
    return 0;
  }
  std::ofstream file(spec.output, std::ios::binary);
  if (!file) throw std::runtime_error("sweep: cannot write '" + spec.output + "'");
  file << text;
  if (!file.flush()) throw std::runtime_error("sweep: write to '" + spec.output + "' failed");
  return 0;
}

// ---------------------------------------------------------------------------
// coupling / meet-time

namespace {

CouplingConfig to_config(const CouplingOptions& opt) {
  CouplingConfig c;
  c.steps = opt.n;
  c.actions = opt.k;
  c.delta = opt.delta;
  c.samples = opt.samples;
  c.seed = opt.seed;
  c.baseline = opt.baseline;
  c.workers = opt.workers;
  return c;
}

}  // namespace

int cmd_coupling(const CouplingOptions& opt, std::ostream& out) {
  const CouplingEstimate e = simulate_coupling(to_config(opt));
  const double exact = passage_prob(WalkParams(opt.n, 2.0 * opt.delta / opt.k));
  const double z = z_score(e.estimate, exact, e.std_error);
  if (opt.format == OutputFormat::json) {
    json doc = header("anonlip.coupling");
    doc["n"] = opt.n;
    doc["k"] = opt.k;
    doc["delta"] = round15(opt.delta);
    doc["samples"] = e.samples;
    doc["seed"] = e.seed;
    doc["estimate"] = round15(e.estimate);
    doc["std_error"] = round15(e.std_error);
    doc["exact"] = round15(exact);
    doc["z_score"] = std::isfinite(z) ? json(round15(z)) : json(nullptr);
    write_json(out, doc);
    return 0;
  }
  out << fmt::format("n          {}\nk          {}\ndelta      {}\n", opt.n, opt.k,
                     format_number(opt.delta));
  out << fmt::format("samples    {}\nseed       {}\n", e.samples, e.seed);
  out << fmt::format("estimate   {}\nstd_error  {}\n", format_number(e.estimate),
                     format_number(e.std_error));
  out << fmt::format("exact      {}\nz_score    {}\n", format_number(exact), format_number(z));
  return 0;
}

int cmd_meet_time(const CouplingOptions& opt, std::ostream& out) {
  const MeetTimeHistogram h = simulate_meet_time(to_config(opt));
  const double move = opt.delta / opt.k;
  const double rates[3] = {move, 1.0 - 2.0 * move, move};
  const char* names[3] = {"down", "stay", "up"};
  const double moves = static_cast<double>(h.gap_moves[0] + h.gap_moves[1] + h.gap_moves[2]);

  if (opt.format == OutputFormat::json) {
    json doc = header("anonlip.meet-time");
    doc["n"] = opt.n;
    doc["k"] = opt.k;
    doc["delta"] = round15(opt.delta);
    doc["samples"] = h.samples;
    doc["seed"] = h.seed;
    doc["first_meet"] = json(std::vector<std::uint64_t>(h.first_meet.begin() + 1, h.first_meet.end()));
    json tr = json::object();
    for (int m = 0; m < 3; ++m) {
      const double freq = moves > 0 ? static_cast<double>(h.gap_moves[static_cast<std::size_t>(m)]) / moves : 0.0;
      const double se = moves > 0 ? std::sqrt(rates[m] * (1 - rates[m]) / moves) : 0.0;
      tr[names[m]] = {{"count", h.gap_moves[static_cast<std::size_t>(m)]},
                      {"frequency", round15(freq)},
                      {"expected", round15(rates[m])},
                      {"z_score", std::isfinite(z_score(freq, rates[m], se))
                                      ? json(round15(z_score(freq, rates[m], se)))
                                      : json(nullptr)}};
    }
    doc["gap_moves"] = std::move(tr);
    doc["persistence_violations"] = h.persistence_violations;
    write_json(out, doc);
    return 0;
  }
  out << "step,count\n";
  for (std::size_t i = 1; i < h.first_meet.size(); ++i) {
    if (i + 1 == h.first_meet.size()) {
      out << fmt::format("never,{}\n", h.first_meet[i]);
    } else {
      out << fmt::format("{},{}\n", i, h.first_meet[i]);
    }
  }
  out << "\nmove,count,frequency,expected,z_score\n";
  for (int m = 0; m < 3; ++m) {
    const auto c = h.gap_moves[static_cast<std::size_t>(m)];
    const double freq = moves > 0 ? static_cast<double>(c) / moves : 0.0;
    const double se = moves > 0 ? std::sqrt(rates[m] * (1 - rates[m]) / moves) : 0.0;
    out << fmt::format("{},{},{},{},{}\n", names[m], c, format_number(freq),
                       format_number(rates[m]), format_number(z_score(freq, rates[m], se)));
  }
  out << fmt::format("\npersistence_violations {}\n", h.persistence_violations);
  return 0;
}

// ---------------------------------------------------------------------------
// equilibrium

std::vector<Parity> parse_preferences(const std::string& text, int players) {
  std::vector<Parity> prefs;
  if (text.empty()) {
    for (int i = 0; i < players; ++i) prefs.push_back(i % 2 == 0 ? Parity::even : Parity::odd);
    return prefs;
  }
  for (char c : text) {
    if (c == 'e' || c == 'E') {
      prefs.push_back(Parity::even);
    } else if (c == 'o' || c == 'O') {
      prefs.push_back(Parity::odd);
    } else {
      throw std::invalid_argument(std::string("preferences: unexpected character '") + c +
                                  "' (use e or o)");
    }
  }
  if (prefs.size() != static_cast<std::size_t>(players)) {
    throw std::invalid_argument("preferences: need one entry per player");
  }
  return prefs;
}

int cmd_equilibrium(const EquilibriumOptions& opt, std::ostream& out) {
  std::optional<AnonymousGame> game;
  std::string source;
  switch (opt.source) {
    case EquilibriumOptions::Source::file:
      game = load_game(opt.game_file);
      source = "file:" + opt.game_file;
      break;
    case EquilibriumOptions::Source::party: {
      const auto prefs = parse_preferences(opt.preferences, opt.players);
      game = party_game(opt.players, prefs);
      std::string tag;
      for (Parity p : prefs) tag += p == Parity::even ? 'e' : 'o';
      source = "party:" + tag;
      break;
    }
    case EquilibriumOptions::Source::random:
      game = random_game(opt.players, opt.actions, opt.seed);
      source = fmt::format("random:n={},k={},seed={}", opt.players, opt.actions, opt.seed);
      break;
  }
  const int n = game->players();
  const int k = game->actions();

  std::optional<double> lam;
  double eps = 0.0;
  if (opt.epsilon) {
    eps = *opt.epsilon;
  } else {
    if (!(opt.delta > 0.0)) {
      throw std::invalid_argument("equilibrium: --eps auto needs delta in (0, 1)");
    }
    lam = lambda(n, k, opt.delta).value;
    eps = 2.0 * k * *lam + 1e-9;
  }
  const EquilibriumSearch s = find_eps_nash(*game, opt.delta, eps, opt.budget);
  const bool found = s.profile.has_value();
  const std::vector<int>& shown = found ? *s.profile : s.best;

  if (opt.format == OutputFormat::json) {
    json doc = header("anonlip.equilibrium");
    doc["source"] = source;
    doc["n"] = n;
    doc["k"] = k;
    doc["delta"] = round15(opt.delta);
    doc["epsilon"] = round15(eps);
    doc["epsilon_mode"] = opt.epsilon ? "explicit" : "auto";
    if (lam) doc["lambda"] = round15(*lam);
    doc["found"] = found;
    doc["profiles_scanned"] = s.scanned;
    if (found) {
      doc["profile"] = *s.profile;
      doc["regret"] = regret_json(s.report);
      doc["guarantee_in_base_game"] = round15(opt.delta + eps);
      doc["observed_in_base_game"] = round15(opt.delta + s.report.max_regret);
    } else {
      doc["min_max_profile"] = s.best;
      doc["min_max_regret"] = regret_json(s.report);
    }
    write_json(out, doc);
    return 0;
  }
  out << fmt::format("source      {}\n", source);
  out << fmt::format("n           {}\nk           {}\ndelta       {}\n", n, k, format_number(opt.delta));
  if (lam) out << fmt::format("lambda      {}\n", format_number(*lam));
  out << fmt::format("epsilon     {} ({})\n", format_number(eps), opt.epsilon ? "explicit" : "auto");
  out << fmt::format("scanned     {}\n", s.scanned);
  if (found) {
    out << fmt::format("status      found\nprofile     {}\n", profile_string(shown));
    out << fmt::format("max_regret  {}\n", format_number(s.report.max_regret));
    out << fmt::format("guarantee   {}-Nash in the unperturbed game (delta + epsilon)\n",
                       format_number(opt.delta + eps));
    out << fmt::format("observed    {} (delta + max_regret)\n",
                       format_number(opt.delta + s.report.max_regret));
  } else {
    out << fmt::format("status      absent (exhaustive)\nmin_max     {} at profile {}\n",
                       format_number(s.best_max_regret), profile_string(shown));
  }
  for (std::size_t i = 0; i < s.report.per_player.size(); ++i) {
    const auto& p = s.report.per_player[i];
    out << fmt::format("player {:<4} regret {} best_deviation {}\n", i, format_number(p.regret),
                       p.best_deviation);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// delta-star

int cmd_delta_star(const DeltaStarOptions& opt, std::ostream& out) {
  const FixedPoint fp = delta_star(opt.n, opt.k, opt.tol);
  if (opt.format == OutputFormat::json) {
    json doc = header("anonlip.delta-star");
    doc["n"] = opt.n;
    doc["k"] = opt.k;
    doc["tol"] = round15(opt.tol);
    doc["delta_star"] = round15(fp.delta);
    doc["lambda"] = round15(fp.lambda);
    doc["residual"] = round15(fp.residual);
    doc["epsilon"] = round15(2.0 * fp.delta);
    doc["iterations"] = fp.iterations;
    write_json(out, doc);
    return 0;
  }
  out << fmt::format("n           {}\nk           {}\n", opt.n, opt.k);
  out << fmt::format("delta_star  {}\nlambda      {}\n", format_number(fp.delta), format_number(fp.lambda));
  out << fmt::format("residual    {} (tol {})\n", format_number(std::abs(fp.residual)), format_number(opt.tol));
  out << fmt::format("epsilon     {}\n", format_number(2.0 * fp.delta));
  return 0;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const VerifyOptions& opt, std::ostream& out) {
  struct Worst {
    double diff = 0.0;
    int n = 0;
    double delta = 0.0;
    int cases = 0;
  };
  std::vector<std::pair<int, Worst>> per_k;
  auto check = [&](int k, int max_n) {
    Worst w;
    for (int n = 2; n <= max_n; ++n) {
      for (double d : opt.deltas) {
        const double f = k >= 3 ? lambda_k3(n, k, d).value : lambda_k2(n, d).value;
        const double o = lambda_oracle(n, k, d, OracleBudget{std::max(14, max_n), std::max(4, k)}).value;
        const double diff = std::abs(f - o);
        ++w.cases;
        if (diff >= w.diff) w = {diff, n, d, w.cases};
      }
    }
    per_k.emplace_back(k, w);
  };
  check(2, opt.max_n_k2);
  for (int k : opt.ks) check(k, opt.max_n_k3);

  double worst = 0.0;
  for (const auto& [k, w] : per_k) worst = std::max(worst, w.diff);
  const bool pass = worst <= opt.tolerance;

  if (opt.format == OutputFormat::json) {
    json doc = header("anonlip.verify");
    json rows = json::array();
    for (const auto& [k, w] : per_k) {
      rows.push_back({{"k", k}, {"cases", w.cases}, {"max_abs_diff", round15(w.diff)},
                      {"at_n", w.n}, {"at_delta", round15(w.delta)}});
    }
    doc["results"] = std::move(rows);
    doc["max_abs_diff"] = round15(worst);
    doc["tolerance"] = round15(opt.tolerance);
    doc["pass"] = pass;
    write_json(out, doc);
  } else {
    for (const auto& [k, w] : per_k) {
      out << fmt::format("k={} cases={} max|formula-oracle|={} (n={}, delta={})\n", k, w.cases,
                         format_number(w.diff), w.n, format_number(w.delta));
    }
    out << fmt::format("max deviation {} tolerance {} {}\n", format_number(worst),
                       format_number(opt.tolerance), pass ? "PASS" : "FAIL");
  }
  return pass ? 0 : 1;
}

}  // namespace anonlip::cli
