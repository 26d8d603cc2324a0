// Copyright 2026 The qpuf-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpuf/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpuf/adversaries.hpp"
#include "qpuf/emulator.hpp"
#include "qpuf/games.hpp"
#include "qpuf/qpuf.hpp"
#include "qpuf/serialization.hpp"
#include "qpuf/verify.hpp"

namespace qpuf::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  int qubits = 3;
  std::optional<double> mu;
  int mu_steps = 10;
  std::optional<std::size_t> trials;
  std::uint64_t seed = 0;
  std::optional<std::size_t> d;
  std::vector<double> delta;
  int kappa1 = 1;
  int kappa2 = 1;
  std::string test = "swap";
  std::string adversary = "random";
  std::string mode = "qsel";
  bool privileged = false;
  std::optional<std::size_t> budget;
  std::optional<double> inject_collision_epsilon;
  std::string out;
  std::string format = "csv";
  std::string manifest;
};

struct Outcome {
  std::string text;
  int code = kExitOk;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Quotes a CSV field when it holds a separator, quote or newline.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

unsigned workers() { return std::clamp(std::thread::hardware_concurrency(), 1u, 8u); }

void require_qubits(int qubits, int lo, int hi) {
  if (qubits < lo || qubits > hi) {
    throw UsageError("--qubits must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

// CSV with a header row, or a JSON array of objects with the same keys.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(std::vector<json> row) { rows_.push_back(std::move(row)); }

  std::string render(const std::string& format) const {
    std::ostringstream os;
    if (format == "json") {
      json out = json::array();
      for (const auto& row : rows_) {
        json obj = json::object();
        for (std::size_t i = 0; i < columns_.size(); ++i) obj[columns_[i]] = row[i];
        out.push_back(std::move(obj));
      }
      os << out.dump(2) << '\n';
      return os.str();
    }
    for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
    os << '\n';
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        os << (i ? "," : "");
        if (row[i].is_number_float()) {
          os << num(row[i].get<double>());
        } else if (row[i].is_string()) {
          os << csv_field(row[i].get<std::string>());
        } else {
          os << row[i].dump();
        }
      }
      os << '\n';
    }
    return os.str();
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<json>> rows_;
};

Outcome forge_sweep(const Flags& f) {
  require_qubits(f.qubits, 1, 14);
  if (f.mu_steps < 1) throw UsageError("--mu-steps must be >= 1");
  const std::size_t trials = f.trials.value_or(20);
  if (trials == 0) throw UsageError("--trials must be >= 1");

  Outcome result;
  Table table({"mu", "mean_fidelity", "theory_bound", "p_succ_stage1", "trials"});
  for (int k = 0; k < f.mu_steps; ++k) {
    const double mu = static_cast<double>(k) / f.mu_steps;
    if (mu > 1.0 - kDefaultForgerMargin) throw UsageError("sweep reaches mu above the forger cap");
    double fid = 0.0;
    double p_succ = 0.0;
    double bound = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const QPufInstance puf =
          qgen({f.qubits, derive_seed(f.seed, {static_cast<std::uint64_t>(k), t})});
      const ForgeResult r = forge_once(puf, mu);
      fid += r.fidelity;
      p_succ += r.p_succ_stage1;
      bound = r.theory_bound;
    }
    fid /= static_cast<double>(trials);
    p_succ /= static_cast<double>(trials);
    if (fid < bound - 1e-8) result.code = kExitCheckFailed;
    table.add({mu, fid, bound, p_succ, trials});
  }
  result.text = table.render(f.format);
  return result;
}

Outcome selective_bound(const Flags& f) {
  require_qubits(f.qubits, 1, 10);
  const Index dim = Index{1} << f.qubits;
  const std::size_t trials = f.trials.value_or(2000);
  if (trials == 0) throw UsageError("--trials must be >= 1");
  std::vector<std::size_t> ds;
  if (f.d) {
    if (static_cast<Index>(*f.d) >= dim) throw UsageError("--d must be below D = 2^qubits");
    ds.push_back(*f.d);
  } else {
    for (Index d = 0; d < dim; ++d) ds.push_back(static_cast<std::size_t>(d));
  }
  const std::vector<double> deltas = f.delta.empty() ? std::vector<double>{0.5} : f.delta;
  for (double delta : deltas) {
    if (!(delta > 0.0 && delta <= 1.0)) throw UsageError("--delta must lie in (0, 1]");
  }

  Outcome result;
  Table table({"d", "D", "delta", "empirical_rate", "bound", "stderr", "trials"});
  const std::size_t poly_cap = 4 * static_cast<std::size_t>(f.qubits * f.qubits);
  for (std::size_t d : ds) {
    for (std::size_t j = 0; j < deltas.size(); ++j) {
      GameConfig cfg;
      cfg.mode = ChallengeMode::kSelective;
      cfg.learning_budget = d;
      cfg.budget_cap = std::max(d, poly_cap);
      cfg.test = TestConfig::ideal_threshold(deltas[j]);
      cfg.gen.lambda = f.qubits;
      cfg.seed = derive_seed(f.seed, {d, j});
      cfg.informed_challenge = true;
      const WinRate w = estimate_win_rate(
          cfg, [d] { return std::make_unique<SubspaceAdversary>(d); }, trials, workers());
      const double bound = std::min(1.0, static_cast<double>(d + 1) / static_cast<double>(dim));
      if (w.rate > bound + 3.0 * w.standard_error) result.code = kExitCheckFailed;
      table.add({d, dim, deltas[j], w.rate, bound, w.standard_error, trials});
    }
  }
  result.text = table.render(f.format);
  return result;
}

Outcome verify_all_cmd(const Flags& f) {
  const std::vector<CheckReport> reports = verify_all({f.seed, f.inject_collision_epsilon});
  Outcome result;
  result.code = all_passed(reports) ? kExitOk : kExitCheckFailed;
  if (f.format == "csv") {
    Table table({"name", "trials", "violations", "worst_margin", "passed", "informational"});
    for (const auto& r : reports) {
      table.add({r.name, r.trials, r.violations, r.worst_margin, r.passed ? 1 : 0,
                 r.informational ? 1 : 0});
    }
    result.text = table.render("csv");
  } else {
    result.text = reports_to_json(reports) + "\n";
  }
  return result;
}

Outcome game(const Flags& f) {
  require_qubits(f.qubits, 1, 10);
  const Index dim = Index{1} << f.qubits;
  const bool qex = f.mode == "qex";
  const std::string& who = f.adversary;
  if (who == "qe-forger" && !qex) throw UsageError("qe-forger plays only --mode qex");
  if (who == "subspace" && qex) throw UsageError("subspace plays only --mode qsel");
  if (who == "tomography" && !f.privileged) {
    throw UsageError("tomography needs --privileged (exact readout of responses)");
  }
  if (who != "tomography" && f.privileged) throw UsageError("--privileged applies to tomography only");

  GameConfig cfg;
  cfg.mode = qex ? ChallengeMode::kExistential : ChallengeMode::kSelective;
  cfg.mu = f.mu.value_or(qex ? 0.5 : 0.0);
  cfg.gen.lambda = f.qubits;
  cfg.seed = f.seed;
  if (f.test == "ideal") {
    cfg.test = TestConfig::ideal_threshold(f.delta.empty() ? 0.5 : f.delta.front());
  } else {
    cfg.test = TestConfig::swap_all_pass(f.kappa1, f.kappa2);
  }

  AdversaryFactory factory;
  std::size_t need = 0;
  if (who == "random") {
    factory = [] { return std::make_unique<RandomGuesser>(); };
  } else if (who == "subspace") {
    const std::size_t d = f.d.value_or(0);
    if (static_cast<Index>(d) >= dim) throw UsageError("--d must be below D = 2^qubits");
    need = d;
    cfg.informed_challenge = true;
    factory = [d] { return std::make_unique<SubspaceAdversary>(d); };
  } else if (who == "qe-forger") {
    const double mu = cfg.mu;
    if (!(mu >= 0.0 && mu <= 1.0 - kDefaultForgerMargin)) {
      throw UsageError("qe-forger needs --mu in [0, " + num(1.0 - kDefaultForgerMargin) + "]");
    }
    need = 2;
    factory = [mu] { return std::make_unique<QeForger>(mu); };
  } else {
    need = static_cast<std::size_t>(dim);
    cfg.budget_cap = std::max<std::size_t>(need, cfg.effective_budget_cap());
    factory = [] { return std::make_unique<TomographyAdversary>(PrivilegedReadout::grant()); };
  }
  cfg.learning_budget = f.budget.value_or(need);
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const std::size_t trials = f.trials.value_or(100);
  if (trials == 0) throw UsageError("--trials must be >= 1");
  const std::vector<Transcript> transcripts = run_trials(cfg, factory, trials, workers());
  const WinRate w = summarize(transcripts);

  std::ostringstream os;
  if (f.format == "csv") {
    Table table({"mode", "n", "k", "d_spanned", "b", "fidelity_of_guess"});
    for (const auto& t : transcripts) {
      table.add({to_string(t.mode), t.qubits, t.budget, t.d_spanned, t.outcome ? 1 : 0,
                 t.fidelity_of_guess});
    }
    os << table.render("csv");
  } else {
    for (const auto& t : transcripts) os << transcript_to_json_line(t) << '\n';
  }
  os << json{{"summary",
              {{"adversary", who},
               {"mode", f.mode},
               {"win_rate", w.rate},
               {"stderr", w.standard_error},
               {"wins", w.wins},
               {"trials", w.trials}}}}
            .dump()
     << '\n';
  return {os.str(), kExitOk};
}

Outcome qe_demo(const Flags& f) {
  require_qubits(f.qubits, 1, 10);
  const std::size_t samples = f.d.value_or(2);
  if (samples < 1) throw UsageError("--d (number of learned pairs) must be >= 1");
  const Index dim = Index{1} << f.qubits;
  const QPufInstance puf = qgen({f.qubits, f.seed});
  Rng rng(derive_seed(f.seed, 0x71656465));
  QeConfig config;
  for (std::size_t i = 0; i < samples; ++i) {
    StateVector in = haar_state(dim, rng);
    config.samples_out.push_back(qeval(puf, in));
    config.samples_in.push_back(std::move(in));
  }
  const StateVector psi = haar_state(dim, rng);
  const QeRunResult run = run_full(config, psi, qeval(puf, psi));
  json out{{"n", f.qubits},
           {"samples", samples},
           {"stage2", to_string(run.stage2)},
           {"p_stage2_zero", run.p_stage2_zero},
           {"p_succ_stage1", run.p_succ_stage1},
           {"fidelity", *run.fidelity_vs_target}};
  return {out.dump(2) + "\n", kExitOk};
}

Outcome qgen_cmd(const Flags& f) {
  require_qubits(f.qubits, 1, 14);
  return {instance_to_json(qgen({f.qubits, f.seed})) + "\n", kExitOk};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Parsed {
  Flags flags;
  std::string command;
  json given;  // options present on the command line
};

// Parses `args`. Returns an exit code when parsing ends the run (help or a
// usage error), after printing to the streams.
std::optional<int> parse(const std::vector<std::string>& args, Parsed& parsed, std::ostream& out,
                         std::ostream& err) {
  Flags& f = parsed.flags;
  CLI::App app{"Quantum PUF emulation and unforgeability experiments", "qpuf_lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", QPUF_VERSION);

  const std::vector<std::string> formats{"csv", "json"};
  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", f.seed, "Base seed");
    sub->add_option("--out", f.out, "Write the result here, with a manifest next to it");
  };
  auto qubits = [&](CLI::App* sub) {
    sub->add_option("--qubits", f.qubits, "Number of qubits n (D = 2^n)")->capture_default_str();
  };
  auto format = [&](CLI::App* sub) {
    sub->add_option("--format", f.format, "Output format")->check(CLI::IsMember(formats));
  };

  auto* forge = app.add_subcommand("forge-sweep", "Emulator forgery fidelity per mu");
  common(forge);
  qubits(forge);
  format(forge);
  forge->add_option("--mu-steps", f.mu_steps, "mu = k / steps for k = 0 .. steps - 1");
  forge->add_option("--trials", f.trials, "Instances per mu (default 20)");

  auto* selective = app.add_subcommand("selective-bound", "Subspace adversary against (d + 1) / D");
  common(selective);
  qubits(selective);
  format(selective);
  selective->add_option("--d", f.d, "Learned subspace dimension (default: every d < D)");
  selective->add_option("--delta", f.delta, "Ideal test thresholds (default 0.5)");
  selective->add_option("--trials", f.trials, "Games per cell (default 2000)");

  auto* verify = app.add_subcommand("verify-all", "Run every numerical audit");
  common(verify);
  verify->add_option("--format", f.format, "Output format (default json)")
      ->check(CLI::IsMember(formats));
  verify->add_option("--inject-collision-epsilon", f.inject_collision_epsilon,
                     "Add a collision audit of this eps claimed fully collision resistant");

  auto* game_cmd = app.add_subcommand("game", "Play unforgeability games");
  common(game_cmd);
  qubits(game_cmd);
  format(game_cmd);
  game_cmd->add_option("--mode", f.mode, "Challenge mode")->check(CLI::IsMember({"qex", "qsel"}));
  game_cmd
      ->add_option("--adversary", f.adversary, "Adversary")
      ->check(CLI::IsMember({"random", "subspace", "qe-forger", "tomography"}));
  game_cmd->add_option("--trials", f.trials, "Games (default 100)");
  game_cmd->add_option("--mu", f.mu, "Distinguishability of the qex challenge");
  game_cmd->add_option("--d", f.d, "Subspace dimension for the subspace adversary");
  game_cmd->add_option("--delta", f.delta, "Threshold of the ideal test")->expected(1);
  game_cmd->add_option("--kappa1", f.kappa1, "SWAP test copies of the response");
  game_cmd->add_option("--kappa2", f.kappa2, "SWAP test copies of the guess");
  game_cmd->add_option("--test", f.test, "Equality test")->check(CLI::IsMember({"swap", "ideal"}));
  game_cmd->add_flag("--privileged", f.privileged, "Grant exact response readout (tomography)");
  game_cmd->add_option("--budget", f.budget, "Learning queries (default: what the adversary needs)");

  auto* demo = app.add_subcommand("qe-demo", "One emulator run on random learned pairs");
  common(demo);
  qubits(demo);
  demo->add_option("--d", f.d, "Number of learned pairs (default 2)");

  auto* gen = app.add_subcommand("qgen", "Generate one instance");
  common(gen);
  qubits(gen);

  auto* replay = app.add_subcommand("replay", "Re-run a manifest and compare outputs");
  replay->add_option("--manifest", f.manifest, "Manifest written next to an output")->required();
  replay->add_option("--out", f.out, "Also write the regenerated output here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  for (CLI::App* sub : app.get_subcommands()) {
    parsed.command = sub->get_name();
    parsed.given = json::object();
    for (const CLI::Option* opt : sub->get_options()) {
      if (opt->count() == 0 || opt->get_name() == "--help") continue;
      const auto& results = opt->results();
      parsed.given[opt->get_name()] = results.size() == 1 ? json(results.front()) : json(results);
    }
  }
  if (parsed.command == "verify-all" && parsed.given.find("--format") == parsed.given.end()) {
    f.format = "json";
  }
  return std::nullopt;
}

Outcome dispatch(const Parsed& p) {
  const Flags& f = p.flags;
  if (p.command == "forge-sweep") return forge_sweep(f);
  if (p.command == "selective-bound") return selective_bound(f);
  if (p.command == "verify-all") return verify_all_cmd(f);
  if (p.command == "game") return game(f);
  if (p.command == "qe-demo") return qe_demo(f);
  return qgen_cmd(f);
}

// Arguments that regenerate the output, minus --out.
std::vector<std::string> replay_args(const std::vector<std::string>& args) {
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out") {
      ++i;
      continue;
    }
    if (args[i].rfind("--out=", 0) == 0) continue;
    kept.push_back(args[i]);
  }
  return kept;
}

int run_replay(const Flags& f, std::ostream& out, std::ostream& err) {
  const json manifest = json::parse(read_file(f.manifest));
  const auto args = manifest.at("argv").get<std::vector<std::string>>();
  const std::string original = manifest.at("output").get<std::string>();
  Parsed parsed;
  std::ostringstream sink;
  if (auto code = parse(args, parsed, sink, err)) return *code;
  if (parsed.command == "replay") throw UsageError("a manifest cannot replay a replay");
  const Outcome regenerated = dispatch(parsed);
  if (!f.out.empty()) write_file(f.out, regenerated.text);
  if (regenerated.text == read_file(original)) {
    out << "identical " << original << '\n';
    return kExitOk;
  }
  out << "differs " << original << '\n';
  return kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Parsed parsed;
  try {
    if (auto code = parse(args, parsed, out, err)) return *code;
    if (parsed.command == "replay") return run_replay(parsed.flags, out, err);

    const Outcome result = dispatch(parsed);
    const Flags& f = parsed.flags;
    if (f.out.empty()) {
      out << result.text;
    } else {
      write_file(f.out, result.text);
      const json manifest{{"subcommand", parsed.command},
                          {"argv", replay_args(args)},
                          {"flags", parsed.given},
                          {"seed", f.seed},
                          {"timestamp", utc_timestamp()},
                          {"version", QPUF_VERSION},
                          {"output", f.out}};
      write_file(f.out + ".manifest.json", manifest.dump(2) + "\n");
    }
    return result.code;
  } catch (const UsageError& e) {
    err << "qpuf_lab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "qpuf_lab: " << e.what() << '\n';
    return kExitCheckFailed;
  }
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace qpuf::cli
