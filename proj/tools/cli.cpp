// Copyright 2026 The fluidmimo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "fluidmimo/capacity.hpp"
#include "fluidmimo/channel.hpp"
#include "fluidmimo/channel_io.hpp"
#include "fluidmimo/errors.hpp"
#include "fluidmimo/format.hpp"
#include "fluidmimo/harness.hpp"
#include "fluidmimo/jcr.hpp"
#include "fluidmimo/port_selection.hpp"
#include "fluidmimo/seeding.hpp"

namespace fluidmimo::cli {

namespace {

namespace fs = std::filesystem;

constexpr std::uint64_t kRandomStream = 0x72616e646f6dULL;

// Flags shared by every subcommand that describes a link.
struct LinkOptions {
  int m = 2;
  int n = 10;
  int mr = 0, mt = 0, nr = 0, nt = 0;
  double w = 0.5;
  double snr_db = 5.0;
  CLI::Option* mr_opt = nullptr;
  CLI::Option* mt_opt = nullptr;
  CLI::Option* nr_opt = nullptr;
  CLI::Option* nt_opt = nullptr;

  void add_to(CLI::App& app, bool with_snr) {
    app.add_option("--m", m, "fluid antennas on each side")->capture_default_str();
    app.add_option("--n", n, "ports per antenna on each side")->capture_default_str();
    mr_opt = app.add_option("--mr", mr, "receive antennas (overrides --m)");
    mt_opt = app.add_option("--mt", mt, "transmit antennas (overrides --m)");
    nr_opt = app.add_option("--nr", nr, "ports per receive antenna (overrides --n)");
    nt_opt = app.add_option("--nt", nt, "ports per transmit antenna (overrides --n)");
    app.add_option("--w", w, "aperture length in wavelengths")->capture_default_str();
    if (with_snr) {
      app.add_option("--snr-db", snr_db, "average SNR per receive antenna")
          ->capture_default_str();
    }
  }

  FluidMimoConfig resolve() const {
    if (m < 1) throw ConfigError("m", "must be >= 1");
    if (n < 1) throw ConfigError("n", "must be >= 1");
    FluidMimoConfig config;
    config.dims = {mr_opt->count() ? mr : m, mt_opt->count() ? mt : m,
                   nr_opt->count() ? nr : n, nt_opt->count() ? nt : n};
    config.w = w;
    config.snr_db = snr_db;
    config.validate();
    return config;
  }
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<Algorithm> parse_algorithm_list(const std::string& text,
                                            const char* key) {
  std::vector<Algorithm> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string_view name = trim(item);
    if (name.empty()) continue;
    if (name == "all") {
      for (Algorithm a : all_algorithms()) {
        if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
      }
      continue;
    }
    const auto a = parse_algorithm(name);
    if (!a) throw ConfigError(key, "unknown algorithm '" + std::string(name) + "'");
    if (std::find(out.begin(), out.end(), *a) == out.end()) out.push_back(*a);
  }
  if (out.empty()) throw ConfigError(key, "at least one algorithm is required");
  return out;
}

std::string ports_text(const std::vector<int>& ports) {
  std::string out;
  for (std::size_t i = 0; i < ports.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ports[i] + 1);
  }
  return out;
}

// Reads flat key=value lines and turns every key that the command line does
// not already set into a "--key=value" argument.
std::vector<std::string> config_arguments(const fs::path& path,
                                          const CLI::App& command,
                                          const std::vector<std::string>& args) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  std::vector<std::string> out;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config", "line " + std::to_string(line) +
                                      ": expected key=value");
    }
    const std::string key(trim(text.substr(0, eq)));
    const std::string value(trim(text.substr(eq + 1)));
    const std::string flag = "--" + key;
    if (key == "config" || command.get_option_no_throw(flag) == nullptr) {
      throw ConfigError(key, "unknown configuration key");
    }
    const bool on_command_line =
        std::any_of(args.begin(), args.end(), [&](const std::string& a) {
          return a == flag || a.rfind(flag + "=", 0) == 0;
        });
    if (!on_command_line) out.push_back(flag + "=" + value);
  }
  return out;
}

int cmd_generate(const FluidMimoConfig& config, std::uint64_t seed,
                 const std::string& path, std::ostream& out) {
  const OverallChannel channel = generate_channel(config, seed);
  try {
    save_channel(channel, fs::path(path));
  } catch (const std::runtime_error& e) {
    throw ConfigError("out", e.what());
  }
  const ArrayDims& d = config.dims;
  out << "wrote " << path << ": m_r=" << d.m_r << " m_t=" << d.m_t
      << " n_r=" << d.n_r << " n_t=" << d.n_t << " (" << d.rows() << "x"
      << d.cols() << " entries)\n";
  return kOk;
}

struct SolveOptions {
  std::string channel_path;
  std::string algo = "all";
  AoOptions ao;
  int samples = 0;
  double exhaustive_cap = kDefaultExhaustiveCap;
  bool json = false;
  std::string dump_lp;
};

int cmd_solve(const FluidMimoConfig& config, std::uint64_t seed,
              const SolveOptions& opts, std::ostream& out) {
  const std::vector<Algorithm> algorithms = parse_algorithm_list(opts.algo, "algo");
  if (!(opts.ao.epsilon > 0.0)) throw ConfigError("epsilon", "must be > 0");
  if (opts.ao.max_iterations < 1) throw ConfigError("max-iters", "must be >= 1");
  if (opts.samples < 0) throw ConfigError("samples", "must be >= 0");

  std::optional<OverallChannel> loaded;
  if (!opts.channel_path.empty()) {
    try {
      loaded = load_channel(fs::path(opts.channel_path));
    } catch (const ParseError& e) {
      throw ConfigError("channel", e.what());
    } catch (const std::runtime_error& e) {
      throw ConfigError("channel", e.what());
    }
  } else {
    loaded = generate_channel(config, seed);
  }
  const OverallChannel& channel = *loaded;
  const ArrayDims& d = channel.dims();
  const double rho = rho_from_snr_db(config.snr_db, d.m_t);

  if (!opts.dump_lp.empty()) {
    std::ofstream lp_out(opts.dump_lp);
    if (!lp_out) throw ConfigError("dump-lp", "cannot open " + opts.dump_lp);
    write_lp(build_lp(channel), lp_out);
  }

  const bool needs_relaxation =
      std::any_of(algorithms.begin(), algorithms.end(), [](Algorithm a) {
        return a == Algorithm::JcrRes || a == Algorithm::JcrAo;
      });
  std::optional<RelaxedSolution> relaxed;
  if (needs_relaxation) relaxed = solve_jcr(channel);

  std::vector<SelectionResult> results;
  for (Algorithm a : algorithms) {
    switch (a) {
      case Algorithm::Exhaustive:
        results.push_back(exhaustive_search(channel, rho, opts.exhaustive_cap));
        break;
      case Algorithm::JcrRes:
        results.push_back(jcr_res(channel, rho, *relaxed));
        break;
      case Algorithm::JcrAo:
        results.push_back(jcr_ao(channel, rho, *relaxed, opts.ao));
        break;
      case Algorithm::Random:
        results.push_back(random_selection(
            channel, rho, opts.samples > 0 ? opts.samples : default_random_samples(d),
            derive_seed(seed, {kRandomStream})));
        break;
      case Algorithm::Conventional:
        results.push_back(conventional_mimo(channel, rho));
        break;
    }
  }

  if (opts.json) {
    nlohmann::json doc;
    doc["dims"] = {{"m_r", d.m_r}, {"m_t", d.m_t}, {"n_r", d.n_r}, {"n_t", d.n_t}};
    doc["snr_db"] = config.snr_db;
    doc["rho"] = rho;
    if (relaxed) {
      doc["relaxation"] = {
          {"u_star", relaxed->u_star},
          {"capacity_bound_bits", capacity_upper_bound(relaxed->u_star, rho)},
          {"iterations", relaxed->stats.iterations}};
    }
    doc["results"] = nlohmann::json::array();
    for (const SelectionResult& r : results) {
      std::vector<int> rx(r.selection.rx_ports), tx(r.selection.tx_ports);
      for (int& p : rx) ++p;
      for (int& p : tx) ++p;
      doc["results"].push_back({{"algorithm", algorithm_name(r.algorithm)},
                                {"capacity_bits", r.capacity_bits},
                                {"iterations", r.iterations},
                                {"evaluations", r.evaluations},
                                {"rx_ports", rx},
                                {"tx_ports", tx}});
    }
    out << doc.dump(2) << '\n';
    return kOk;
  }

  out << "channel: m_r=" << d.m_r << " m_t=" << d.m_t << " n_r=" << d.n_r
      << " n_t=" << d.n_t << "  snr_db=" << to_decimal(config.snr_db)
      << "  rho=" << to_decimal(rho) << '\n';
  if (relaxed) {
    out << "relaxation: u_star=" << to_decimal(relaxed->u_star)
        << "  capacity_bound_bits="
        << to_decimal(capacity_upper_bound(relaxed->u_star, rho))
        << "  ipm_iterations=" << relaxed->stats.iterations << '\n';
  }
  out << std::left << std::setw(14) << "algorithm" << std::setw(22)
      << "capacity_bits" << std::setw(12) << "iterations" << std::setw(13)
      << "evaluations" << std::setw(16) << "rx_ports" << "tx_ports\n";
  for (const SelectionResult& r : results) {
    out << std::left << std::setw(14) << algorithm_name(r.algorithm)
        << std::setw(22) << to_decimal(r.capacity_bits) << std::setw(12)
        << r.iterations << std::setw(13) << r.evaluations << std::setw(16)
        << ports_text(r.selection.rx_ports) << ports_text(r.selection.tx_ports)
        << '\n';
  }
  return kOk;
}

struct SweepOptions {
  std::string variable;
  std::vector<double> values;
  int trials = 100;
  std::string algos = "all";
  std::uint64_t master_seed = 1;
  AoOptions ao;
  int samples = 0;
  double exhaustive_cap = kDefaultExhaustiveCap;
  unsigned threads = 0;
  bool timing = false;
  std::string out_dir = ".";
};

int cmd_sweep(const FluidMimoConfig& config, const SweepOptions& opts,
              std::ostream& out) {
  SweepSpec spec;
  spec.base = config;
  const auto variable = parse_sweep_variable(opts.variable);
  if (!variable) throw ConfigError("sweep", "expected ports, snr_db or w");
  spec.variable = *variable;
  spec.values = opts.values;
  spec.trials = opts.trials;
  spec.algorithms = parse_algorithm_list(opts.algos, "algos");
  spec.master_seed = opts.master_seed;
  spec.ao = opts.ao;
  spec.random_samples = opts.samples;
  spec.exhaustive_cap = opts.exhaustive_cap;
  spec.threads = opts.threads;
  spec.record_timing = opts.timing;
  spec.validate();

  const fs::path dir(opts.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("out-dir", ec.message());

  const SweepResult result = run_sweep(spec);
  const fs::path records_path = dir / "records.csv";
  const fs::path summary_path = dir / "summary.csv";
  {
    std::ofstream f(records_path);
    if (!f) throw ConfigError("out-dir", "cannot write " + records_path.string());
    write_records_csv(spec.variable, result.records, f);
  }
  {
    std::ofstream f(summary_path);
    if (!f) throw ConfigError("out-dir", "cannot write " + summary_path.string());
    write_summary_csv(spec.variable, result.summaries, f);
  }

  out << std::left << std::setw(12) << sweep_variable_name(spec.variable)
      << std::setw(14) << "algorithm" << std::setw(14) << "mean_bits"
      << std::setw(12) << "ci95" << std::setw(12) << "mean_ratio"
      << "ao_sweeps\n";
  out << std::fixed << std::setprecision(4);
  for (const PointSummary& s : result.summaries) {
    out << std::left << std::setw(12) << s.point_value << std::setw(14)
        << algorithm_name(s.algorithm) << std::setw(14) << s.mean_capacity
        << std::setw(12) << s.ci95 << std::setw(12) << s.mean_ratio
        << s.mean_ao_iterations << '\n';
  }
  out << "wrote " << records_path.string() << " and " << summary_path.string()
      << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Fluid-MIMO antenna port selection", "fluidmimo"};
  app.require_subcommand(1);
  std::string config_path;

  LinkOptions gen_link, solve_link, sweep_link;
  std::uint64_t gen_seed = 1, solve_seed = 1;
  std::string gen_out;
  SolveOptions solve_opts;
  SweepOptions sweep_opts;

  auto* generate = app.add_subcommand("generate", "draw a channel and write it to a file");
  gen_link.add_to(*generate, false);
  generate->add_option("--seed", gen_seed, "channel seed")->capture_default_str();
  generate->add_option("--out", gen_out, "output file")->required();

  auto* solve = app.add_subcommand("solve", "select ports on one channel");
  solve_link.add_to(*solve, true);
  solve->add_option("--seed", solve_seed, "channel and random-baseline seed")
      ->capture_default_str();
  solve->add_option("--channel", solve_opts.channel_path, "channel file (overrides generation)");
  solve->add_option("--algo", solve_opts.algo,
                    "exhaustive, jcr-res, jcr-ao, random, conventional or all")
      ->capture_default_str();
  solve->add_option("--epsilon", solve_opts.ao.epsilon, "AO tolerance")->capture_default_str();
  solve->add_option("--max-iters", solve_opts.ao.max_iterations, "AO sweep cap")
      ->capture_default_str();
  solve->add_option("--samples", solve_opts.samples, "random draws (0: 5(MrNr+MtNt))");
  solve->add_option("--exhaustive-cap", solve_opts.exhaustive_cap,
                    "maximum selections for exhaustive search")
      ->capture_default_str();
  solve->add_flag("--json", solve_opts.json, "emit JSON");
  solve->add_option("--dump-lp", solve_opts.dump_lp, "write the relaxation in LP format");

  auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep with CSV output");
  sweep_link.add_to(*sweep, true);
  sweep->add_option("--sweep", sweep_opts.variable, "ports, snr_db or w")->required();
  sweep->add_option("--values", sweep_opts.values, "comma-separated sweep values")
      ->delimiter(',')
      ->required();
  sweep->add_option("--trials", sweep_opts.trials, "channel draws per point")
      ->capture_default_str();
  sweep->add_option("--algos", sweep_opts.algos, "comma-separated algorithms or all")
      ->capture_default_str();
  sweep->add_option("--master-seed", sweep_opts.master_seed, "seed for all trial draws")
      ->capture_default_str();
  sweep->add_option("--epsilon", sweep_opts.ao.epsilon, "AO tolerance")->capture_default_str();
  sweep->add_option("--max-iters", sweep_opts.ao.max_iterations, "AO sweep cap")
      ->capture_default_str();
  sweep->add_option("--samples", sweep_opts.samples, "random draws (0: 5(MrNr+MtNt))");
  sweep->add_option("--exhaustive-cap", sweep_opts.exhaustive_cap,
                    "maximum selections for exhaustive search")->capture_default_str();
  sweep->add_option("--threads", sweep_opts.threads, "worker threads (0: all cores)");
  sweep->add_flag("--timing", sweep_opts.timing, "record wall-clock time per algorithm");
  sweep->add_option("--out-dir", sweep_opts.out_dir, "directory for the CSV files")
      ->capture_default_str();

  for (CLI::App* sub : {generate, solve, sweep}) {
    sub->add_option("--config", config_path, "flat key=value file; flags take precedence");
  }

  try {
    std::vector<std::string> argv = args;
    // Config file entries go right after the subcommand name.
    const auto cfg = std::find_if(argv.begin(), argv.end(), [](const std::string& a) {
      return a == "--config" || a.rfind("--config=", 0) == 0;
    });
    if (cfg != argv.end() && !argv.empty()) {
      std::string path;
      if (*cfg == "--config") {
        if (cfg + 1 == argv.end()) throw ConfigError("config", "missing file name");
        path = *(cfg + 1);
      } else {
        path = cfg->substr(std::string("--config=").size());
      }
      const CLI::App* command = app.get_subcommand_no_throw(argv.front());
      if (command == nullptr) throw ConfigError("config", "needs a subcommand first");
      const auto extra = config_arguments(path, *command, argv);
      argv.insert(argv.begin() + 1, extra.begin(), extra.end());
    }
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);

    if (generate->parsed()) return cmd_generate(gen_link.resolve(), gen_seed, gen_out, out);
    if (solve->parsed()) return cmd_solve(solve_link.resolve(), solve_seed, solve_opts, out);
    return cmd_sweep(sweep_link.resolve(), sweep_opts, out);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const SolverFailure& e) {
    err << "error: " << e.what() << " after " << e.stats().iterations
        << " iterations (gap " << e.stats().duality_gap << ", primal residual "
        << e.stats().primal_residual << ")\n";
    return kSolverFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUnexpected;
  }
}

}  // namespace fluidmimo::cli
