// permlab: command-line front end for the simulation and exact-verification
// toolkit. Subcommands: sample, stat, walk, verify, experiment, transfer,
// kernel. See README.md for the descriptor grammars and file formats.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "permlab/harness.hpp"

namespace {

using permlab::ColoredPermutation;
using permlab::Label;
using permlab::Permutation;
using permlab::RandomSource;

std::string word_text(const ColoredPermutation& cp) {
  std::string out;
  const auto& w = cp.sigma.word();
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(w[i]);
  }
  if (!cp.colors.empty()) {
    out += '|';
    for (size_t i = 0; i < cp.colors.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(cp.colors[i]);
    }
  }
  return out;
}

ColoredPermutation parse_perm_text(const std::string& text) {
  const auto bar = text.find('|');
  const std::string word_part = bar == std::string::npos ? text : text.substr(0, bar);
  std::vector<Label> word;
  for (const int v : permlab::detail::parse_int_list(word_part, "permutation")) {
    word.push_back(static_cast<Label>(v));
  }
  ColoredPermutation cp{Permutation::from_one_line(std::move(word)), {}, 1};
  if (bar != std::string::npos) {
    Label max_color = 1;
    for (const int c : permlab::detail::parse_int_list(text.substr(bar + 1), "colors")) {
      if (c < 1) throw std::invalid_argument("colors must be positive");
      cp.colors.push_back(static_cast<Label>(c));
      max_color = std::max(max_color, static_cast<Label>(c));
    }
    if (cp.colors.size() != static_cast<size_t>(cp.sigma.size())) {
      throw std::invalid_argument("colors must match the permutation length");
    }
    cp.num_colors = max_color;
  }
  return cp;
}

std::string value_text(double v) { return permlab::detail::format_double(v); }

permlab::TransferSpec transfer_spec_from_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  nlohmann::json j;
  in >> j;
  permlab::TransferSpec spec;
  if (!j.contains("law_a") || !j.contains("law_b") || !j.contains("sizes")) {
    throw std::invalid_argument("transfer config: 'law_a', 'law_b', and 'sizes' are required");
  }
  spec.law_a = j.at("law_a").get<std::string>();
  spec.law_b = j.at("law_b").get<std::string>();
  if (j.contains("stat")) spec.stat = j.at("stat").get<std::string>();
  for (const auto& v : j.at("sizes")) spec.sizes.push_back(static_cast<Label>(v.get<int64_t>()));
  if (j.contains("trials")) spec.trials = j.at("trials").get<int64_t>();
  if (j.contains("seed")) spec.seed = j.at("seed").get<uint64_t>();
  if (j.contains("out")) spec.out = j.at("out").get<std::string>();
  if (j.contains("threads")) spec.threads = j.at("threads").get<int>();
  return spec;
}

void print_experiment_rows(const permlab::ExperimentResult& result) {
  for (const auto& row : result.rows) {
    std::string line = "n=" + std::to_string(row.n);
    if (!row.mean_exact.empty()) {
      line += " atoms=" + std::to_string(row.atoms);
      line += " mean=" + row.mean_exact + " (" + value_text(row.mean) + ")";
      line += " var=" + row.var_exact + " (" + value_text(row.variance) + ")";
    } else {
      line += " trials=" + std::to_string(row.trials);
      line += " mean=" + value_text(row.mean);
      line += " variance=" + value_text(row.variance);
      line += " q50=" + value_text(row.quantiles.at("q50"));
    }
    if (row.ks_vs_reference) line += " ks_vs_reference=" + value_text(*row.ks_vs_reference);
    std::cout << line << "\n";
  }
  if (!result.csv_path.empty()) {
    std::cout << "wrote " << result.csv_path << " and " << result.json_path << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulation and exact verification for conjugation-invariant random permutations"};
  app.require_subcommand(1);

  // --- sample ---
  auto* sample_cmd = app.add_subcommand("sample", "draw permutations from a law");
  std::string sample_law = "uniform";
  int64_t sample_n = 0;
  int64_t sample_trials = 1;
  uint64_t sample_seed = 0;
  sample_cmd->add_option("--law", sample_law, "law descriptor (default uniform)");
  sample_cmd->add_option("--n", sample_n, "permutation size")->required();
  sample_cmd->add_option("--trials", sample_trials, "number of draws (default 1)");
  sample_cmd->add_option("--seed", sample_seed, "random seed (default 0)");

  // --- stat ---
  auto* stat_cmd = app.add_subcommand("stat", "evaluate a statistic");
  std::string stat_name;
  std::string stat_perm;
  std::string stat_law = "uniform";
  int64_t stat_n = 0;
  int64_t stat_trials = 1;
  uint64_t stat_seed = 0;
  stat_cmd->add_option("--stat", stat_name, "statistic descriptor")->required();
  stat_cmd->add_option("--perm", stat_perm, "one-line word, optionally word|colors");
  auto* stat_n_opt = stat_cmd->add_option("--n", stat_n, "sample size for law mode");
  stat_cmd->add_option("--law", stat_law, "law descriptor for law mode (default uniform)");
  stat_cmd->add_option("--trials", stat_trials, "draws in law mode (default 1)");
  stat_cmd->add_option("--seed", stat_seed, "random seed (default 0)");

  // --- walk ---
  auto* walk_cmd = app.add_subcommand("walk", "apply a walk step to a permutation");
  std::string walk_name;
  std::string walk_perm;
  int64_t walk_steps = 1;
  uint64_t walk_seed = 0;
  bool walk_trace = false;
  walk_cmd->add_option("--walk", walk_name, "walk descriptor")->required();
  walk_cmd->add_option("--perm", walk_perm, "starting one-line word")->required();
  walk_cmd->add_option("--steps", walk_steps, "number of steps (default 1)");
  walk_cmd->add_option("--seed", walk_seed, "random seed (default 0)");
  walk_cmd->add_flag("--trace", walk_trace, "print every intermediate state");

  // --- verify ---
  auto* verify_cmd = app.add_subcommand("verify", "run the exact verification battery");
  std::string verify_report_path;
  verify_cmd->add_option("--report", verify_report_path, "write the battery as JSON");

  // --- experiment ---
  auto* exp_cmd = app.add_subcommand("experiment", "run a Monte-Carlo or exact experiment");
  std::string exp_config;
  std::string exp_law;
  std::string exp_stat;
  std::vector<int64_t> exp_sizes;
  int64_t exp_trials = 0;
  uint64_t exp_seed = 0;
  std::string exp_mode;
  std::string exp_reference;
  std::string exp_out;
  int exp_threads = 0;
  exp_cmd->add_option("--config", exp_config, "JSON config file");
  auto* exp_law_opt = exp_cmd->add_option("--law", exp_law, "law descriptor");
  auto* exp_stat_opt = exp_cmd->add_option("--stat", exp_stat, "statistic descriptor");
  auto* exp_sizes_opt = exp_cmd->add_option("--n", exp_sizes, "sizes (repeatable)");
  auto* exp_trials_opt = exp_cmd->add_option("--trials", exp_trials, "trials per size");
  auto* exp_seed_opt = exp_cmd->add_option("--seed", exp_seed, "random seed");
  auto* exp_mode_opt = exp_cmd->add_option("--mode", exp_mode, "mc or exact (default mc)");
  auto* exp_ref_opt = exp_cmd->add_option("--reference", exp_reference, "reference law for a KS column");
  auto* exp_out_opt = exp_cmd->add_option("--out", exp_out, "output base path (.csv/.json)");
  auto* exp_threads_opt = exp_cmd->add_option("--threads", exp_threads, "worker threads (0 = auto)");

  // --- transfer ---
  auto* tr_cmd = app.add_subcommand("transfer", "push two laws through the merge walk");
  std::string tr_config;
  std::string tr_law_a;
  std::string tr_law_b;
  std::string tr_stat = "lis";
  std::vector<int64_t> tr_sizes;
  int64_t tr_trials = 0;
  uint64_t tr_seed = 0;
  std::string tr_out;
  int tr_threads = 0;
  tr_cmd->add_option("--config", tr_config, "JSON config file");
  auto* tr_a_opt = tr_cmd->add_option("--law-a", tr_law_a, "first law descriptor");
  auto* tr_b_opt = tr_cmd->add_option("--law-b", tr_law_b, "second law descriptor");
  auto* tr_stat_opt = tr_cmd->add_option("--stat", tr_stat, "statistic descriptor (default lis)");
  auto* tr_sizes_opt = tr_cmd->add_option("--n", tr_sizes, "sizes (repeatable)");
  auto* tr_trials_opt = tr_cmd->add_option("--trials", tr_trials, "trials per size");
  auto* tr_seed_opt = tr_cmd->add_option("--seed", tr_seed, "random seed");
  auto* tr_out_opt = tr_cmd->add_option("--out", tr_out, "output base path (.csv/.json)");
  auto* tr_threads_opt = tr_cmd->add_option("--threads", tr_threads, "worker threads (0 = auto)");

  // --- kernel ---
  auto* kernel_cmd = app.add_subcommand("kernel", "exact descent-window probability");
  std::string kernel_window;
  int64_t kernel_check_n = 0;
  kernel_cmd->add_option("--window", kernel_window, "comma-separated positions, e.g. 1,3")->required();
  kernel_cmd->add_option("--check-n", kernel_check_n, "cross-check by enumerating S_n (n <= 8)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(sample_cmd)) {
      const auto law = permlab::parse_law(sample_law);
      for (int64_t t = 0; t < sample_trials; ++t) {
        RandomSource rng = RandomSource(sample_seed)
                               .stream(static_cast<uint64_t>(sample_n), 2 * static_cast<uint64_t>(t));
        std::cout << word_text(law.sample(static_cast<Label>(sample_n), rng)) << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(stat_cmd)) {
      const auto stat = permlab::parse_stat(stat_name);
      if (!stat_perm.empty()) {
        const ColoredPermutation cp = parse_perm_text(stat_perm);
        if (stat.needs_colored && cp.colors.empty()) {
          throw std::invalid_argument("statistic '" + stat_name + "' needs word|colors input");
        }
        std::cout << value_text(stat.eval(cp)) << "\n";
        return 0;
      }
      if (stat_n_opt->count() == 0) {
        throw std::invalid_argument("stat: pass either --perm or --n with a law");
      }
      const auto law = permlab::parse_law(stat_law);
      if (stat.needs_colored && !law.colored) {
        throw std::invalid_argument("statistic '" + stat_name + "' needs a colored law");
      }
      for (int64_t t = 0; t < stat_trials; ++t) {
        RandomSource rng = RandomSource(stat_seed)
                               .stream(static_cast<uint64_t>(stat_n), 2 * static_cast<uint64_t>(t));
        std::cout << value_text(stat.eval(law.sample(static_cast<Label>(stat_n), rng))) << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(walk_cmd)) {
      const auto walk = permlab::parse_walk(walk_name);
      Permutation current = parse_perm_text(walk_perm).sigma;
      RandomSource rng(walk_seed);
      if (walk_trace) std::cout << word_text({current, {}, 1}) << "\n";
      for (int64_t s = 0; s < walk_steps; ++s) {
        current = walk.step(current, rng);
        if (walk_trace) std::cout << word_text({current, {}, 1}) << "\n";
      }
      if (!walk_trace) std::cout << word_text({current, {}, 1}) << "\n";
      return 0;
    }

    if (app.got_subcommand(verify_cmd)) {
      const permlab::VerifyReport report = permlab::verify_all();
      for (const auto& check : report.checks) {
        const char* tag = check.status == "pass" ? "[PASS]" : check.status == "warn" ? "[WARN]" : "[FAIL]";
        std::cout << tag << " " << check.name << " — " << check.detail << "\n";
      }
      std::cout << report.checks.size() << " checks: " << report.failures << " failed, "
                << report.warnings << " warnings\n";
      if (!verify_report_path.empty()) {
        permlab::detail::write_text_file(verify_report_path,
                                         permlab::verify_report_json(report).dump(2) + "\n");
        std::cout << "wrote " << verify_report_path << "\n";
      }
      return report.ok() ? 0 : 1;
    }

    if (app.got_subcommand(exp_cmd)) {
      permlab::ExperimentSpec spec;
      if (!exp_config.empty()) spec = permlab::load_experiment_spec(exp_config);
      if (exp_law_opt->count()) spec.law = exp_law;
      if (exp_stat_opt->count()) spec.stat = exp_stat;
      if (exp_sizes_opt->count()) {
        spec.sizes.clear();
        for (const int64_t n : exp_sizes) spec.sizes.push_back(static_cast<Label>(n));
      }
      if (exp_trials_opt->count()) spec.trials = exp_trials;
      if (exp_seed_opt->count()) spec.seed = exp_seed;
      if (exp_mode_opt->count()) spec.mode = exp_mode;
      if (exp_ref_opt->count()) spec.reference_law = exp_reference;
      if (exp_out_opt->count()) spec.out = exp_out;
      if (exp_threads_opt->count()) spec.threads = exp_threads;
      print_experiment_rows(permlab::run_experiment(spec));
      return 0;
    }

    if (app.got_subcommand(tr_cmd)) {
      permlab::TransferSpec spec;
      if (!tr_config.empty()) spec = transfer_spec_from_json(tr_config);
      if (tr_a_opt->count()) spec.law_a = tr_law_a;
      if (tr_b_opt->count()) spec.law_b = tr_law_b;
      if (tr_stat_opt->count()) spec.stat = tr_stat;
      if (tr_sizes_opt->count()) {
        spec.sizes.clear();
        for (const int64_t n : tr_sizes) spec.sizes.push_back(static_cast<Label>(n));
      }
      if (tr_trials_opt->count()) spec.trials = tr_trials;
      if (tr_seed_opt->count()) spec.seed = tr_seed;
      if (tr_out_opt->count()) spec.out = tr_out;
      if (tr_threads_opt->count()) spec.threads = tr_threads;
      const auto result = permlab::run_transfer(spec);
      for (const auto& row : result.rows) {
        std::cout << "n=" << row.n << " trials=" << row.trials
                  << " ks_before=" << value_text(row.ks_before)
                  << " ks_after=" << value_text(row.ks_after)
                  << " mean_after_a=" << value_text(row.mean_after_a)
                  << " mean_after_b=" << value_text(row.mean_after_b)
                  << " max_abs_delta_a=" << value_text(row.max_abs_delta_a)
                  << " max_abs_delta_b=" << value_text(row.max_abs_delta_b) << "\n";
      }
      if (!result.csv_path.empty()) {
        std::cout << "wrote " << result.csv_path << " and " << result.json_path << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(kernel_cmd)) {
      const std::vector<int> window = permlab::detail::parse_int_list(kernel_window, "kernel window");
      const permlab::Rational p = permlab::descent_window_probability(window);
      std::cout << "P(window in descent set) = " << p.to_string() << " = " << p.to_double() << "\n";
      if (kernel_check_n > 0) {
        const auto perms = permlab::enumerate_sn(static_cast<Label>(kernel_check_n));
        int64_t hits = 0;
        for (const auto& sigma : perms) {
          if (permlab::descents_contain(sigma, window)) ++hits;
        }
        const permlab::Rational enumerated(hits, static_cast<int64_t>(perms.size()));
        std::cout << "enumeration at n=" << kernel_check_n << ": " << hits << "/" << perms.size()
                  << " = " << enumerated.to_string() << "\n";
        if (!(enumerated == p)) {
          std::cout << "MISMATCH\n";
          return 1;
        }
        std::cout << "match\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
