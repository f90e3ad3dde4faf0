// Copyright 2026 The swissrank Authors
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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "manifest.hpp"
#include "swissrank/analysis.hpp"
#include "swissrank/csv.hpp"
#include "swissrank/error.hpp"
#include "swissrank/monte_carlo.hpp"
#include "swissrank/order_sampler.hpp"
#include "swissrank/score_table.hpp"
#include "swissrank/winrate_tensor.hpp"

namespace swissrank::cli {
namespace {

namespace fs = std::filesystem;

// Precondition failures that are the caller's fault rather than the data's.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string scores;
  std::string sequence;
  std::string tensor;
  std::string perturbations;
  std::string outcomes;
  std::string suite;
  std::string manifest;
  std::string out = ".";
  std::string missing = "error";
  std::uint64_t seed = 0;
  std::uint64_t iterations = SimulationConfig::kDefaultIterations;
  unsigned t = 1;
  std::vector<unsigned> t_grid{0, 1, 2};
  std::vector<double> band_cuts;
  unsigned workers = 0;
  std::optional<double> lambda_specialist;
  std::optional<double> generalist_band;
  std::size_t max_models = OracleLimits{}.max_models;
  std::size_t max_rounds = OracleLimits{}.max_rounds;
  std::size_t samples = 10;
  bool check = false;
  bool orders_only = false;
};

enum Flag : unsigned {
  kScores = 1u << 0,
  kSequence = 1u << 1,
  kSimulation = 1u << 2,  // --seed --n --workers
  kT = 1u << 3,
  kTGrid = 1u << 4,      // plus classification thresholds
  kMissing = 1u << 5,
};

void add_flags(CLI::App* sub, Options& o, unsigned flags) {
  if (flags & kScores) sub->add_option("--scores", o.scores, "Score table (CSV, or JSON by extension)");
  if (flags & kSequence) sub->add_option("--sequence", o.sequence, "Round sequence JSON");
  if (flags & kSimulation) {
    sub->add_option("--seed", o.seed, "Root random seed")->envname("CSD_SEED");
    sub->add_option("--n", o.iterations, "Monte Carlo iterations")->check(CLI::PositiveNumber);
    sub->add_option("--workers", o.workers, "Worker threads (0 = auto)");
  }
  if (flags & kT) sub->add_option("--t", o.t, "Models eliminated per round");
  if (flags & kTGrid) {
    sub->add_option("--t-grid", o.t_grid, "Elimination counts to sweep")->delimiter(',');
    sub->add_option("--lambda-specialist", o.lambda_specialist,
                    "Slope at or below which a model is an aggressive specialist");
    sub->add_option("--generalist-band", o.generalist_band,
                    "Largest |slope| classified as robust generalist");
  }
  if (flags & kMissing) {
    sub->add_option("--missing", o.missing, "Missing-score policy")
        ->check(CLI::IsMember({"error", "loss"}));
  }
  sub->add_option("--out", o.out, "Output directory");
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string(flag) + " is required");
}

SimulationConfig simulation_config(const Options& o, unsigned t) {
  SimulationConfig config;
  config.iterations = o.iterations;
  config.seed = o.seed;
  config.schedule = EliminationSchedule::constant(t);
  config.workers = o.workers;
  return config;
}

FsaThresholds thresholds_for(const Options& o, std::size_t rounds) {
  auto th = FsaThresholds::for_rounds(rounds);
  if (o.lambda_specialist) th.lambda_specialist = *o.lambda_specialist;
  if (o.generalist_band) th.generalist_band = *o.generalist_band;
  if (!(th.lambda_specialist < 0.0) || !(th.generalist_band >= 0.0)) {
    throw UsageError("thresholds need --lambda-specialist < 0 <= --generalist-band");
  }
  return th;
}

void check_grid(const Options& o) {
  std::vector<unsigned> grid = o.t_grid;
  std::sort(grid.begin(), grid.end());
  if (std::unique(grid.begin(), grid.end()) - grid.begin() < 2) {
    throw UsageError("--t-grid needs at least two distinct values (slope undefined otherwise)");
  }
}

struct Context {
  const Options& options;
  RunManifest manifest;
  std::ostream& out;
  fs::path out_dir;

  void write(const std::string& name, std::string_view text) {
    write_text_file(out_dir / name, text);
    manifest.outputs.push_back(name);
  }
};

struct LoadedInputs {
  ValidatedInputs validated;
  WinRateTensor tensor;
};

LoadedInputs load_inputs(Context& ctx) {
  const auto& o = ctx.options;
  require(o.scores, "--scores");
  require(o.sequence, "--sequence");
  ctx.manifest.add_input(o.scores);
  ctx.manifest.add_input(o.sequence);
  const ScoreTable table = load_score_table(o.scores);
  const RoundSequence sequence = load_round_sequence(o.sequence);
  auto validated = validate_inputs(table, sequence, parse_missing_policy(o.missing));
  auto tensor = build_tensor(validated);
  return {std::move(validated), std::move(tensor)};
}

void record_simulation(Context& ctx) {
  auto& p = ctx.manifest.parameters;
  p["seed"] = ctx.options.seed;
  p["n"] = ctx.options.iterations;
  p["workers"] = ctx.options.workers;
  p["missing"] = ctx.options.missing;
}

std::string ranking_csv(const SimulationResult& r) {
  const auto ranks = csd_ranks(r);
  std::vector<std::size_t> order(ranks.size());
  for (std::size_t m = 0; m < ranks.size(); ++m) order[ranks[m] - 1] = m;
  std::string text = csv_line({"model", "e_score", "std_err", "survival", "rank"});
  for (const auto m : order) {
    text += csv_line({r.models[m], format_double(r.expected_scores[m]), format_double(r.std_error[m]),
                      format_double(r.survival_prob[m]), std::to_string(ranks[m])});
  }
  return text;
}

void print_ranking(std::ostream& out, const SimulationResult& r) {
  const auto ranks = csd_ranks(r);
  std::vector<std::size_t> order(ranks.size());
  for (std::size_t m = 0; m < ranks.size(); ++m) order[ranks[m] - 1] = m;
  for (const auto m : order) {
    out << ranks[m] << ". " << r.models[m] << "  E=" << format_fixed(r.expected_scores[m], 4)
        << " +/- " << format_fixed(r.std_error[m], 4)
        << "  survival=" << format_fixed(r.survival_prob[m], 4) << "\n";
  }
}

void write_fsa(Context& ctx, const FsaReport& report) {
  ctx.write("fsa.csv", fsa_to_csv(report));
  ctx.write("fsa.json", fsa_to_json(report));
  ctx.write("fsa_plot.csv", fsa_plot_data_csv(report));
  for (const auto& m : report.models) {
    ctx.out << m.model << "  base=" << format_fixed(m.base_score, 4)
            << "  lambda=" << format_fixed(m.lambda, 4) << "  " << to_string(m.classification)
            << "\n";
  }
}

void cmd_rank(Context& ctx) {
  const auto& o = ctx.options;
  auto inputs = load_inputs(ctx);
  record_simulation(ctx);
  ctx.manifest.parameters["t"] = o.t;
  const auto result = estimate(inputs.tensor, simulation_config(o, o.t));
  ctx.write("ranking.csv", ranking_csv(result));
  ctx.write("result.json", simulation_result_to_json(result));
  print_ranking(ctx.out, result);
}

void cmd_fsa(Context& ctx) {
  const auto& o = ctx.options;
  check_grid(o);
  auto inputs = load_inputs(ctx);
  record_simulation(ctx);
  const auto thresholds = thresholds_for(o, inputs.tensor.num_rounds());
  ctx.manifest.parameters["t_grid"] = o.t_grid;
  ctx.manifest.parameters["lambda_specialist"] = thresholds.lambda_specialist;
  ctx.manifest.parameters["generalist_band"] = thresholds.generalist_band;
  write_fsa(ctx, fsa(inputs.tensor, simulation_config(o, 0), o.t_grid, thresholds));
}

void cmd_perturb(Context& ctx) {
  const auto& o = ctx.options;
  require(o.perturbations, "--perturbations");
  auto inputs = load_inputs(ctx);
  ctx.manifest.add_input(o.perturbations);
  record_simulation(ctx);
  ctx.manifest.parameters["t"] = o.t;
  const auto targets = parse_perturbations_csv(read_text_file(o.perturbations));
  const ScoreTable perturbed = perturb_scores(inputs.validated.table, targets);
  const auto comparison =
      perturbation_experiment(inputs.validated.table, perturbed, inputs.validated.sequence,
                              simulation_config(o, o.t), inputs.validated.policy);
  ctx.write("comparison.csv", comparison_to_csv(comparison));
  for (std::size_t m = 0; m < comparison.models.size(); ++m) {
    ctx.out << comparison.models[m] << "  csd " << comparison.csd_rank_before[m] << " -> "
            << comparison.csd_rank_after[m] << "  avg " << comparison.avg_rank_before[m] << " -> "
            << comparison.avg_rank_after[m] << "\n";
  }
}

void cmd_oracle(Context& ctx) {
  const auto& o = ctx.options;
  WinRateTensor tensor;
  if (!o.tensor.empty()) {
    ctx.manifest.add_input(o.tensor);
    tensor = load_tensor(o.tensor);
  } else {
    tensor = load_inputs(ctx).tensor;
  }
  ctx.manifest.parameters["t"] = o.t;
  ctx.manifest.parameters["max_models"] = o.max_models;
  ctx.manifest.parameters["max_rounds"] = o.max_rounds;
  const auto schedule = EliminationSchedule::constant(o.t);
  const auto exact = exact_expected_scores(tensor, schedule, {o.max_models, o.max_rounds});

  std::optional<SimulationResult> mc;
  if (o.check) {
    record_simulation(ctx);
    ctx.manifest.parameters["check"] = true;
    mc = estimate(tensor, simulation_config(o, o.t));
  }
  std::vector<std::string> header{"model", "exact", "exact_rational"};
  if (mc) header.insert(header.end(), {"e_score", "std_err", "abs_diff", "pass"});
  std::string text = csv_line(header);
  bool all_pass = true;
  for (std::size_t m = 0; m < exact.models.size(); ++m) {
    std::vector<std::string> row{exact.models[m], format_fixed(exact.values[m], 12),
                                 exact.exact[m].str()};
    ctx.out << exact.models[m] << "  E=" << format_fixed(exact.values[m], 12);
    if (mc) {
      const double diff = std::abs(mc->expected_scores[m] - exact.values[m]);
      const bool pass = diff <= 3.0 * mc->std_error[m] + 1e-12;
      all_pass = all_pass && pass;
      row.insert(row.end(), {format_double(mc->expected_scores[m]), format_double(mc->std_error[m]),
                             format_double(diff), pass ? "1" : "0"});
      ctx.out << "  MC=" << format_fixed(mc->expected_scores[m], 6) << " |diff|="
              << format_fixed(diff, 6) << (pass ? "  ok" : "  OUTSIDE 3se");
    }
    ctx.out << "\n";
    text += csv_line(row);
  }
  ctx.write("oracle.csv", text);
  if (mc) ctx.out << "check: " << (all_pass ? "pass" : "fail") << "\n";
}

void cmd_tiers(Context& ctx) {
  const auto& o = ctx.options;
  require(o.outcomes, "--outcomes");
  check_grid(o);
  ctx.manifest.add_input(o.outcomes);
  record_simulation(ctx);
  const auto outcomes = load_question_outcomes(o.outcomes);
  const auto bands = o.band_cuts.empty() ? default_decile_bands() : bands_from_cuts(o.band_cuts);
  const auto partition = build_tiers(outcomes, bands);
  const auto rounds = tier_sequence_to_rounds(partition, outcomes);

  nlohmann::ordered_json tiers = nlohmann::ordered_json::array();
  for (std::size_t t = 0; t < partition.tiers.size(); ++t) {
    std::vector<std::string> ids;
    for (const auto q : partition.tiers[t].questions) ids.push_back(outcomes.questions[q]);
    tiers.push_back({{"tier", "B" + std::to_string(t + 1)},
                     {"band", partition.tiers[t].band.label()},
                     {"questions", ids}});
  }
  nlohmann::ordered_json partition_doc;
  partition_doc["tiers"] = std::move(tiers);
  partition_doc["warnings"] = rounds.warnings;
  ctx.write("tiers.json", partition_doc.dump(2) + "\n");
  ctx.write("tier_scores.csv", score_table_to_csv(rounds.table));
  ctx.write("tier_sequence.json", round_sequence_to_json(rounds.sequence));
  for (const auto& w : rounds.warnings) ctx.out << "warning: " << w << "\n";
  ctx.out << "tiers: K=" << rounds.sequence.size() << "\n";

  const auto tensor =
      build_tensor(validate_inputs(rounds.table, rounds.sequence, parse_missing_policy(o.missing)));
  const auto thresholds = thresholds_for(o, tensor.num_rounds());
  ctx.manifest.parameters["t_grid"] = o.t_grid;
  write_fsa(ctx, fsa(tensor, simulation_config(o, 0), o.t_grid, thresholds));
}

void cmd_order(Context& ctx) {
  const auto& o = ctx.options;
  require(o.suite, "--suite");
  ctx.manifest.add_input(o.suite);
  const auto suite = load_weighted_suite(o.suite);
  ctx.manifest.parameters["seed"] = o.seed;
  if (o.orders_only) {
    ctx.manifest.parameters["samples"] = o.samples;
    std::vector<std::string> header{"sample"};
    for (std::size_t k = 0; k < suite.size(); ++k) header.push_back("round_" + std::to_string(k + 1));
    std::string text = csv_line(header);
    for (std::size_t s = 0; s < o.samples; ++s) {
      RandomStream rng(o.seed, s, StreamPurpose::kOrder);
      const auto sampled = sample_order(suite, rng);
      std::vector<std::string> row{std::to_string(s + 1)};
      for (std::size_t i = 0; i < sampled.order.size(); ++i) {
        row.push_back(suite.datasets()[sampled.order[i]]);
        ctx.out << (i ? " > " : "") << suite.datasets()[sampled.order[i]];
      }
      ctx.out << "\n";
      text += csv_line(row);
    }
    ctx.write("orders.csv", text);
    return;
  }
  require(o.scores, "--scores (or --orders-only)");
  ctx.manifest.add_input(o.scores);
  record_simulation(ctx);
  ctx.manifest.parameters["t"] = o.t;
  const auto table = load_score_table(o.scores);
  const auto result =
      estimate_weighted(suite, table, simulation_config(o, o.t), parse_missing_policy(o.missing));
  ctx.write("ranking.csv", ranking_csv(result));
  ctx.write("result.json", simulation_result_to_json(result));
  print_ranking(ctx.out, result);
}

void cmd_build_tensor(Context& ctx) {
  auto inputs = load_inputs(ctx);
  ctx.manifest.parameters["missing"] = ctx.options.missing;
  ctx.write("tensor.json", tensor_to_json(inputs.tensor));
  ctx.out << "tensor: M=" << inputs.tensor.num_models() << " K=" << inputs.tensor.num_rounds()
          << "\n";
}

std::vector<std::string> replay_args(const std::vector<std::string>& args, const Options& o,
                                     bool uses_seed) {
  std::vector<std::string> out = args;
  const bool has_seed = std::any_of(args.begin(), args.end(), [](const std::string& a) {
    return a == "--seed" || a.rfind("--seed=", 0) == 0;
  });
  if (uses_seed && !has_seed) {
    out.push_back("--seed");
    out.push_back(std::to_string(o.seed));
  }
  return out;
}

int replay(const Options& o, std::ostream& out, std::ostream& err) {
  const auto doc = nlohmann::ordered_json::parse(read_text_file(o.manifest));
  const auto manifest = RunManifest::from_json(doc);
  for (const auto& [path, digest] : manifest.inputs) {
    if (sha256_file(path) != digest) {
      throw IoError("input '" + path + "' changed since the manifest was written");
    }
  }
  std::vector<std::string> args = manifest.argv;
  if (o.out != ".") {
    bool replaced = false;
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
      if (args[i] == "--out") {
        args[i + 1] = o.out;
        replaced = true;
      }
    }
    if (!replaced) args.insert(args.end(), {"--out", o.out});
  }
  return run(args, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Swiss-system tournament ranking over benchmark score tables", "swissrank"};
  app.require_subcommand(1);

  auto* rank = app.add_subcommand("rank", "Expected win scores at a fixed elimination count");
  add_flags(rank, o, kScores | kSequence | kSimulation | kT | kMissing);

  auto* fsa_cmd = app.add_subcommand("fsa", "Failure sensitivity sweep over elimination counts");
  add_flags(fsa_cmd, o, kScores | kSequence | kSimulation | kTGrid | kMissing);

  auto* perturb = app.add_subcommand("perturb", "Compare rankings before and after score edits");
  add_flags(perturb, o, kScores | kSequence | kSimulation | kT | kMissing);
  perturb->add_option("--perturbations", o.perturbations, "CSV model,dataset,score");

  auto* oracle = app.add_subcommand("oracle", "Exact expected scores for small contests");
  add_flags(oracle, o, kScores | kSequence | kSimulation | kT | kMissing);
  oracle->add_option("--tensor", o.tensor, "Win-rate tensor JSON (instead of scores+sequence)");
  oracle->add_flag("--check", o.check, "Compare against a Monte Carlo estimate");
  oracle->add_option("--max-models", o.max_models, "Enumeration limit on M");
  oracle->add_option("--max-rounds", o.max_rounds, "Enumeration limit on K");

  auto* tiers = app.add_subcommand("tiers", "Difficulty tiers from per-question outcomes, then FSA");
  add_flags(tiers, o, kSimulation | kTGrid | kMissing);
  tiers->add_option("--outcomes", o.outcomes, "CSV model,question_id,outcome");
  tiers->add_option("--bands", o.band_cuts, "Accuracy cut points, ascending from 0 to 100")
      ->delimiter(',');

  auto* order = app.add_subcommand("order", "Weighted random round orders");
  add_flags(order, o, kScores | kSimulation | kT | kMissing);
  order->add_option("--suite", o.suite, "Weighted suite JSON");
  order->add_flag("--orders-only", o.orders_only, "Only print sampled orders");
  order->add_option("--samples", o.samples, "Number of orders to print with --orders-only");

  auto* build = app.add_subcommand("build-tensor", "Export the pairwise win-rate tensor");
  add_flags(build, o, kScores | kSequence | kMissing);

  auto* replay_cmd = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay_cmd->add_option("manifest", o.manifest, "manifest.json of an earlier run")->required();
  replay_cmd->add_option("--out", o.out, "Output directory override");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();
  try {
    if (command == "replay") return replay(o, out, err);

    Context ctx{o, {}, out, fs::path(o.out)};
    ctx.manifest.command = command;
    const bool uses_seed = command != "build-tensor";
    ctx.manifest.argv = replay_args(args, o, uses_seed);
    fs::create_directories(ctx.out_dir);

    const std::map<std::string, void (*)(Context&)> handlers{
        {"rank", cmd_rank},   {"fsa", cmd_fsa},     {"perturb", cmd_perturb},
        {"oracle", cmd_oracle}, {"tiers", cmd_tiers}, {"order", cmd_order},
        {"build-tensor", cmd_build_tensor}};
    handlers.at(command)(ctx);
    write_text_file(ctx.out_dir / "manifest.json", ctx.manifest.to_json().dump(2) + "\n");
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error (" << command << "): " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << command << "): " << e.what() << "\n";
    return kExitDataError;
  } catch (const nlohmann::json::exception& e) {
    err << "error (" << command << "): " << e.what() << "\n";
    return kExitDataError;
  } catch (const fs::filesystem_error& e) {
    err << "error (" << command << "): " << e.what() << "\n";
    return kExitDataError;
  }
}

}  // namespace swissrank::cli
