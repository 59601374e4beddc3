// Copyright 2026 The cibgame Authors
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

// Batch front-end: solve, simulate, evaluate, reduce, check and strategy.
//
// Exit codes: 0 ok, 1 a check failed, 2 invalid input, 3 a size or node cap
// was exceeded, 4 an artifact belongs to a different model.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cibgame/belief.hpp"
#include "cibgame/evaluation.hpp"
#include "cibgame/io.hpp"
#include "cibgame/model.hpp"
#include "cibgame/solver.hpp"
#include "cibgame/strategy.hpp"

namespace {

using cibgame::GameModel;
using nlohmann::json;

constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;
constexpr int kExitHash = 4;

struct Options {
  std::string scenario;
  std::string mode;
  std::string constraints;
  int comm_grid = 1;
  int ctrl_grid = 1;
  bool deterministic_only = false;
  std::string out;
  std::uint64_t seed = 0;
  std::size_t episodes = 1000;
  std::string adversary = "best-response";
  int threads = 1;
  std::string property;
  std::string tree;
  std::string strategy;
  bool check = false;
  std::string kind = "team";
  bool behavioral = false;
};

class InputError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

cibgame::ConstraintSpec ParseConstraints(const std::string& text) {
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("--constraints: '" + text + "' is not smin:smax:N[:clock]");
    }
  }
  if (parts.size() != 3 && parts.size() != 4) {
    throw InputError("--constraints: '" + text + "' is not smin:smax:N[:clock]");
  }
  cibgame::ConstraintSpec c;
  c.s_min = parts[0];
  c.s_max = parts[1];
  c.n_max = parts[2];
  c.initial_clock = parts.size() == 4 ? parts[3] : c.s_min;
  return c;
}

// Scenario with --mode and --constraints applied. These change the model
// hash, so every artifact records the exact configuration it was built for.
GameModel LoadModel(const Options& o) {
  GameModel model = cibgame::LoadScenarioFile(o.scenario);
  if (!o.mode.empty()) model.info_structure = cibgame::InfoStructureFromString(o.mode);
  if (!o.constraints.empty()) model.constraints = ParseConstraints(o.constraints);
  const auto violations = cibgame::Validate(model);
  if (!violations.empty()) throw cibgame::ValidationError(violations);
  return model;
}

// A tree carries its own mode and constraints; adopt them unless overridden.
cibgame::SolveTree LoadTree(const Options& o, GameModel& model) {
  cibgame::SolveTree tree = cibgame::TreeFromJson(cibgame::ReadJsonFile(o.tree));
  if (o.mode.empty()) model.info_structure = tree.mode;
  if (o.constraints.empty()) model.constraints = tree.constraints;
  cibgame::RequireHash(tree.model_hash, model, "tree " + o.tree);
  return tree;
}

cibgame::HistoryStrategy LoadStrategy(const std::string& path, const GameModel& model) {
  cibgame::HistoryStrategy s = cibgame::StrategyFromJson(cibgame::ReadJsonFile(path));
  cibgame::RequireHash(s.model_hash, model, "strategy " + path);
  return s;
}

void PrintVerdict(double deviation, double tol) {
  std::cout << "deviation=" << cibgame::FormatDouble(deviation) << "\n";
  std::cout << "deviation<=" << tol << (deviation <= tol ? " PASS" : " FAIL") << "\n";
}

void WriteChecks(const Options& o, const std::vector<cibgame::CheckRecord>& records) {
  if (o.out.empty()) return;
  std::ofstream out(o.out);
  if (!out) throw InputError("cannot write " + o.out);
  cibgame::WriteChecksCsv(out, records);
}

int CmdSolve(const Options& o) {
  GameModel model = LoadModel(o);
  cibgame::SolveConfig cfg;
  cfg.comm = cibgame::CandidateSpec::Grid(o.deterministic_only ? 1 : o.comm_grid);
  cfg.ctrl = cibgame::CandidateSpec::Grid(o.deterministic_only ? 1 : o.ctrl_grid);
  const auto start = std::chrono::steady_clock::now();
  const cibgame::SolveTree tree = cibgame::Solve(model, cfg);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.out.empty()) cibgame::WriteJsonFile(o.out, cibgame::TreeToJson(tree));
  std::cout << "value=" << cibgame::FormatDouble(tree.root_value) << "\n"
            << "nodes=" << tree.nodes.size() << " evaluated=" << tree.nodes_evaluated << "\n"
            << "comm_candidates=" << tree.comm_provenance
            << " ctrl_candidates=" << tree.ctrl_provenance << "\n"
            << "mode=" << cibgame::ToString(tree.mode) << " model_hash=" << tree.model_hash
            << "\n"
            << "wall_seconds=" << wall << "\n";
  return 0;
}

// Holds whichever team strategy the flags select.
struct TeamHandle {
  std::optional<cibgame::SolveTree> tree;
  std::unique_ptr<cibgame::CoordinatorPolicy> policy;
  std::optional<cibgame::HistoryStrategy> table;
  const cibgame::TeamStrategy* get() const {
    if (policy) return policy.get();
    return &*table;
  }
};

TeamHandle LoadTeam(const Options& o, GameModel& model) {
  TeamHandle h;
  if (!o.tree.empty()) {
    h.tree = LoadTree(o, model);
    h.policy = std::make_unique<cibgame::CoordinatorPolicy>(model, *h.tree);
  } else if (!o.strategy.empty()) {
    h.table = LoadStrategy(o.strategy, model);
  } else {
    throw InputError("--tree or --strategy is required");
  }
  return h;
}

// Resolves --adversary to a concrete strategy. Best response is computed
// exactly against the team and then frozen.
std::unique_ptr<cibgame::AdversaryStrategy> LoadAdversary(const Options& o,
                                                          const GameModel& model,
                                                          const cibgame::TeamStrategy& team,
                                                          double* br_value) {
  if (o.adversary == "best-response") {
    cibgame::BestResponse br = cibgame::AdversaryBestResponse(model, team);
    if (br_value != nullptr) *br_value = br.value;
    return std::make_unique<cibgame::HistoryStrategy>(std::move(br.strategy));
  }
  if (o.adversary == "uniform") return std::make_unique<cibgame::UniformAdversary>(model);
  if (o.adversary.rfind("fixed:", 0) == 0) {
    return std::make_unique<cibgame::HistoryStrategy>(
        LoadStrategy(o.adversary.substr(6), model));
  }
  throw InputError("--adversary: expected best-response, uniform or fixed:PATH");
}

int CmdSimulate(const Options& o) {
  GameModel model = LoadModel(o);
  TeamHandle team = LoadTeam(o, model);
  double br = 0.0;
  auto adversary = LoadAdversary(o, model, *team.get(), &br);
  const cibgame::MonteCarloResult r = cibgame::MonteCarloCost(
      model, *team.get(), *adversary, o.episodes, o.seed, o.threads, true);
  const std::string path = o.out.empty() ? "episodes.csv" : o.out;
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  cibgame::WriteEpisodesCsv(out, model, r.episodes);
  std::cout << "episodes=" << o.episodes << " seed=" << o.seed << "\n"
            << "mean=" << cibgame::FormatDouble(r.mean)
            << " standard_error=" << cibgame::FormatDouble(r.standard_error) << "\n";
  if (team.tree) {
    std::cout << "value=" << cibgame::FormatDouble(team.tree->root_value) << "\n";
  }
  return 0;
}

int CmdEvaluate(const Options& o) {
  GameModel model = LoadModel(o);
  TeamHandle team = LoadTeam(o, model);
  if (o.adversary == "best-response") {
    const cibgame::BestResponse br = cibgame::AdversaryBestResponse(model, *team.get());
    std::cout << "best_response_value=" << cibgame::FormatDouble(br.value) << "\n";
    if (!o.out.empty()) cibgame::WriteJsonFile(o.out, cibgame::StrategyToJson(br.strategy));
  } else {
    auto adversary = LoadAdversary(o, model, *team.get(), nullptr);
    std::cout << "exact=" << cibgame::FormatDouble(cibgame::ExactCost(model, *team.get(),
                                                                      *adversary))
              << "\n";
  }
  return 0;
}

int CmdReduce(const Options& o) {
  GameModel model = LoadModel(o);
  if (o.strategy.empty()) throw InputError("--strategy is required");
  const cibgame::HistoryStrategy full = LoadStrategy(o.strategy, model);
  const cibgame::ReductionArtifacts art = cibgame::ReduceStrategy(model, full);
  std::cout << "information_sets=" << art.psi.size() << " post_control_sets="
            << art.psi_plus.size() << "\n"
            << "factorization_deviation=" << cibgame::FormatDouble(art.factorization_deviation)
            << "\n";
  if (!o.check) return 0;
  // The extremes of J(reduced, g) - J(full, g) over every pure adversary
  // strategy g, each attained by the reported strategy.
  const cibgame::CostGap gap = cibgame::CostGapRange(model, art.reduced, full);
  const double ja = cibgame::ExactCost(model, full, gap.argmax);
  const double jb = cibgame::ExactCost(model, full, gap.argmin);
  std::cout << "adversary,J_full,J_reduced,delta\n"
            << "argmax," << cibgame::FormatDouble(ja) << ','
            << cibgame::FormatDouble(ja + gap.max_gap) << ','
            << cibgame::FormatDouble(gap.max_gap) << "\n"
            << "argmin," << cibgame::FormatDouble(jb) << ','
            << cibgame::FormatDouble(jb + gap.min_gap) << ','
            << cibgame::FormatDouble(gap.min_gap) << "\n";
  WriteChecks(o, {{"reduction", "max_delta", gap.max_gap},
                  {"reduction", "min_delta", gap.min_gap},
                  {"reduction", "factorization", art.factorization_deviation}});
  const double dev = gap.MaxAbs();
  PrintVerdict(dev, 1e-9);
  return dev <= 1e-9 && art.factorization_deviation <= 1e-12 ? 0 : kExitFail;
}

int CmdCheck(const Options& o) {
  GameModel model = LoadModel(o);
  if (o.property == "saddle") {
    if (o.tree.empty()) throw InputError("--tree is required for the saddle check");
    const cibgame::SolveTree tree = LoadTree(o, model);
    const cibgame::CoordinatorPolicy policy(model, tree);
    const cibgame::BestResponse br = cibgame::AdversaryBestResponse(model, policy);
    const double dev = std::abs(br.value - tree.root_value);
    std::cout << "value=" << cibgame::FormatDouble(tree.root_value)
              << " best_response=" << cibgame::FormatDouble(br.value) << "\n";
    WriteChecks(o, {{"saddle", "root", dev}});
    PrintVerdict(dev, 1e-9);
    return dev <= 1e-9 ? 0 : kExitFail;
  }

  // The remaining properties take a team strategy from --strategy or draw
  // one from --seed.
  std::optional<cibgame::HistoryStrategy> loaded;
  std::unique_ptr<cibgame::TeamStrategy> generated;
  std::optional<cibgame::InformationSets> sets;
  auto information_sets = [&]() -> const cibgame::InformationSets& {
    if (!sets) sets = cibgame::CollectInformationSets(model);
    return *sets;
  };
  const cibgame::TeamStrategy* team = nullptr;
  if (!o.strategy.empty()) {
    loaded = LoadStrategy(o.strategy, model);
    team = &*loaded;
  } else if (o.property == "anchor") {
    generated = std::make_unique<cibgame::BeliefDrivenTeam>(model, o.seed);
    team = generated.get();
  } else {
    generated = std::make_unique<cibgame::HistoryStrategy>(
        cibgame::RandomTeamStrategy(model, information_sets(), o.seed, true));
    team = generated.get();
  }

  if (o.property == "reduction") {
    const cibgame::ReductionArtifacts art = cibgame::ReduceStrategy(model, *team);
    const cibgame::CostGap gap = cibgame::CostGapRange(model, art.reduced, *team);
    const double dev = gap.MaxAbs();
    WriteChecks(o, {{"reduction", "max_delta", gap.max_gap},
                    {"reduction", "min_delta", gap.min_gap},
                    {"reduction", "factorization", art.factorization_deviation}});
    std::cout << "factorization_deviation="
              << cibgame::FormatDouble(art.factorization_deviation) << "\n";
    PrintVerdict(dev, 1e-9);
    return dev <= 1e-9 && art.factorization_deviation <= 1e-12 ? 0 : kExitFail;
  }

  std::unique_ptr<cibgame::AdversaryStrategy> adversary;
  if (o.adversary == "best-response" || o.adversary == "uniform") {
    // Properties must hold for any adversary; a behavioral random one
    // exercises more of the history space than the best response.
    if (o.adversary == "uniform") {
      adversary = std::make_unique<cibgame::UniformAdversary>(model);
    } else {
      adversary = std::make_unique<cibgame::HistoryStrategy>(cibgame::RandomAdversaryStrategy(
          model, information_sets(), o.seed ^ 0x5bd1e995ULL, true));
    }
  } else {
    adversary = LoadAdversary(o, model, *team, nullptr);
  }

  cibgame::CheckReport report;
  if (o.property == "ci") {
    report = cibgame::CheckConditionalIndependence(model, *team, *adversary);
  } else if (o.property == "anchor") {
    report = cibgame::CheckBeliefAnchor(model, *team, *adversary);
  } else {
    throw InputError("--property: expected ci, anchor, saddle or reduction");
  }
  WriteChecks(o, report.records);
  std::cout << "groups=" << report.records.size() << "\n";
  PrintVerdict(report.max_deviation, 1e-12);
  return report.max_deviation <= 1e-12 ? 0 : kExitFail;
}

int CmdStrategy(const Options& o) {
  GameModel model = LoadModel(o);
  if (o.out.empty()) throw InputError("--out is required");
  const cibgame::InformationSets sets = cibgame::CollectInformationSets(model);
  cibgame::HistoryStrategy s;
  if (o.kind == "team") {
    s = cibgame::RandomTeamStrategy(model, sets, o.seed, o.behavioral);
  } else if (o.kind == "adversary") {
    s = cibgame::RandomAdversaryStrategy(model, sets, o.seed, o.behavioral);
  } else {
    throw InputError("--kind: expected team or adversary");
  }
  cibgame::WriteJsonFile(o.out, cibgame::StrategyToJson(s));
  std::cout << "rows=" << s.table().size() << " model_hash=" << s.model_hash << "\n";
  return 0;
}

void AddScenario(CLI::App* cmd, Options& o) {
  cmd->add_option("--scenario", o.scenario, "Scenario JSON file")->required();
  cmd->add_option("--mode", o.mode, "maxinfo or encrypted");
  cmd->add_option("--constraints", o.constraints, "smin:smax:N[:clock]");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-sum team games with costly erasure-prone communication"};
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "Solve the min-max dynamic program");
  AddScenario(solve, o);
  solve->add_option("--comm-grid", o.comm_grid, "Communication grid resolution")
      ->check(CLI::PositiveNumber);
  solve->add_option("--ctrl-grid", o.ctrl_grid, "Control grid resolution")
      ->check(CLI::PositiveNumber);
  solve->add_flag("--deterministic-only", o.deterministic_only,
                  "Deterministic prescriptions only");
  solve->add_option("--out", o.out, "Tree output file");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo episodes to CSV");
  AddScenario(simulate, o);
  simulate->add_option("--tree", o.tree, "Solved tree");
  simulate->add_option("--strategy", o.strategy, "Team strategy file");
  simulate->add_option("--adversary", o.adversary, "best-response|uniform|fixed:PATH");
  simulate->add_option("--episodes", o.episodes, "Episode count");
  simulate->add_option("--seed", o.seed, "Base seed");
  simulate->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  simulate->add_option("--out", o.out, "Episodes CSV (default episodes.csv)");

  auto* evaluate = app.add_subcommand("evaluate", "Exact expected cost");
  AddScenario(evaluate, o);
  evaluate->add_option("--tree", o.tree, "Solved tree");
  evaluate->add_option("--strategy", o.strategy, "Team strategy file");
  evaluate->add_option("--adversary", o.adversary, "best-response|uniform|fixed:PATH");
  evaluate->add_option("--out", o.out, "Best-response strategy output");

  auto* reduce = app.add_subcommand("reduce", "Reduce a full-history team strategy");
  AddScenario(reduce, o);
  reduce->add_option("--strategy", o.strategy, "Team strategy file")->required();
  reduce->add_flag("--check", o.check, "Compare costs over all pure adversary strategies");
  reduce->add_option("--out", o.out, "Checks CSV");

  auto* check = app.add_subcommand("check", "Structural property checks");
  AddScenario(check, o);
  check->add_option("--property", o.property, "ci|anchor|saddle|reduction")
      ->required()
      ->check(CLI::IsMember({"ci", "anchor", "saddle", "reduction"}));
  check->add_option("--tree", o.tree, "Solved tree (saddle)");
  check->add_option("--strategy", o.strategy, "Team strategy file");
  check->add_option("--adversary", o.adversary, "best-response|uniform|fixed:PATH");
  check->add_option("--seed", o.seed, "Seed for generated strategies");
  check->add_option("--out", o.out, "Checks CSV");

  auto* strategy = app.add_subcommand("strategy", "Write a random full-history strategy");
  AddScenario(strategy, o);
  strategy->add_option("--kind", o.kind, "team or adversary");
  strategy->add_option("--seed", o.seed, "Seed");
  strategy->add_flag("--behavioral", o.behavioral, "Randomized rows instead of pure");
  strategy->add_option("--out", o.out, "Strategy output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*solve) return CmdSolve(o);
    if (*simulate) return CmdSimulate(o);
    if (*evaluate) return CmdEvaluate(o);
    if (*reduce) return CmdReduce(o);
    if (*check) return CmdCheck(o);
    if (*strategy) return CmdStrategy(o);
  } catch (const cibgame::ValidationError& e) {
    for (const auto& v : e.violations()) std::cerr << v.Message() << "\n";
    return kExitInput;
  } catch (const cibgame::HashMismatch& e) {
    std::cerr << "hash mismatch: " << e.what() << "\n";
    return kExitHash;
  } catch (const cibgame::NodeCapExceeded& e) {
    std::cerr << "node cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const cibgame::SizeLimitExceeded& e) {
    std::cerr << "size limit exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}
