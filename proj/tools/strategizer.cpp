// strategizer: command-line front end.
//
//   strategizer value <game>
//   strategizer plan <game> --eta E --T T --eps EPS
//   strategizer simulate <game> --learner mwu|br|replicator --schedule <file|builtin> --eta E --T T
//   strategizer reduce <graph> [--normalize]
//   strategizer verify <graph> <witness>
//   strategizer brute <graph|instance> [--cap N]
//   strategizer battery --seed S --count N
//
// Exit codes: 0 success, 1 negative verdict or failed battery, 2 input
// error, 3 precondition violated, 4 resource cap.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "strategizer/battery.hpp"
#include "strategizer/errors.hpp"
#include "strategizer/game.hpp"
#include "strategizer/io.hpp"
#include "strategizer/learners.hpp"
#include "strategizer/ocdp.hpp"
#include "strategizer/planner.hpp"

namespace fs = std::filesystem;
namespace sz = strategizer;
using sz::io::Json;

namespace {

constexpr int kNegativeVerdict = 1;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void emit(const Json& doc, const std::string& out_path) {
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    sz::io::write_atomic(out_path, text);
  }
}

sz::BimatrixGame load_game(const std::string& path) {
  return sz::io::parse_game(sz::io::read_text(path), path);
}

sz::DirectedGraph load_graph(const std::string& path) {
  return sz::io::parse_graph(sz::io::read_text(path), path);
}

sz::StepRule parse_step_rule(const std::string& name) {
  if (name == "fixed") return sz::StepRule::fixed;
  if (name == "line-search") return sz::StepRule::line_search;
  if (name == "away") return sz::StepRule::away_steps;
  throw sz::InputError("unknown step rule '" + name + "' (expected fixed, line-search or away)");
}

void require_positive(const char* name, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw sz::InputError(std::string(name) + " must be positive, got " + num(v));
  }
}

// ---------------------------------------------------------------------------

struct ValueArgs {
  std::string game;
  std::string out;
};

int cmd_value(const ValueArgs& args) {
  const sz::BimatrixGame game = load_game(args.game);
  emit(sz::io::game_value_to_json(sz::game_value(game.a())), args.out);
  return 0;
}

struct PlanArgs {
  std::string game;
  double eta = 0.1;
  double horizon = 100.0;
  double eps = 1e-3;
  double tol = sz::kDefaultTol;
  std::string step_rule = "fixed";
  std::string out;
};

sz::PlannerResult plan_for(const sz::Matrix& a, double eta, double horizon, double eps,
                           const std::string& step_rule) {
  sz::FrankWolfeOptions opts;
  opts.step_rule = parse_step_rule(step_rule);
  return sz::optimize_continuous(a, sz::Vector::Zero(a.cols()), horizon, eta, eps, opts);
}

int cmd_plan(const PlanArgs& args) {
  require_positive("--eta", args.eta);
  require_positive("--T", args.horizon);
  require_positive("--eps", args.eps);
  const sz::BimatrixGame game = load_game(args.game);
  if (!game.is_zero_sum()) {
    throw sz::PreconditionError(
        "plan needs a zero-sum game (B = -A); use `strategizer simulate` for general-sum play");
  }
  const sz::Matrix& a = game.a();
  sz::io::PlanReport report;
  report.eta = args.eta;
  report.horizon = args.horizon;
  report.value = sz::game_value(a);
  report.plan = plan_for(a, args.eta, args.horizon, args.eps, args.step_rule);
  report.bounds = sz::reward_bounds(a, args.horizon, args.eta);
  report.min_br = sz::min_br_minmax(a, args.tol);
  report.asymptotic_bound =
      report.min_br.value * args.horizon +
      std::log(static_cast<double>(a.cols()) / static_cast<double>(report.min_br.k)) / args.eta;
  report.no_pure = sz::check_assumption_no_pure(a, args.tol);
  emit(sz::io::plan_report_to_json(report), args.out);
  return 0;
}

struct SimulateArgs {
  std::string game;
  std::string learner = "mwu";
  std::string schedule = "uniform";
  double eta = 0.1;
  std::optional<double> horizon;
  double eps = 1e-3;
  std::string h0;
  std::string out_prefix = "trajectory";
};

sz::Schedule with_mode(const sz::Schedule& s, sz::ScheduleMode mode) {
  if (s.mode() == mode) return s;
  return sz::Schedule(mode, s.segments());
}

sz::Schedule builtin_schedule(const std::string& name, const sz::BimatrixGame& game,
                              const SimulateArgs& args, double horizon, sz::ScheduleMode mode) {
  const sz::Index n = game.rows();
  if (name == "uniform") return sz::Schedule::constant(mode, horizon, sz::SimplexVector::uniform(n));
  if (name.rfind("pure:", 0) == 0) {
    long i = 0;
    try {
      i = std::stol(name.substr(5));
    } catch (const std::exception&) {
      throw sz::InputError("bad builtin schedule '" + name + "' (expected pure:<row>)");
    }
    if (i < 1 || i > n) {
      throw sz::InputError("pure:" + std::to_string(i) + " is outside rows 1.." + std::to_string(n));
    }
    return sz::Schedule::constant(mode, horizon, sz::SimplexVector::pure(n, i - 1));
  }
  if (name == "constant-xstar") {
    if (!game.is_zero_sum()) throw sz::PreconditionError("constant-xstar needs a zero-sum game");
    if (horizon <= 0.0) return sz::Schedule(mode, {});
    const sz::PlannerResult plan = plan_for(game.a(), args.eta, horizon, args.eps, "fixed");
    return sz::Schedule::constant(mode, horizon, plan.x_star);
  }
  if (name == "alternating") {
    if (horizon != std::floor(horizon)) {
      throw sz::InputError("alternating schedule needs an integer horizon");
    }
    const sz::AlternatingPlan plan = sz::alternating_plan(game.a());
    return with_mode(sz::alternating_schedule(plan, static_cast<long>(horizon)), mode);
  }
  throw sz::InputError("unknown schedule '" + name +
                       "' (expected a file or one of constant-xstar, alternating, pure:i, uniform)");
}

int cmd_simulate(const SimulateArgs& args) {
  const sz::BimatrixGame game = load_game(args.game);
  const sz::LearnerKind kind = sz::parse_learner_kind(args.learner);
  if (kind != sz::LearnerKind::best_response) require_positive("--eta", args.eta);
  const sz::ScheduleMode mode = kind == sz::LearnerKind::replicator ? sz::ScheduleMode::continuous
                                                                    : sz::ScheduleMode::discrete;
  sz::Vector h0 = sz::Vector::Zero(game.cols());
  if (!args.h0.empty()) h0 = sz::io::parse_vector(sz::io::read_text(args.h0), args.h0);

  std::optional<sz::Schedule> schedule;
  if (fs::is_regular_file(args.schedule)) {
    schedule = sz::io::parse_schedule(sz::io::read_text(args.schedule), args.schedule);
    if (args.horizon && std::abs(*args.horizon - schedule->horizon()) > 1e-9) {
      throw sz::InputError("--T " + num(*args.horizon) + " does not match the schedule length " +
                           num(schedule->horizon()));
    }
  } else {
    if (!args.horizon) throw sz::InputError("--T is required with a builtin schedule");
    if (*args.horizon < 0.0) throw sz::InputError("--T must be non-negative");
    schedule = builtin_schedule(args.schedule, game, args, *args.horizon, mode);
  }

  const sz::Trajectory traj = sz::simulate(game, *schedule, kind, args.eta, h0);
  for (const auto& w : traj.warnings) std::cerr << "warning: " << w << '\n';
  sz::io::write_atomic(args.out_prefix + ".csv", sz::io::trajectory_to_csv(traj, game.cols()));
  sz::io::write_atomic(args.out_prefix + ".json", sz::io::trajectory_to_json(traj).dump(2) + "\n");

  std::cout << "rounds " << traj.rounds.size() << '\n';
  std::cout << "optimizer_total " << num(traj.optimizer_total) << '\n';
  std::cout << "learner_total " << num(traj.learner_total) << '\n';
  if (game.is_zero_sum() && !schedule->segments().empty() && kind != sz::LearnerKind::best_response) {
    const double horizon = schedule->horizon();
    const double cont = sz::reward_constant(sz::SimplexVector(schedule->time_average()), h0, horizon,
                                            game.a(), args.eta);
    std::cout << "reward_cont " << num(cont) << '\n';
    if (h0.isZero(0.0)) {
      const auto [lo, hi] = sz::reward_bounds(game.a(), horizon, args.eta);
      std::cout << "reward_bounds " << num(lo) << ' ' << num(hi) << '\n';
    }
  }
  return 0;
}

struct ReduceArgs {
  std::string graph;
  bool normalize = false;
  std::string out;
};

std::string normalized_path(const std::string& out) {
  fs::path p(out);
  const std::string ext = p.extension().string();
  p.replace_extension();
  return p.string() + ".normalized" + (ext.empty() ? ".json" : ext);
}

int cmd_reduce(const ReduceArgs& args) {
  const sz::OcdpInstance inst = sz::reduce_hamiltonian(load_graph(args.graph));
  if (args.out.empty()) {
    emit(sz::io::instance_to_json(args.normalize ? sz::normalize_payoffs(inst) : inst), "");
    return 0;
  }
  emit(sz::io::instance_to_json(inst), args.out);
  std::cout << "wrote " << args.out << '\n';
  if (args.normalize) {
    const std::string norm_out = normalized_path(args.out);
    emit(sz::io::instance_to_json(sz::normalize_payoffs(inst)), norm_out);
    std::cout << "wrote " << norm_out << '\n';
  }
  return 0;
}

struct VerifyArgs {
  std::string graph;
  std::string witness;
};

int cmd_verify(const VerifyArgs& args) {
  const sz::DirectedGraph graph = load_graph(args.graph);
  const sz::io::Witness w = sz::io::parse_witness(sz::io::read_text(args.witness), args.witness);
  const sz::OcdpInstance inst = sz::reduce_hamiltonian(graph);

  if (!w.sequence.empty()) {
    const sz::OcdpPlayout play = sz::play_ocdp(inst, w.sequence);
    std::optional<std::vector<int>> cycle;
    if (play.total_reward >= static_cast<double>(inst.k)) cycle = sz::extract_cycle(inst, play, graph);
    Json doc = sz::io::witness_to_json(inst, play, cycle.value_or(std::vector<int>{}));
    const bool ok = cycle.has_value();
    doc["ok"] = ok;
    doc["k"] = inst.k;
    if (!ok) doc.erase("cycle");
    emit(doc, "");
    return ok ? 0 : kNegativeVerdict;
  }

  const sz::CycleVerdict verdict = sz::verify_cycle(graph, w.cycle);
  Json doc;
  doc["ok"] = verdict.ok;
  doc["reason"] = sz::describe(verdict.reason);
  if (!verdict.sequence.empty()) {
    const sz::OcdpPlayout play = sz::play_ocdp(inst, verdict.sequence);
    const Json detail = sz::io::witness_to_json(inst, play, verdict.cycle);
    for (const auto& [key, value] : detail.items()) doc[key] = value;
  }
  emit(doc, "");
  return verdict.ok ? 0 : kNegativeVerdict;
}

struct BruteArgs {
  std::string input;
  double cap = static_cast<double>(sz::kDefaultBruteForceCap);
};

int cmd_brute(const BruteArgs& args) {
  const std::string text = sz::io::read_text(args.input);
  std::optional<sz::DirectedGraph> graph;
  sz::OcdpInstance inst;
  if (sz::io::looks_like_json(text)) {
    inst = sz::io::instance_from_json(sz::io::parse_json(text, args.input));
    if (!inst.edges.empty()) graph.emplace(inst.n_vertices, inst.edges);
  } else {
    graph = sz::io::parse_graph(text, args.input);
    inst = sz::reduce_hamiltonian(*graph);
  }
  if (!(args.cap >= 1.0) || args.cap != std::floor(args.cap)) {
    throw sz::InputError("--cap must be a positive integer");
  }
  const auto result = sz::brute_force_ocdp(inst, static_cast<std::uint64_t>(args.cap));
  const sz::OcdpPlayout play = sz::play_ocdp(inst, result.best_sequence);
  const bool yes = result.max_reward >= static_cast<double>(inst.k);
  std::vector<int> cycle;
  if (yes && graph) cycle = sz::extract_cycle(inst, play, *graph).value_or(std::vector<int>{});
  Json doc;
  doc["max_reward"] = result.max_reward;
  doc["k"] = inst.k;
  doc["answer"] = yes ? "YES" : "NO";
  doc["nodes"] = result.nodes;
  const Json detail = sz::io::witness_to_json(inst, play, cycle);
  for (const auto& [key, value] : detail.items()) doc[key] = value;
  emit(doc, "");
  return 0;
}

struct BatteryArgs {
  std::uint64_t seed = sz::battery::Options{}.seed;
  int count = sz::battery::Options{}.count;
  std::vector<int> only;
};

int cmd_battery(const BatteryArgs& args) {
  if (args.count < 1) throw sz::InputError("--count must be positive");
  sz::battery::Options options{args.seed, args.count};
  std::vector<sz::battery::CriterionResult> results;
  if (args.only.empty()) {
    results = sz::battery::run_all(options);
  } else {
    for (int id : args.only) results.push_back(sz::battery::run_criterion(id, options));
  }
  std::cout << sz::battery::format_table(results);
  for (const auto& r : results) {
    if (!r.passed) return kNegativeVerdict;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal play against no-regret learners in repeated matrix games"};
  app.require_subcommand(1);
  const auto existing = CLI::ExistingFile;

  ValueArgs value;
  auto* value_cmd = app.add_subcommand("value", "Minmax value and strategies of a zero-sum game");
  value_cmd->add_option("game", value.game, "Game file (JSON or text)")->required()->check(existing);
  value_cmd->add_option("-o,--out", value.out, "Write the JSON report here instead of stdout");

  PlanArgs plan;
  auto* plan_cmd = app.add_subcommand("plan", "Optimal constant plan against the replicator dynamics");
  plan_cmd->add_option("game", plan.game, "Zero-sum game file")->required()->check(existing);
  plan_cmd->add_option("--eta", plan.eta, "Learner step size")->envname("STRATEGIZER_ETA");
  plan_cmd->add_option("--T", plan.horizon, "Horizon")->envname("STRATEGIZER_T");
  plan_cmd->add_option("--eps", plan.eps, "Reward accuracy")->envname("STRATEGIZER_EPS");
  plan_cmd->add_option("--tol", plan.tol, "Best-response tolerance")->envname("STRATEGIZER_TOL");
  plan_cmd->add_option("--step-rule", plan.step_rule, "fixed, line-search or away")
      ->envname("STRATEGIZER_STEP_RULE");
  plan_cmd->add_option("-o,--out", plan.out, "Write the JSON report here instead of stdout");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Play a schedule against a learner");
  sim_cmd->add_option("game", sim.game, "Game file")->required()->check(existing);
  sim_cmd->add_option("--learner", sim.learner, "mwu, br or replicator")
      ->envname("STRATEGIZER_LEARNER");
  sim_cmd->add_option("--schedule", sim.schedule,
                      "Schedule file, or constant-xstar | alternating | pure:i | uniform");
  sim_cmd->add_option("--eta", sim.eta, "Learner step size")->envname("STRATEGIZER_ETA");
  sim_cmd->add_option("--T", sim.horizon, "Horizon for builtin schedules")->envname("STRATEGIZER_T");
  sim_cmd->add_option("--eps", sim.eps, "Planner accuracy for constant-xstar")
      ->envname("STRATEGIZER_EPS");
  sim_cmd->add_option("--h0", sim.h0, "Initial historical rewards")->check(existing);
  sim_cmd->add_option("--out-prefix", sim.out_prefix, "Writes <prefix>.csv and <prefix>.json");

  ReduceArgs reduce;
  auto* reduce_cmd = app.add_subcommand("reduce", "Hamiltonian cycle graph to OCDP instance");
  reduce_cmd->add_option("graph", reduce.graph, "Graph file")->required()->check(existing);
  reduce_cmd->add_flag("--normalize", reduce.normalize, "Also emit payoffs rescaled into [0, 1]");
  reduce_cmd->add_option("-o,--out", reduce.out, "Instance JSON path (stdout if omitted)");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check a cycle or edge-sequence witness");
  verify_cmd->add_option("graph", verify.graph, "Graph file")->required()->check(existing);
  verify_cmd->add_option("witness", verify.witness, "Witness file")->required()->check(existing);

  BruteArgs brute;
  auto* brute_cmd = app.add_subcommand("brute", "Exhaustive OCDP search");
  brute_cmd->add_option("input", brute.input, "Graph or instance JSON")->required()->check(existing);
  brute_cmd->add_option("--cap", brute.cap, "Maximum number of sequences")
      ->envname("STRATEGIZER_CAP");

  BatteryArgs bat;
  auto* bat_cmd = app.add_subcommand("battery", "Run the seeded acceptance battery");
  bat_cmd->add_option("--seed", bat.seed, "Random seed")->envname("STRATEGIZER_SEED");
  bat_cmd->add_option("--count", bat.count, "Random games / graphs per criterion")
      ->envname("STRATEGIZER_COUNT");
  bat_cmd->add_option("--only", bat.only, "Run only these criterion ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(sz::ErrorKind::input);
  }

  try {
    if (*value_cmd) return cmd_value(value);
    if (*plan_cmd) return cmd_plan(plan);
    if (*sim_cmd) return cmd_simulate(sim);
    if (*reduce_cmd) return cmd_reduce(reduce);
    if (*verify_cmd) return cmd_verify(verify);
    if (*brute_cmd) return cmd_brute(brute);
    if (*bat_cmd) return cmd_battery(bat);
  } catch (const sz::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  }
  return 0;
}
