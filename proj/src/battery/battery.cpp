#include "strategizer/battery.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "strategizer/errors.hpp"
#include "strategizer/game.hpp"
#include "strategizer/learners.hpp"
#include "strategizer/ocdp.hpp"
#include "strategizer/planner.hpp"

namespace strategizer::battery {

namespace {

using Rng = std::mt19937_64;

struct Outcome {
  bool passed;
  std::string detail;
};

Rng make_rng(std::uint64_t seed, int criterion) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(criterion)};
  return Rng(seq);
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

Matrix random_matrix(Rng& rng, Index rows, Index cols) {
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  Matrix a(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) a(i, j) = entry(rng);
  }
  return a;
}

// Zero-sum games with 2..6 rows and columns, entries uniform in [-1, 1].
std::vector<Matrix> random_games(Rng& rng, int count) {
  std::uniform_int_distribution<int> dim(2, 6);
  std::vector<Matrix> games;
  games.reserve(static_cast<std::size_t>(count));
  for (int g = 0; g < count; ++g) {
    const int rows = dim(rng);
    const int cols = dim(rng);
    games.push_back(random_matrix(rng, rows, cols));
  }
  return games;
}

Vector random_simplex_point(Rng& rng, Index n) {
  std::exponential_distribution<double> expo(1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = expo(rng);
  return v / v.sum();
}

// Half pure rounds, half Dirichlet(1) mixtures.
Schedule random_discrete_schedule(Rng& rng, Index n, long rounds) {
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<Index> action(0, n - 1);
  std::vector<ScheduleSegment> segs;
  segs.reserve(static_cast<std::size_t>(rounds));
  for (long t = 0; t < rounds; ++t) {
    segs.push_back({1.0, coin(rng) ? SimplexVector::pure(n, action(rng))
                                   : SimplexVector(random_simplex_point(rng, n))});
  }
  return Schedule(ScheduleMode::discrete, std::move(segs));
}

DirectedGraph random_graph(Rng& rng, int n, bool plant_cycle, int max_edges) {
  std::vector<std::pair<int, int>> all;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v) all.emplace_back(u, v);
    }
  }
  std::shuffle(all.begin(), all.end(), rng);
  std::vector<std::pair<int, int>> edges;
  if (plant_cycle) {
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (int i = 0; i < n; ++i) {
      edges.emplace_back(order[static_cast<std::size_t>(i)],
                         order[static_cast<std::size_t>((i + 1) % n)]);
    }
  }
  const int cap = std::min<int>(max_edges, static_cast<int>(all.size()));
  const int floor = std::max<int>(1, static_cast<int>(edges.size()));
  const int target = std::uniform_int_distribution<int>(floor, std::max(floor, cap))(rng);
  for (const auto& e : all) {
    if (static_cast<int>(edges.size()) >= target) break;
    if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
  }
  std::shuffle(edges.begin(), edges.end(), rng);
  return DirectedGraph(n, std::move(edges));
}

Matrix matching_pennies() {
  Matrix a(2, 2);
  a << 1, -1, -1, 1;
  return a;
}

DirectedGraph five_vertex_example() {
  return DirectedGraph(5, {{0, 4}, {4, 1}, {0, 1}, {1, 3}, {3, 0}, {3, 2}, {2, 0}});
}

double mwu_alternating_total(double eta, long rounds) {
  const Matrix a = matching_pennies();
  const AlternatingPlan plan = alternating_plan(a);
  return simulate(BimatrixGame::zero_sum(a), alternating_schedule(plan, rounds), LearnerKind::mwu,
                  eta)
      .optimizer_total;
}

FrankWolfeOptions planner_options() {
  FrankWolfeOptions opts;
  opts.step_rule = StepRule::fixed;
  return opts;
}

// ---------------------------------------------------------------------------

Outcome alternating_matching_pennies(const Options&) {
  constexpr long kRounds = 1000;
  double worst = 0.0;
  for (double eta : {0.05, 0.1, 0.5}) {
    const double total = mwu_alternating_total(eta, kRounds);
    worst = std::max(worst, std::abs(total - 0.5 * kRounds * std::tanh(eta)));
  }
  return {worst <= 1e-9, fmt("max |total - (T/2)tanh(eta)| = %.3g", worst)};
}

Outcome continuous_bounds(const Options& opt) {
  Rng rng = make_rng(opt.seed, 2);
  constexpr double kHorizon = 100.0;
  constexpr double kEps = 1e-3;
  int cases = 0;
  int failures = 0;
  double min_slack = INFINITY;
  for (const Matrix& a : random_games(rng, opt.count)) {
    const double val = game_value(a).value;
    for (double eta : {0.1, 1.0}) {
      const PlannerResult r =
          optimize_continuous(a, Vector::Zero(a.cols()), kHorizon, eta, kEps, planner_options());
      const double lo = val * kHorizon - 2 * kEps;
      const double hi = val * kHorizon + std::log(static_cast<double>(a.cols())) / eta + 2 * kEps;
      const double slack = std::min(r.r_star - lo, hi - r.r_star);
      min_slack = std::min(min_slack, slack);
      ++cases;
      if (slack < 0.0) ++failures;
    }
  }
  return {failures == 0, fmt("%g/%g cases inside [Val T - 2eps, Val T + ln(m)/eta + 2eps], "
                             "min slack %.3g",
                             cases - failures, cases, min_slack)};
}

Outcome discrete_dominance(const Options& opt) {
  Rng rng = make_rng(opt.seed, 2);  // same games as criterion 2
  constexpr long kRounds = 100;
  int cases = 0;
  int failures = 0;
  double min_margin = INFINITY;
  for (const Matrix& a : random_games(rng, opt.count)) {
    const BimatrixGame game = BimatrixGame::zero_sum(a);
    const Vector h0 = Vector::Zero(a.cols());
    for (double eta : {0.1, 1.0}) {
      const PlannerResult r = optimize_continuous(a, h0, kRounds, eta, 1e-3, planner_options());
      const double cont = reward_constant(r.x_star, h0, kRounds, a, eta);
      const double disc =
          simulate(game, Schedule::constant(ScheduleMode::discrete, kRounds, r.x_star),
                   LearnerKind::mwu, eta)
              .optimizer_total;
      min_margin = std::min(min_margin, disc - cont);
      ++cases;
      if (disc < cont - 1e-9) ++failures;
    }
  }
  return {failures == 0,
          fmt("%g/%g cases with discrete >= continuous - 1e-9, min margin %.3g", cases - failures,
              cases, min_margin)};
}

Outcome discrete_ceiling(const Options& opt) {
  Rng rng = make_rng(opt.seed, 2);  // same games as criterion 2
  Rng sched_rng = make_rng(opt.seed, 4);
  constexpr long kRounds = 100;
  constexpr double kEps = 1e-3;
  constexpr int kSchedules = 50;
  int cases = 0;
  int failures = 0;
  double min_slack = INFINITY;
  for (const Matrix& a : random_games(rng, opt.count)) {
    const BimatrixGame game = BimatrixGame::zero_sum(a);
    const Vector h0 = Vector::Zero(a.cols());
    for (double eta : {0.1, 1.0}) {
      const double r_star = optimize_continuous(a, h0, kRounds, eta, kEps, planner_options()).r_star;
      const double ceiling = r_star + 2 * kEps + eta * kRounds / 2.0;
      for (int s = 0; s < kSchedules; ++s) {
        const Schedule sched = random_discrete_schedule(sched_rng, a.rows(), kRounds);
        const double total = simulate(game, sched, LearnerKind::mwu, eta).optimizer_total;
        min_slack = std::min(min_slack, ceiling - total);
        ++cases;
        if (total > ceiling) ++failures;
      }
    }
  }
  return {failures == 0, fmt("%g/%g schedules under r* + 2eps + eta T/2, min slack %.3g",
                             cases - failures, cases, min_slack)};
}

Outcome asymptotic_example(const Options&) {
  constexpr int n = 3;
  Matrix a = Matrix::Zero(n + 2, n + 3);
  for (int i = 0; i < n; ++i) {
    a(i, i) = n;
    a(i, n) = n;
    a(i, n + 1) = n;
  }
  for (int j = 0; j < n; ++j) {
    a(n, j) = n;
    a(n + 1, j) = n;
  }
  a(n, n) = 2;
  a(n + 1, n + 1) = 2;
  a.col(n + 2).setOnes();

  Vector x = Vector::Zero(n + 2);
  x(2) = 0.5;
  x(3) = 0.5;
  const SimplexVector xs(x);
  double worst = 0.0;
  for (double horizon : {50.0, 200.0}) {
    const double r = reward_constant(xs, Vector::Zero(n + 3), horizon, a, 1.0);
    worst = std::max(worst, std::abs(r - (horizon + std::log(6.0))));
  }
  const MinBrResult br = min_br_minmax(a);
  const bool ok = worst <= 0.01 && br.k == 1 && std::abs(br.value - 1.0) <= 1e-8;
  return {ok, fmt("max |R - (T + ln 6)| = %.3g, k = %g, Val = %.12g", worst,
                  static_cast<double>(br.k), br.value)};
}

Outcome alternating_slope(const Options&) {
  constexpr long kRounds = 2000;
  std::vector<double> slopes;
  for (double eta : {0.05, 0.1, 0.2, 0.4}) {
    const double total = mwu_alternating_total(eta, kRounds);
    slopes.push_back(total / (eta * kRounds));  // Val = 0
  }
  const double lo = *std::min_element(slopes.begin(), slopes.end());
  const double hi = *std::max_element(slopes.begin(), slopes.end());
  const bool ok = lo > 0.0 && hi / lo - 1.0 < 0.25;
  return {ok, fmt("slopes in [%.4f, %.4f], spread %.1f%%", lo, hi, 100.0 * (hi / lo - 1.0))};
}

Outcome hjb(const Options& opt) {
  Rng rng = make_rng(opt.seed, 7);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::uniform_real_distribution<double> time(0.2, 2.0);
  constexpr double kEta = 1.0;
  constexpr int kPoints = 20;
  double worst = 0.0;
  int points = 0;
  for (int g = 0; g < 3; ++g) {
    const Matrix a = random_matrix(rng, 3, 3);
    for (int p = 0; p < kPoints; ++p) {
      Vector h(3);
      for (Index i = 0; i < 3; ++i) h(i) = coord(rng);
      const double t = time(rng);
      worst = std::max(worst, hjb_residual(h, t, a, kEta, 1e-4));
      ++points;
    }
  }
  return {worst <= 1e-3, fmt("%g points, max residual %.3g", points, worst)};
}

Outcome reduction_golden(const Options&) {
  const OcdpInstance inst = reduce_hamiltonian(five_vertex_example());
  // Expected tables, columns v_1..v_5 then v_in_1..v_in_5. Outgoing edges of
  // v_1 carry -0.1 for the learner. History rows t = 5, 6 follow from the
  // update recurrence.
  Matrix a_expected(7, 10);
  a_expected << 1, 0, 0, 0, 0, 0, 0, 0, 0, 0,  //
      0, 0, 0, 0, 1, 0, 0, 0, 0, 0,            //
      1, 0, 0, 0, 0, 0, 0, 0, 0, 0,            //
      0, 1, 0, 0, 0, 0, 0, 0, 0, 0,            //
      0, 0, 0, 1, 0, 0, 0, 0, 0, 0,            //
      0, 0, 0, 1, 0, 0, 0, 0, 0, 0,            //
      0, 0, 1, 0, 0, 0, 0, 0, 0, 0;
  Matrix b_expected(7, 10);
  b_expected << -0.1, 0, 0, 0, 1, 0.85, 0, 0, 0, 0,  //
      0, 1, 0, 0, -4, 0, 0, 0, 0, 0.85,             //
      -0.1, 1, 0, 0, 0, 0.85, 0, 0, 0, 0,           //
      0, -4, 0, 1, 0, 0, 0.85, 0, 0, 0,             //
      1, 0, 0, -4, 0, 0, 0, 0, 0.85, 0,             //
      0, 0, 1, -4, 0, 0, 0, 0, 0.85, 0,             //
      1, 0, -4, 0, 0, 0, 0, 0.85, 0, 0;
  Matrix trace_expected(7, 10);
  trace_expected << 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,    //
      -0.1, 0, 0, 0, 1, 0.85, 0, 0, 0, 0,           //
      -0.1, 1, 0, 0, -3, 0.85, 0, 0, 0, 0.85,       //
      -0.1, -3, 0, 1, -3, 0.85, 0.85, 0, 0, 0.85,   //
      -0.1, -3, 1, -3, -3, 0.85, 0.85, 0, 0.85, 0.85,  //
      0.9, -3, -3, -3, -3, 0.85, 0.85, 0.85, 0.85, 0.85,  //
      0.8, -3, -3, -3, -2, 1.70, 0.85, 0.85, 0.85, 0.85;  // e_1 adds +1 to v_5

  std::vector<std::string> problems;
  if (inst.a != a_expected) problems.push_back("A differs");
  if ((inst.b() - b_expected).cwiseAbs().maxCoeff() > 1e-12) problems.push_back("B differs");
  if (inst.k != 6 || inst.horizon != 6) problems.push_back("k or T differs");

  const OcdpPlayout play = play_ocdp(inst, {0, 1, 3, 5, 6, 0});
  if (play.total_reward != 6.0) problems.push_back("reward " + std::to_string(play.total_reward));
  const std::vector<Index> learner_expected{0, 4, 1, 3, 2, 0};
  if (play.learner_actions != learner_expected) problems.push_back("learner sequence differs");
  double trace_err = 0.0;
  for (Index t = 0; t < 7; ++t) {
    trace_err = std::max(
        trace_err, (play.history_trace[static_cast<std::size_t>(t)] - trace_expected.row(t).transpose())
                       .cwiseAbs()
                       .maxCoeff());
  }
  if (trace_err > 1e-12) problems.push_back("history trace differs");

  std::string detail = "A, B, reward 6, learner v1 v5 v2 v4 v3 v1, trace rows t=0..6";
  if (!problems.empty()) {
    detail.clear();
    for (const auto& p : problems) detail += (detail.empty() ? "" : "; ") + p;
  }
  return {problems.empty(), detail};
}

Outcome reduction_soundness(const Options& opt) {
  Rng rng = make_rng(opt.seed, 9);
  std::uniform_int_distribution<int> size(2, 5);
  std::vector<DirectedGraph> graphs;
  for (int i = 0; i < opt.count; ++i) graphs.push_back(random_graph(rng, size(rng), i % 2 == 0, 8));
  graphs.push_back(five_vertex_example());
  {
    auto edges = five_vertex_example().edges();
    edges.erase(edges.begin() + 1);
    graphs.emplace_back(5, std::move(edges));
  }

  int agree = 0;
  int yes = 0;
  std::string first_bad;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const DirectedGraph& g = graphs[gi];
    const OcdpInstance inst = reduce_hamiltonian(g);
    const BruteForceResult bf = brute_force_ocdp(inst);
    const bool reduced_yes = bf.max_reward == static_cast<double>(g.n_vertices() + 1);
    const bool oracle_yes = oracles::has_hamiltonian_cycle(g.n_vertices(), g.edges());
    bool ok = reduced_yes == oracle_yes;
    if (ok && reduced_yes) {
      ++yes;
      ok = extract_cycle(inst, play_ocdp(inst, bf.best_sequence), g).has_value();
    }
    if (ok) {
      ++agree;
    } else if (first_bad.empty()) {
      first_bad = "; first disagreement at graph " + std::to_string(gi);
    }
  }
  const int total = static_cast<int>(graphs.size());
  return {agree == total, fmt("%g/%g graphs agree (%g with a Hamiltonian cycle)", agree, total,
                              yes) + first_bad};
}

Outcome frank_wolfe_rate(const Options& opt) {
  Rng rng = make_rng(opt.seed, 10);
  std::uniform_int_distribution<int> dim(2, 6);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  constexpr double kEta = 1.0;
  constexpr double kHorizon = 10.0;
  constexpr long kIterations = 2000;
  double worst_ratio = 0.0;
  double worst_grad = 0.0;
  long logged = 0;
  for (int g = 0; g < 20; ++g) {
    const Matrix a = random_matrix(rng, dim(rng), dim(rng));
    Vector h0(a.cols());
    for (Index j = 0; j < h0.size(); ++j) h0(j) = coord(rng);
    const ContinuousObjective f(a, h0, kHorizon, kEta);

    FrankWolfeOptions ref_opts;
    ref_opts.step_rule = StepRule::away_steps;
    const PlannerResult ref = optimize_continuous(a, h0, kHorizon, kEta, 1e-11, ref_opts);
    const double f_lower = f.value(ref.x_star.weights()) - ref.frank_wolfe_gap;
    const double c = f.curvature_bound();

    FrankWolfeOptions fixed;
    fixed.step_rule = StepRule::fixed;
    fixed.max_iterations = kIterations;
    fixed.observer = [&](long s, const Vector&, double fx) {
      worst_ratio = std::max(worst_ratio, (fx - f_lower) / (2.0 * c / static_cast<double>(s + 1)));
      ++logged;
    };
    try {
      optimize_continuous(a, h0, kHorizon, kEta, 1e-300, fixed);
    } catch (const ResourceCapError&) {
      // Expected: the run is cut at kIterations on purpose.
    }

    for (int p = 0; p < 3; ++p) {
      const Vector x = random_simplex_point(rng, a.rows());
      const Vector grad = f.gradient(x);
      constexpr double step = 1e-6;
      for (Index i = 0; i < x.size(); ++i) {
        Vector up = x;
        Vector down = x;
        up(i) += step;
        down(i) -= step;
        const double fd = (f.value(up) - f.value(down)) / (2 * step);
        worst_grad = std::max(worst_grad, std::abs(fd - grad(i)) / std::max(1.0, std::abs(grad(i))));
      }
    }
  }
  const bool ok = worst_ratio <= 1.0 && worst_grad <= 1e-5;
  return {ok, fmt("%g iterates, max gap / (2C/(s+1)) = %.3g, max gradient rel. error %.3g",
                  static_cast<double>(logged), worst_ratio, worst_grad)};
}

Outcome normalization_neutrality(const Options& opt) {
  Rng rng = make_rng(opt.seed, 11);
  std::uniform_int_distribution<int> size(2, 5);
  std::bernoulli_distribution coin(0.5);
  int sequences = 0;
  int identical = 0;
  for (int g = 0; g < 20; ++g) {
    const DirectedGraph graph = random_graph(rng, size(rng), coin(rng), 8);
    const OcdpInstance raw = reduce_hamiltonian(graph);
    const OcdpInstance norm = normalize_payoffs(raw);
    std::uniform_int_distribution<Index> row(0, raw.n_actions_opt() - 1);
    for (int s = 0; s < 100; ++s) {
      std::vector<Index> seq(static_cast<std::size_t>(raw.horizon));
      for (auto& r : seq) r = row(rng);
      const OcdpPlayout p = play_ocdp(raw, seq);
      const OcdpPlayout q = play_ocdp(norm, seq);
      ++sequences;
      if (p.learner_actions == q.learner_actions && p.total_reward == q.total_reward) ++identical;
    }
  }
  return {identical == sequences,
          fmt("%g/%g sequences with identical learner play", identical, sequences)};
}

struct Entry {
  const char* name;
  double limit_seconds;
  Outcome (*run)(const Options&);
};

const Entry kEntries[kCriterionCount] = {
    {"matching-pennies alternating reward", 1.0, alternating_matching_pennies},
    {"continuous reward bounds", 120.0, continuous_bounds},
    {"discrete dominates continuous", 60.0, discrete_dominance},
    {"discrete eta T / 2 ceiling", 180.0, discrete_ceiling},
    {"asymptotic example", 5.0, asymptotic_example},
    {"alternating gain slope", 5.0, alternating_slope},
    {"HJB residual", 120.0, hjb},
    {"reduction golden test", 1.0, reduction_golden},
    {"reduction soundness", 300.0, reduction_soundness},
    {"Frank-Wolfe rate", 60.0, frank_wolfe_rate},
    {"normalization neutrality", 30.0, normalization_neutrality},
};

}  // namespace

CriterionResult run_criterion(int id, const Options& options) {
  if (id < 1 || id > kCriterionCount) {
    throw InputError("criterion id must be in [1, " + std::to_string(kCriterionCount) + "]");
  }
  const Entry& entry = kEntries[id - 1];
  CriterionResult result;
  result.id = id;
  result.name = entry.name;
  result.limit_seconds = entry.limit_seconds;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Outcome out = entry.run(options);
    result.passed = out.passed;
    result.detail = out.detail;
  } catch (const std::exception& e) {
    result.passed = false;
    result.detail = std::string("error: ") + e.what();
  }
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (result.seconds > result.limit_seconds) {
    result.passed = false;
    result.detail += fmt(" (over time budget %.0f s)", result.limit_seconds);
  }
  return result;
}

std::vector<CriterionResult> run_all(const Options& options) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, options));
  return out;
}

std::string format_table(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  int passed = 0;
  for (const auto& r : results) {
    char head[160];
    std::snprintf(head, sizeof head, "%s  %2d  %-36s %8.2fs  ", r.passed ? "PASS" : "FAIL", r.id,
                  r.name.c_str(), r.seconds);
    os << head << r.detail << '\n';
    if (r.passed) ++passed;
  }
  os << passed << "/" << results.size() << " criteria passed\n";
  return os.str();
}

}  // namespace strategizer::battery
