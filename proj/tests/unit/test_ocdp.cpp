#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "strategizer/errors.hpp"
#include "strategizer/ocdp.hpp"

using namespace strategizer;

namespace {

// Edges e_1..e_7 = (1,5) (5,2) (1,2) (2,4) (4,1) (4,3) (3,1), 0-based here.
DirectedGraph five_vertex() {
  return DirectedGraph(5, {{0, 4}, {4, 1}, {0, 1}, {1, 3}, {3, 0}, {3, 2}, {2, 0}});
}

const std::vector<Index> kWitness{0, 1, 3, 5, 6, 0};

DirectedGraph random_graph(std::mt19937_64& rng, int n) {
  std::vector<std::pair<int, int>> edges;
  std::bernoulli_distribution coin(0.4);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && coin(rng)) edges.emplace_back(u, v);
  if (edges.empty()) edges.emplace_back(0, 1);
  return DirectedGraph(n, edges);
}

}  // namespace

TEST_SUITE("graphs") {
  TEST_CASE("validation") {
    CHECK_THROWS_AS(DirectedGraph(0, {{0, 1}}), InputError);
    CHECK_THROWS_AS(DirectedGraph(3, {}), InputError);
    CHECK_THROWS_AS(DirectedGraph(3, {{0, 0}}), InputError);
    CHECK_THROWS_AS(DirectedGraph(3, {{0, 3}}), InputError);
    CHECK_THROWS_AS(DirectedGraph(3, {{0, 1}, {0, 1}}), InputError);
  }

  TEST_CASE("edge lookup") {
    const DirectedGraph g = five_vertex();
    CHECK(g.find_edge(3, 2) == 5);
    CHECK_FALSE(g.find_edge(2, 3).has_value());
  }
}

TEST_SUITE("reduction") {
  TEST_CASE("example rows") {
    const OcdpInstance inst = reduce_hamiltonian(five_vertex());
    CHECK(inst.k == 6);
    CHECK(inst.horizon == 6);
    CHECK(inst.n_actions_opt() == 7);
    CHECK(inst.n_actions_learner() == 10);
    CHECK(inst.learner_denominator == 20);
    const Matrix b = inst.b();
    // e_2 = (5, 2): +1 on v_2, -4 on v_5, 0.85 on v_in_5.
    Eigen::RowVectorXd e2(10);
    e2 << 0, 1, 0, 0, -4, 0, 0, 0, 0, 0.85;
    CHECK((b.row(1) - e2).cwiseAbs().maxCoeff() <= 1e-15);
    // Outgoing edges of v_1 carry -0.1.
    CHECK(b(0, 0) == doctest::Approx(-0.1));
    CHECK(b(2, 0) == doctest::Approx(-0.1));
    CHECK(inst.a(0, 0) == 1.0);
    CHECK(inst.a.rowwise().sum() == Vector::Ones(7));
    CHECK(inst.row_labels.front() == "e_1");
    CHECK(inst.col_labels[0] == "v_1");
    CHECK(inst.col_labels[5] == "v_in_1");
  }

  TEST_CASE("two-cycle") {
    const OcdpInstance inst = reduce_hamiltonian(DirectedGraph(2, {{0, 1}, {1, 0}}));
    Matrix a(2, 4);
    a << 1, 0, 0, 0, 0, 1, 0, 0;
    CHECK(inst.a == a);
    CHECK(inst.k == 3);
    CHECK(inst.horizon == 3);
  }

  TEST_CASE("isolated vertex") {
    const OcdpInstance inst = reduce_hamiltonian(DirectedGraph(3, {{0, 1}, {1, 0}}));
    CHECK(inst.n_actions_learner() == 6);
    CHECK(brute_force_ocdp(inst).max_reward < static_cast<double>(inst.k));
  }
}

TEST_SUITE("normalization") {
  TEST_CASE("fixed map values") {
    const OcdpInstance norm = normalize_payoffs(reduce_hamiltonian(five_vertex()));
    const Matrix b = norm.b();
    CHECK(norm.normalized);
    CHECK(b(1, 4) == 0.0);                      // -4
    CHECK(b(1, 1) == doctest::Approx(5.0 / 8)); // 1
    CHECK(b(1, 9) == doctest::Approx(0.60625)); // 0.85
    CHECK(b(0, 0) == doctest::Approx(0.4875));  // -0.1
    CHECK(b(0, 2) == doctest::Approx(0.5));     // 0
    CHECK(b.minCoeff() >= 0.0);
    CHECK(b.maxCoeff() <= 1.0);
    CHECK(norm.a == reduce_hamiltonian(five_vertex()).a);
  }

  TEST_CASE("normalizing twice is refused") {
    const OcdpInstance norm = normalize_payoffs(reduce_hamiltonian(five_vertex()));
    CHECK_THROWS_WITH_AS(normalize_payoffs(norm), "instance is already normalized",
                         PreconditionError);
  }

  TEST_CASE("learner play is unchanged") {
    const OcdpInstance raw = reduce_hamiltonian(five_vertex());
    const OcdpInstance norm = normalize_payoffs(raw);
    CHECK(play_ocdp(raw, kWitness).learner_actions == play_ocdp(norm, kWitness).learner_actions);
    std::mt19937_64 rng(51);
    std::uniform_int_distribution<Index> pick(0, 6);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Index> seq(6);
      for (auto& s : seq) s = pick(rng);
      const OcdpPlayout p = play_ocdp(raw, seq);
      const OcdpPlayout q = play_ocdp(norm, seq);
      CHECK(p.learner_actions == q.learner_actions);
      CHECK(p.total_reward == q.total_reward);
    }
  }
}

TEST_SUITE("play-out") {
  TEST_CASE("the cycle witness") {
    const OcdpPlayout p = play_ocdp(reduce_hamiltonian(five_vertex()), kWitness);
    CHECK(p.total_reward == 6.0);
    CHECK(p.learner_actions == std::vector<Index>{0, 4, 1, 3, 2, 0});
    REQUIRE(p.history_trace.size() == 7);
    CHECK(p.history_trace[0] == Vector::Zero(10));
    CHECK(p.history_trace[5](0) == doctest::Approx(0.9));
  }

  TEST_CASE("first round depends on the v_1 column of A") {
    const OcdpInstance inst = reduce_hamiltonian(five_vertex());
    // e_2 starts at v_5, so it earns nothing against v_1.
    CHECK(play_ocdp(inst, {1, 1, 1, 1, 1, 1}).total_reward == 0.0);
    const OcdpPlayout p = play_ocdp(inst, {2, 3, 5, 6, 0, 1});
    CHECK(p.learner_actions[0] == 0);
    CHECK(p.learner_actions[1] == 1);
    CHECK(p.total_reward >= 1.0);
  }

  TEST_CASE("bad sequences") {
    const OcdpInstance inst = reduce_hamiltonian(five_vertex());
    CHECK_THROWS_AS(play_ocdp(inst, {0, 1}), InputError);
    CHECK_THROWS_AS(play_ocdp(inst, {0, 1, 3, 5, 6, 7}), InputError);
  }

  TEST_CASE("deterministic") {
    const OcdpInstance inst = reduce_hamiltonian(five_vertex());
    const OcdpPlayout p = play_ocdp(inst, {2, 3, 4, 0, 1, 6});
    const OcdpPlayout q = play_ocdp(inst, {2, 3, 4, 0, 1, 6});
    for (std::size_t t = 0; t < p.history_trace.size(); ++t) {
      CHECK(p.history_trace[t] == q.history_trace[t]);
    }
  }
}

TEST_SUITE("verification") {
  TEST_CASE("accepting a cycle") {
    const CycleVerdict v = verify_cycle(five_vertex(), {0, 4, 1, 3, 2});
    CHECK(v.ok);
    CHECK(v.reason == CycleFault::none);
    CHECK(v.sequence == kWitness);
    CHECK(v.reward == 6.0);
  }

  TEST_CASE("rotation and explicit closing vertex") {
    const CycleVerdict v = verify_cycle(five_vertex(), {1, 3, 2, 0, 4, 1});
    CHECK(v.ok);
    CHECK(v.cycle == std::vector<int>{0, 4, 1, 3, 2});
    CHECK(v.sequence == kWitness);
  }

  TEST_CASE("rejections") {
    CHECK(verify_cycle(five_vertex(), {0, 4, 1, 3}).reason == CycleFault::not_spanning);
    CHECK(std::string(describe(CycleFault::not_spanning)) == "not spanning");
    CHECK(verify_cycle(five_vertex(), {}).reason == CycleFault::empty);
    CHECK(verify_cycle(five_vertex(), {0, 4, 1, 3, 7}).reason == CycleFault::invalid_vertex);
    CHECK(verify_cycle(five_vertex(), {0, 4, 1, 1, 2}).reason == CycleFault::repeated_vertex);
    CHECK(verify_cycle(five_vertex(), {0, 1, 4, 3, 2}).reason == CycleFault::missing_edge);
  }

  TEST_CASE("verified sequences always earn n + 1") {
    std::mt19937_64 rng(52);
    int accepted = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 3 + trial % 3;
      const DirectedGraph g = random_graph(rng, n);
      std::vector<int> perm(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
      std::shuffle(perm.begin() + 1, perm.end(), rng);
      const CycleVerdict v = verify_cycle(g, perm);
      if (!v.ok) continue;
      ++accepted;
      CHECK(play_ocdp(reduce_hamiltonian(g), v.sequence).total_reward == n + 1.0);
    }
    CHECK(accepted > 0);
  }
}

TEST_SUITE("extraction") {
  TEST_CASE("recovers the cycle") {
    const DirectedGraph g = five_vertex();
    const OcdpInstance inst = reduce_hamiltonian(g);
    const auto cycle = extract_cycle(inst, play_ocdp(inst, kWitness), g);
    REQUIRE(cycle.has_value());
    CHECK(*cycle == std::vector<int>{0, 4, 1, 3, 2});

    const DirectedGraph two(2, {{0, 1}, {1, 0}});
    const OcdpInstance two_inst = reduce_hamiltonian(two);
    const OcdpPlayout p = play_ocdp(two_inst, {0, 1, 0});
    CHECK(p.total_reward == 3.0);
    CHECK(extract_cycle(two_inst, p, two) == std::vector<int>{0, 1});
  }

  TEST_CASE("short play-outs are not witnesses") {
    const DirectedGraph g = five_vertex();
    const OcdpInstance inst = reduce_hamiltonian(g);
    const OcdpPlayout p = play_ocdp(inst, {0, 1, 3, 5, 6, 1});
    CHECK(p.total_reward == 5.0);
    CHECK_THROWS_WITH_AS(extract_cycle(inst, p, g), doctest::Contains("sequence is not a witness"),
                         PreconditionError);
  }
}

TEST_SUITE("brute force") {
  TEST_CASE("example optimum") {
    const OcdpInstance inst = reduce_hamiltonian(five_vertex());
    CHECK(sequence_count(inst) == 117649);
    const BruteForceResult r = brute_force_ocdp(inst);
    CHECK(r.max_reward == 6.0);
    CHECK(play_ocdp(inst, r.best_sequence).total_reward == 6.0);
  }

  TEST_CASE("removing e_2 destroys the cycle") {
    const DirectedGraph g(5, {{0, 4}, {0, 1}, {1, 3}, {3, 0}, {3, 2}, {2, 0}});
    CHECK(brute_force_ocdp(reduce_hamiltonian(g)).max_reward <= 5.0);
  }

  TEST_CASE("single round") {
    OcdpInstance inst = reduce_hamiltonian(five_vertex());
    inst.horizon = 1;
    CHECK(brute_force_ocdp(inst).max_reward == 1.0);
  }

  TEST_CASE("cap") {
    const OcdpInstance inst = reduce_hamiltonian(five_vertex());
    CHECK_THROWS_AS(brute_force_ocdp(inst, 1000), ResourceCapError);
  }

  TEST_CASE("agrees with the Hamiltonian oracle") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 60; ++trial) {
      const int n = 2 + trial % 4;
      const DirectedGraph g = random_graph(rng, n);
      const OcdpInstance inst = reduce_hamiltonian(g);
      const bool yes = brute_force_ocdp(inst).max_reward >= static_cast<double>(inst.k);
      CHECK(yes == oracles::has_hamiltonian_cycle(n, g.edges()));
    }
  }
}
