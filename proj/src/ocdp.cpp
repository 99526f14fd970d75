#include "strategizer/ocdp.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>

#include "strategizer/errors.hpp"

namespace strategizer {

namespace {

// Raw learner payoffs in twentieths.
constexpr std::int64_t kRawDenominator = 20;
constexpr std::int64_t kLeaveStart = -2;   // -0.1, outgoing edge of v_1
constexpr std::int64_t kLeaveOther = -80;  // -4, outgoing edge of v_j, j != 1
constexpr std::int64_t kArrive = 20;       // +1, incoming edge
constexpr std::int64_t kRevisit = 17;      // 0.85 on v_in_j for outgoing edges of v_j

// First maximizer, exact.
Index first_argmax(const IntVector& h) {
  Index best = 0;
  for (Index j = 1; j < h.size(); ++j) {
    if (h(j) > h(best)) best = j;
  }
  return best;
}

void check_sequence(const OcdpInstance& inst, const std::vector<Index>& sequence) {
  if (static_cast<long>(sequence.size()) != inst.horizon) {
    throw InputError("sequence has length " + std::to_string(sequence.size()) +
                     ", expected T = " + std::to_string(inst.horizon));
  }
  for (Index r : sequence) {
    if (r < 0 || r >= inst.n_actions_opt()) {
      throw InputError("optimizer action " + std::to_string(r) + " out of range [0, " +
                       std::to_string(inst.n_actions_opt()) + ")");
    }
  }
}

struct BranchAndBound {
  const OcdpInstance& inst;
  double per_round_bound;
  IntVector h;
  std::vector<Index> path;
  std::vector<Index> best_path;
  double best = -std::numeric_limits<double>::infinity();
  std::uint64_t nodes = 0;

  void search(long depth, double reward) {
    ++nodes;
    const long remaining = inst.horizon - depth;
    if (remaining == 0) {
      if (reward > best) {
        best = reward;
        best_path = path;
      }
      return;
    }
    if (reward + per_round_bound * static_cast<double>(remaining) <= best) return;
    const Index learner = first_argmax(h);
    for (Index r = 0; r < inst.n_actions_opt(); ++r) {
      h += inst.learner_numerators.row(r).transpose();
      path.push_back(r);
      search(depth + 1, reward + inst.a(r, learner));
      path.pop_back();
      h -= inst.learner_numerators.row(r).transpose();
      if (best >= per_round_bound * static_cast<double>(inst.horizon)) return;
    }
  }
};

}  // namespace

DirectedGraph::DirectedGraph(int n_vertices, std::vector<std::pair<int, int>> edges)
    : n_vertices_(n_vertices), edges_(std::move(edges)) {
  if (n_vertices_ < 1) throw InputError("graph must have at least one vertex");
  if (edges_.empty()) throw InputError("graph has no edges");
  std::set<std::pair<int, int>> seen;
  for (const auto& [from, to] : edges_) {
    if (from < 0 || from >= n_vertices_ || to < 0 || to >= n_vertices_) {
      throw InputError("edge (" + std::to_string(from + 1) + ", " + std::to_string(to + 1) +
                       ") references a vertex outside [1, " + std::to_string(n_vertices_) + "]");
    }
    if (from == to) throw InputError("self-loop at vertex " + std::to_string(from + 1));
    if (!seen.insert({from, to}).second) {
      throw InputError("duplicate edge (" + std::to_string(from + 1) + ", " +
                       std::to_string(to + 1) + ")");
    }
  }
}

std::optional<Index> DirectedGraph::find_edge(int from, int to) const {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].first == from && edges_[i].second == to) return static_cast<Index>(i);
  }
  return std::nullopt;
}

Matrix OcdpInstance::b() const {
  return learner_numerators.cast<double>() / static_cast<double>(learner_denominator);
}

OcdpInstance reduce_hamiltonian(const DirectedGraph& graph) {
  const int n = graph.n_vertices();
  const Index e = graph.n_edges();
  OcdpInstance inst;
  inst.a = Matrix::Zero(e, 2 * n);
  inst.learner_numerators = IntMatrix::Zero(e, 2 * n);
  inst.learner_denominator = kRawDenominator;
  inst.k = n + 1;
  inst.horizon = n + 1;
  inst.n_vertices = n;
  inst.edges = graph.edges();

  for (Index i = 0; i < e; ++i) {
    const auto [from, to] = graph.edges()[static_cast<std::size_t>(i)];
    inst.a(i, from) = 1.0;
    inst.learner_numerators(i, from) = from == 0 ? kLeaveStart : kLeaveOther;
    inst.learner_numerators(i, to) = kArrive;
    inst.learner_numerators(i, n + from) = kRevisit;
    inst.row_labels.push_back("e_" + std::to_string(i + 1));
  }
  for (int j = 0; j < n; ++j) inst.col_labels.push_back("v_" + std::to_string(j + 1));
  for (int j = 0; j < n; ++j) inst.col_labels.push_back("v_in_" + std::to_string(j + 1));
  return inst;
}

OcdpInstance normalize_payoffs(const OcdpInstance& instance) {
  if (instance.normalized) throw PreconditionError("instance is already normalized");
  OcdpInstance out = instance;
  // (num / den + 4) / 8 = (num + 4 den) / (8 den)
  out.learner_numerators.array() += 4 * instance.learner_denominator;
  out.learner_denominator = 8 * instance.learner_denominator;
  out.normalized = true;
  return out;
}

OcdpPlayout play_ocdp(const OcdpInstance& instance, const std::vector<Index>& sequence) {
  check_sequence(instance, sequence);
  const double den = static_cast<double>(instance.learner_denominator);
  OcdpPlayout out;
  out.sequence = sequence;
  IntVector h = IntVector::Zero(instance.n_actions_learner());
  out.history_trace.push_back(h.cast<double>() / den);
  for (Index row : sequence) {
    const Index learner = first_argmax(h);
    out.learner_actions.push_back(learner);
    out.total_reward += instance.a(row, learner);
    h += instance.learner_numerators.row(row).transpose();
    out.history_trace.push_back(h.cast<double>() / den);
  }
  return out;
}

const char* describe(CycleFault fault) {
  switch (fault) {
    case CycleFault::none:
      return "ok";
    case CycleFault::empty:
      return "empty cycle";
    case CycleFault::invalid_vertex:
      return "invalid vertex";
    case CycleFault::repeated_vertex:
      return "repeated vertex";
    case CycleFault::not_spanning:
      return "not spanning";
    case CycleFault::missing_edge:
      return "missing edge";
    case CycleFault::reward_mismatch:
      return "play-out reward differs from n+1";
  }
  return "unknown";
}

CycleVerdict verify_cycle(const DirectedGraph& graph, std::vector<int> cycle_vertices) {
  CycleVerdict verdict;
  const auto fail = [&](CycleFault f) {
    verdict.ok = false;
    verdict.reason = f;
    return verdict;
  };
  if (cycle_vertices.empty()) return fail(CycleFault::empty);
  if (cycle_vertices.size() > 1 && cycle_vertices.front() == cycle_vertices.back()) {
    cycle_vertices.pop_back();
  }
  const int n = graph.n_vertices();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : cycle_vertices) {
    if (v < 0 || v >= n) return fail(CycleFault::invalid_vertex);
    if (seen[static_cast<std::size_t>(v)]) return fail(CycleFault::repeated_vertex);
    seen[static_cast<std::size_t>(v)] = true;
  }
  if (static_cast<int>(cycle_vertices.size()) != n) return fail(CycleFault::not_spanning);

  const auto start = std::find(cycle_vertices.begin(), cycle_vertices.end(), 0);
  std::rotate(cycle_vertices.begin(), start, cycle_vertices.end());
  verdict.cycle = cycle_vertices;

  for (int i = 0; i < n; ++i) {
    const int from = cycle_vertices[static_cast<std::size_t>(i)];
    const int to = cycle_vertices[static_cast<std::size_t>((i + 1) % n)];
    const auto edge = graph.find_edge(from, to);
    if (!edge) return fail(CycleFault::missing_edge);
    verdict.sequence.push_back(*edge);
  }
  verdict.sequence.push_back(verdict.sequence.front());

  const OcdpInstance inst = reduce_hamiltonian(graph);
  verdict.reward = play_ocdp(inst, verdict.sequence).total_reward;
  if (verdict.reward != static_cast<double>(n + 1)) return fail(CycleFault::reward_mismatch);
  verdict.ok = true;
  verdict.reason = CycleFault::none;
  return verdict;
}

std::optional<std::vector<int>> extract_cycle(const OcdpInstance& instance,
                                              const OcdpPlayout& playout,
                                              const DirectedGraph& graph) {
  if (playout.total_reward < static_cast<double>(instance.k)) {
    throw PreconditionError("sequence is not a witness: reward " +
                            std::to_string(playout.total_reward) + " < k = " +
                            std::to_string(instance.k));
  }
  const std::size_t n = static_cast<std::size_t>(graph.n_vertices());
  if (playout.sequence.size() < n) return std::nullopt;
  const auto edge_of = [&](std::size_t i) {
    return graph.edges()[static_cast<std::size_t>(playout.sequence[i])];
  };
  // The first n edges must chain v_1 -> ... -> v_1.
  std::vector<int> cycle;
  int at = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto [from, to] = edge_of(i);
    if (from != at) return std::nullopt;
    cycle.push_back(from);
    at = to;
  }
  if (at != 0 || !verify_cycle(graph, cycle).ok) return std::nullopt;
  return cycle;
}

std::uint64_t sequence_count(const OcdpInstance& instance) {
  const auto base = static_cast<std::uint64_t>(instance.n_actions_opt());
  std::uint64_t total = 1;
  for (long t = 0; t < instance.horizon; ++t) {
    if (base != 0 && total > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= base;
  }
  return total;
}

BruteForceResult brute_force_ocdp(const OcdpInstance& instance, std::uint64_t cap) {
  const std::uint64_t count = sequence_count(instance);
  if (count > cap) {
    throw ResourceCapError("search space has " + std::to_string(count) +
                           " sequences, cap is " + std::to_string(cap));
  }
  BranchAndBound bb{instance, std::max(0.0, instance.a.maxCoeff()),
                    IntVector::Zero(instance.n_actions_learner()), {}, {}};
  bb.path.reserve(static_cast<std::size_t>(instance.horizon));
  bb.search(0, 0.0);
  return BruteForceResult{bb.best, bb.best_path, bb.nodes};
}

}  // namespace strategizer
