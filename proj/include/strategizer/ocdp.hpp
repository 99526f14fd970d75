#pragma once

// Hamiltonian cycle -> optimal control of a best-responding learner
// (Optimal-Control-Discrete-Pure, OCDP).
//
// For a directed graph on n vertices with edges e_1..e_|E|, the optimizer
// plays edges and the learner plays one of 2n actions: v_1..v_n followed by
// v_in_1..v_in_n. With k = T = n + 1, reward n + 1 is reachable against the
// lexicographic best-response learner exactly when the graph has a
// Hamiltonian cycle.
//
// Learner payoffs are kept as integer numerators over a common denominator
// (twentieths before normalization) so cumulative-reward comparisons, and
// therefore tie-breaking, are exact.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "strategizer/numerics.hpp"

namespace strategizer {

using IntMatrix = MatrixX<std::int64_t>;
using IntVector = VectorX<std::int64_t>;

// Vertices are 0-based in the library; files and labels use 1-based ids.
class DirectedGraph {
 public:
  DirectedGraph(int n_vertices, std::vector<std::pair<int, int>> edges);

  int n_vertices() const { return n_vertices_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  Index n_edges() const { return static_cast<Index>(edges_.size()); }
  std::optional<Index> find_edge(int from, int to) const;

 private:
  int n_vertices_;
  std::vector<std::pair<int, int>> edges_;
};

struct OcdpInstance {
  Matrix a;                      // |E| x 2n, entries in {0, 1}
  IntMatrix learner_numerators;  // B = learner_numerators / learner_denominator
  std::int64_t learner_denominator = 20;
  long k = 0;
  long horizon = 0;
  int n_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // row i is edge e_{i+1}
  std::vector<std::string> row_labels;     // "e_1", ...
  std::vector<std::string> col_labels;     // "v_1", ..., "v_in_1", ...
  bool normalized = false;

  Index n_actions_opt() const { return a.rows(); }
  Index n_actions_learner() const { return a.cols(); }
  Matrix b() const;
};

OcdpInstance reduce_hamiltonian(const DirectedGraph& graph);

// B' = (B + 4) / 8 entrywise, which maps the raw payoffs into [0, 1]. A is
// unchanged.
OcdpInstance normalize_payoffs(const OcdpInstance& instance);

struct OcdpPlayout {
  std::vector<Index> sequence;
  std::vector<Index> learner_actions;
  std::vector<Vector> history_trace;  // h after t rounds, t = 0..T
  double total_reward = 0.0;
};

// Plays the optimizer's pure sequence (0-based rows, length T) against the
// lexicographic best-response learner starting from h = 0.
OcdpPlayout play_ocdp(const OcdpInstance& instance, const std::vector<Index>& sequence);

enum class CycleFault {
  none,
  empty,
  invalid_vertex,
  repeated_vertex,
  not_spanning,
  missing_edge,
  reward_mismatch,
};

const char* describe(CycleFault fault);

struct CycleVerdict {
  bool ok = false;
  CycleFault reason = CycleFault::none;
  std::vector<int> cycle;       // rotated to start at vertex 0
  std::vector<Index> sequence;  // cycle edges, then the first edge again
  double reward = 0.0;
};

// Checks that cycle_vertices (optionally closed by repeating the first
// vertex) is a Hamiltonian cycle, and that its edge sequence earns n + 1 on
// the reduced instance.
CycleVerdict verify_cycle(const DirectedGraph& graph, std::vector<int> cycle_vertices);

// Recovers the Hamiltonian cycle from a play-out reaching the target k.
// Throws PreconditionError when the play-out falls short of k.
std::optional<std::vector<int>> extract_cycle(const OcdpInstance& instance,
                                              const OcdpPlayout& playout,
                                              const DirectedGraph& graph);

struct BruteForceResult {
  double max_reward = 0.0;
  std::vector<Index> best_sequence;
  std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultBruteForceCap = 10'000'000;

// |E|^T, saturating at UINT64_MAX.
std::uint64_t sequence_count(const OcdpInstance& instance);

// Exact optimum over all pure sequences by depth-first branch and bound.
// Throws ResourceCapError when |E|^T exceeds cap.
BruteForceResult brute_force_ocdp(const OcdpInstance& instance,
                                  std::uint64_t cap = kDefaultBruteForceCap);

}  // namespace strategizer
