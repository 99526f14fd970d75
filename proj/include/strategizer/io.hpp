#pragma once

// File formats shared by the CLI, the battery and the tests.
//
// Matrices: JSON {"rows": n, "cols": m, "data": [[...], ...]} or plain text
// with one row per line. Games: a bare matrix (zero-sum, B = -A) or
// {"a": matrix, "b": matrix}; in plain text B follows A after a blank line.
// Graphs: "n" on the first line then one "from to" pair per line (1-based),
// or a small DOT subset. All parse errors carry a line and column.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "strategizer/game.hpp"
#include "strategizer/learners.hpp"
#include "strategizer/ocdp.hpp"
#include "strategizer/planner.hpp"

namespace strategizer::io {

using Json = nlohmann::ordered_json;

std::string read_text(const std::filesystem::path& path);

// Writes to a temporary sibling and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view contents);

Matrix parse_matrix(std::string_view text, std::string_view source = "<input>");
Matrix matrix_from_json(const Json& j, std::string_view what = "matrix");
Json matrix_to_json(const Matrix& m);

BimatrixGame parse_game(std::string_view text, std::string_view source = "<input>");

// A JSON array, a 1 x m / m x 1 matrix, or whitespace-separated numbers.
Vector parse_vector(std::string_view text, std::string_view source = "<input>");
Json vector_to_json(const Vector& v);

// {"mode": "discrete"|"continuous",
//  "segments": [{"count"|"duration": len, "strategy": [...]}, ...]}
Schedule parse_schedule(std::string_view text, std::string_view source = "<input>");
Json schedule_to_json(const Schedule& schedule);

DirectedGraph parse_graph(std::string_view text, std::string_view source = "<input>");
std::string graph_to_text(const DirectedGraph& graph);

Json game_value_to_json(const GameValueResult& result);

struct PlanReport {
  GameValueResult value;
  PlannerResult plan;
  std::pair<double, double> bounds;
  MinBrResult min_br;
  double asymptotic_bound = 0.0;
  std::optional<NoPureWitness> no_pure;
  double eta = 0.0;
  double horizon = 0.0;
};
Json plan_report_to_json(const PlanReport& report);

std::string trajectory_to_csv(const Trajectory& trajectory, Index learner_actions);
Json trajectory_to_json(const Trajectory& trajectory);

Json instance_to_json(const OcdpInstance& instance);
OcdpInstance instance_from_json(const Json& j);
bool looks_like_json(std::string_view text);
Json parse_json(std::string_view text, std::string_view source = "<input>");

// Witness files name either a vertex cycle or an edge sequence, 1-based:
// JSON {"cycle": [...]} / {"sequence": [...]} or text "cycle 1 5 2" /
// "sequence 1 2 4". Returned ids are 0-based.
struct Witness {
  std::vector<int> cycle;
  std::vector<Index> sequence;
};
Witness parse_witness(std::string_view text, std::string_view source = "<input>");

Json witness_to_json(const OcdpInstance& instance, const OcdpPlayout& playout,
                     const std::vector<int>& cycle);

// Shortest decimal that round-trips, as used in CSV output.
std::string format_double(double x);

}  // namespace strategizer::io
