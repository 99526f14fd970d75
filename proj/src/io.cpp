#include "strategizer/io.hpp"

#include <unistd.h>

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "strategizer/errors.hpp"

namespace strategizer::io {

namespace {

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;
};

Position position_of(std::string_view text, std::size_t offset) {
  Position p;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

[[noreturn]] void fail_at(std::string_view source, Position p, const std::string& message) {
  throw InputError(std::string(source) + ":" + std::to_string(p.line) + ":" +
                   std::to_string(p.column) + ": " + message);
}

[[noreturn]] void fail(std::string_view source, const std::string& message) {
  throw InputError(std::string(source) + ": " + message);
}

struct Token {
  std::string_view text;
  Position pos;
};

// Splits one line into whitespace-separated tokens with 1-based columns.
std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), {line_no, start + 1}});
  }
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? end : end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return lines;
}

double parse_number(const Token& tok, std::string_view source) {
  double value = 0.0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    fail_at(source, tok.pos, "expected a number, found '" + std::string(tok.text) + "'");
  }
  if (!std::isfinite(value)) fail_at(source, tok.pos, "non-finite number");
  return value;
}

long parse_integer(const Token& tok, std::string_view source) {
  long value = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    fail_at(source, tok.pos, "expected an integer, found '" + std::string(tok.text) + "'");
  }
  return value;
}

bool is_comment_or_blank(const std::vector<Token>& toks) {
  return toks.empty() || toks.front().text.front() == '#';
}

Matrix rows_to_matrix(const std::vector<std::vector<double>>& rows) {
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  return m;
}

// Plain-text matrix blocks separated by blank lines.
std::vector<Matrix> parse_text_blocks(std::string_view text, std::string_view source) {
  std::vector<Matrix> blocks;
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  const auto flush = [&] {
    if (!rows.empty()) blocks.push_back(rows_to_matrix(rows));
    rows.clear();
  };
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    const auto toks = tokenize(line, line_no);
    if (toks.empty()) {
      flush();
      continue;
    }
    if (toks.front().text.front() == '#') continue;
    std::vector<double> row;
    for (const auto& tok : toks) row.push_back(parse_number(tok, source));
    if (!rows.empty() && row.size() != rows.front().size()) {
      fail_at(source, toks.front().pos,
              "row has " + std::to_string(row.size()) + " entries, expected " +
                  std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  flush();
  if (blocks.empty()) fail(source, "no matrix data");
  return blocks;
}

Json require_key(const Json& j, const char* key, std::string_view what) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string(what) + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

Vector vector_from_json(const Json& j, std::string_view what) {
  if (!j.is_array()) throw InputError(std::string(what) + ": expected an array of numbers");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      throw InputError(std::string(what) + ": entry " + std::to_string(i) + " is not a number");
    }
    v(static_cast<Index>(i)) = j[i].get<double>();
  }
  return v;
}

std::vector<long> ids_from_json(const Json& j, std::string_view what) {
  if (!j.is_array()) throw InputError(std::string(what) + ": expected an array of integers");
  std::vector<long> out;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw InputError(std::string(what) + ": expected integers");
    out.push_back(e.get<long>());
  }
  return out;
}

DirectedGraph parse_dot(std::string_view text, std::string_view source) {
  const std::size_t open = text.find('{');
  const std::size_t close = text.rfind('}');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    fail(source, "DOT input needs a braced body");
  }
  const std::string_view header = text.substr(0, open);
  if (header.find("digraph") == std::string_view::npos) {
    fail(source, "only directed graphs (digraph) are supported");
  }
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::size_t i = open + 1;
  const auto skip_space = [&] {
    while (i < close) {
      if (std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
      } else if (text.substr(i, 2) == "//") {
        while (i < close && text[i] != '\n') ++i;
      } else {
        break;
      }
    }
  };
  const auto read_node = [&]() -> int {
    skip_space();
    const std::size_t start = i;
    while (i < close && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) {
      fail_at(source, position_of(text, start), "expected a numeric node id");
    }
    const Token tok{text.substr(start, i - start), position_of(text, start)};
    const long id = parse_integer(tok, source);
    if (id < 1) fail_at(source, tok.pos, "node ids are 1-based");
    n = std::max(n, static_cast<int>(id));
    return static_cast<int>(id) - 1;
  };
  while (true) {
    skip_space();
    if (i >= close) break;
    if (text[i] == ';' || text[i] == ',') {
      ++i;
      continue;
    }
    int from = read_node();
    skip_space();
    while (i + 1 < close && text.substr(i, 2) == "->") {
      i += 2;
      const int to = read_node();
      edges.emplace_back(from, to);
      from = to;
      skip_space();
    }
  }
  try {
    return DirectedGraph(n, std::move(edges));
  } catch (const InputError& e) {
    fail(source, e.what());
  }
}

std::string number_string(double x) { return format_double(x); }

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw InputError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw InputError("cannot rename onto '" + path.string() + "': " + ec.message());
  }
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

bool looks_like_json(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' || c == '[';
  }
  return false;
}

Json parse_json(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    std::string msg = e.what();
    if (const auto colon = msg.find(": "); colon != std::string::npos) msg = msg.substr(colon + 2);
    fail_at(source, position_of(text, offset), "invalid JSON: " + msg);
  }
}

Matrix matrix_from_json(const Json& j, std::string_view what) {
  const Json data = j.is_array() ? j : require_key(j, "data", what);
  if (!data.is_array() || data.empty()) {
    throw InputError(std::string(what) + ": \"data\" must be a non-empty array of rows");
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Vector row = vector_from_json(data[i], std::string(what) + " row " + std::to_string(i + 1));
    if (row.size() == 0) throw InputError(std::string(what) + ": empty row");
    if (!rows.empty() && static_cast<std::size_t>(row.size()) != rows.front().size()) {
      throw InputError(std::string(what) + ": row " + std::to_string(i + 1) + " has " +
                       std::to_string(row.size()) + " entries, expected " +
                       std::to_string(rows.front().size()));
    }
    rows.emplace_back(row.data(), row.data() + row.size());
  }
  Matrix m = rows_to_matrix(rows);
  if (j.is_object()) {
    const auto check = [&](const char* key, Index actual) {
      if (j.contains(key) && j.at(key).get<Index>() != actual) {
        throw InputError(std::string(what) + ": \"" + key + "\" says " +
                         std::to_string(j.at(key).get<Index>()) + " but data has " +
                         std::to_string(actual));
      }
    };
    check("rows", m.rows());
    check("cols", m.cols());
  }
  if (!m.allFinite()) throw InputError(std::string(what) + ": entries must be finite");
  return m;
}

Json matrix_to_json(const Matrix& m) {
  Json data = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    data.push_back(std::move(row));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix parse_matrix(std::string_view text, std::string_view source) {
  if (looks_like_json(text)) {
    const Json j = parse_json(text, source);
    try {
      return matrix_from_json(j);
    } catch (const InputError& e) {
      fail(source, e.what());
    }
  }
  const auto blocks = parse_text_blocks(text, source);
  if (blocks.size() != 1) fail(source, "expected a single matrix block");
  return blocks.front();
}

BimatrixGame parse_game(std::string_view text, std::string_view source) {
  Matrix a;
  Matrix b;
  bool has_b = false;
  if (looks_like_json(text)) {
    const Json j = parse_json(text, source);
    try {
      if (j.is_object() && j.contains("a")) {
        a = matrix_from_json(j.at("a"), "a");
        if (j.contains("b")) {
          b = matrix_from_json(j.at("b"), "b");
          has_b = true;
        }
      } else {
        a = matrix_from_json(j);
      }
    } catch (const InputError& e) {
      fail(source, e.what());
    } catch (const Json::exception& e) {
      fail(source, e.what());
    }
  } else {
    const auto blocks = parse_text_blocks(text, source);
    if (blocks.size() > 2) fail(source, "expected at most two matrix blocks (A, then B)");
    a = blocks[0];
    if (blocks.size() == 2) {
      b = blocks[1];
      has_b = true;
    }
  }
  if (!has_b) return BimatrixGame::zero_sum(std::move(a));
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(source, "dimension mismatch: B is " + std::to_string(b.rows()) + "x" +
                     std::to_string(b.cols()) + ", expected " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()));
  }
  return BimatrixGame(std::move(a), std::move(b));
}

Vector parse_vector(std::string_view text, std::string_view source) {
  if (looks_like_json(text)) {
    const Json j = parse_json(text, source);
    try {
      if (j.is_array() && (j.empty() || !j.front().is_array())) return vector_from_json(j, source);
      const Matrix m = matrix_from_json(j);
      if (m.rows() == 1) return m.row(0).transpose();
      if (m.cols() == 1) return m.col(0);
      fail(source, "expected a vector, found a " + std::to_string(m.rows()) + "x" +
                       std::to_string(m.cols()) + " matrix");
    } catch (const Json::exception& e) {
      fail(source, e.what());
    }
  }
  std::vector<double> values;
  std::size_t line_no = 0;
  for (std::string_view line : split_lines(text)) {
    const auto toks = tokenize(line, ++line_no);
    if (is_comment_or_blank(toks)) continue;
    for (const auto& tok : toks) values.push_back(parse_number(tok, source));
  }
  return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Schedule parse_schedule(std::string_view text, std::string_view source) {
  const Json j = parse_json(text, source);
  try {
    const std::string mode_name = require_key(j, "mode", "schedule").get<std::string>();
    ScheduleMode mode;
    if (mode_name == "discrete") {
      mode = ScheduleMode::discrete;
    } else if (mode_name == "continuous") {
      mode = ScheduleMode::continuous;
    } else {
      fail(source, "schedule mode must be \"discrete\" or \"continuous\", found \"" + mode_name + "\"");
    }
    const Json segs = require_key(j, "segments", "schedule");
    if (!segs.is_array()) fail(source, "\"segments\" must be an array");
    std::vector<ScheduleSegment> segments;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const Json& s = segs[i];
      const std::string where = "segment " + std::to_string(i + 1);
      double length;
      if (s.contains("count")) {
        length = s.at("count").get<double>();
      } else if (s.contains("duration")) {
        length = s.at("duration").get<double>();
      } else {
        fail(source, where + ": needs \"count\" or \"duration\"");
      }
      segments.push_back(
          {length, SimplexVector(vector_from_json(require_key(s, "strategy", where), where))});
    }
    return Schedule(mode, std::move(segments));
  } catch (const Json::exception& e) {
    fail(source, e.what());
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind(std::string(source), 0) == 0) throw;
    fail(source, msg);
  }
}

Json schedule_to_json(const Schedule& schedule) {
  const bool discrete = schedule.mode() == ScheduleMode::discrete;
  Json segs = Json::array();
  for (const auto& seg : schedule.segments()) {
    Json s;
    if (discrete) {
      s["count"] = static_cast<long>(seg.length);
    } else {
      s["duration"] = seg.length;
    }
    s["strategy"] = vector_to_json(seg.strategy.weights());
    segs.push_back(std::move(s));
  }
  return Json{{"mode", discrete ? "discrete" : "continuous"}, {"segments", std::move(segs)}};
}

DirectedGraph parse_graph(std::string_view text, std::string_view source) {
  if (text.find("digraph") != std::string_view::npos) return parse_dot(text, source);
  const auto lines = split_lines(text);
  long n = -1;
  Position n_pos;
  std::vector<std::pair<int, int>> edges;
  std::size_t line_no = 0;
  for (std::string_view line : lines) {
    const auto toks = tokenize(line, ++line_no);
    if (is_comment_or_blank(toks)) continue;
    if (n < 0) {
      if (toks.size() != 1) fail_at(source, toks.front().pos, "first line must hold the vertex count");
      n = parse_integer(toks.front(), source);
      n_pos = toks.front().pos;
      if (n < 1) fail_at(source, n_pos, "vertex count must be positive");
      continue;
    }
    if (toks.size() != 2) {
      fail_at(source, toks.front().pos, "expected an edge \"from to\"");
    }
    const long from = parse_integer(toks[0], source);
    const long to = parse_integer(toks[1], source);
    if (from < 1 || from > n) fail_at(source, toks[0].pos, "vertex out of range [1, " + std::to_string(n) + "]");
    if (to < 1 || to > n) fail_at(source, toks[1].pos, "vertex out of range [1, " + std::to_string(n) + "]");
    if (from == to) fail_at(source, toks[0].pos, "self-loop at vertex " + std::to_string(from));
    for (const auto& [f, t] : edges) {
      if (f == from - 1 && t == to - 1) fail_at(source, toks[0].pos, "duplicate edge");
    }
    edges.emplace_back(static_cast<int>(from - 1), static_cast<int>(to - 1));
  }
  if (n < 0) fail(source, "empty graph file");
  if (edges.empty()) fail(source, "graph has no edges");
  return DirectedGraph(static_cast<int>(n), std::move(edges));
}

std::string graph_to_text(const DirectedGraph& graph) {
  std::string out = std::to_string(graph.n_vertices()) + "\n";
  for (const auto& [from, to] : graph.edges()) {
    out += std::to_string(from + 1) + " " + std::to_string(to + 1) + "\n";
  }
  return out;
}

Json game_value_to_json(const GameValueResult& result) {
  return Json{{"value", result.value},
              {"optimizer_strategy", vector_to_json(result.optimizer_strategy.weights())},
              {"learner_strategy", vector_to_json(result.learner_strategy.weights())},
              {"certificate_gap", result.certificate_gap}};
}

Json plan_report_to_json(const PlanReport& r) {
  Json witness = nullptr;
  if (r.no_pure) {
    witness = Json{{"x", vector_to_json(r.no_pure->x.weights())},
                   {"i1", r.no_pure->i1 + 1},
                   {"i2", r.no_pure->i2 + 1},
                   {"k_action", r.no_pure->k_action + 1}};
  }
  return Json{{"value", r.value.value},
              {"eta", r.eta},
              {"T", r.horizon},
              {"x_star", vector_to_json(r.plan.x_star.weights())},
              {"r_star", r.plan.r_star},
              {"epsilon", r.plan.epsilon},
              {"iterations", r.plan.iterations},
              {"frank_wolfe_gap", r.plan.frank_wolfe_gap},
              {"bounds", Json::array({r.bounds.first, r.bounds.second})},
              {"k", r.min_br.k},
              {"min_br_strategy", vector_to_json(r.min_br.strategy.weights())},
              {"asymptotic_bound", r.asymptotic_bound},
              {"assumption1", Json{{"holds", r.no_pure.has_value()}, {"witness", witness}}}};
}

std::string trajectory_to_csv(const Trajectory& trajectory, Index learner_actions) {
  std::string out = "t,opt_reward,learner_reward,opt_total";
  for (Index j = 0; j < learner_actions; ++j) out += ",y_" + std::to_string(j + 1);
  out += '\n';
  double opt_total = 0.0;
  for (const auto& rec : trajectory.rounds) {
    opt_total += rec.optimizer_reward;
    out += number_string(rec.t) + ',' + number_string(rec.optimizer_reward) + ',' +
           number_string(rec.learner_reward) + ',' + number_string(opt_total);
    for (Index j = 0; j < rec.learner_strategy.dim(); ++j) {
      out += ',' + number_string(rec.learner_strategy[j]);
    }
    out += '\n';
  }
  return out;
}

Json trajectory_to_json(const Trajectory& trajectory) {
  Json rounds = Json::array();
  for (const auto& rec : trajectory.rounds) {
    rounds.push_back(Json{{"t", rec.t},
                          {"x", vector_to_json(rec.optimizer_strategy.weights())},
                          {"y", vector_to_json(rec.learner_strategy.weights())},
                          {"opt_reward", rec.optimizer_reward},
                          {"learner_reward", rec.learner_reward},
                          {"h", vector_to_json(rec.h_after)}});
  }
  return Json{{"optimizer_total", trajectory.optimizer_total},
              {"learner_total", trajectory.learner_total},
              {"warnings", trajectory.warnings},
              {"rounds", std::move(rounds)}};
}

Json instance_to_json(const OcdpInstance& inst) {
  Json edges = Json::array();
  for (const auto& [from, to] : inst.edges) edges.push_back(Json::array({from + 1, to + 1}));
  return Json{{"n_vertices", inst.n_vertices},
              {"k", inst.k},
              {"T", inst.horizon},
              {"normalized", inst.normalized},
              {"denominator", inst.learner_denominator},
              {"a", matrix_to_json(inst.a)},
              {"b", matrix_to_json(inst.b())},
              {"labels", Json{{"rows", inst.row_labels}, {"cols", inst.col_labels}}},
              {"edges", std::move(edges)}};
}

OcdpInstance instance_from_json(const Json& j) {
  try {
    OcdpInstance inst;
    inst.a = matrix_from_json(require_key(j, "a", "instance"), "a");
    const Matrix b = matrix_from_json(require_key(j, "b", "instance"), "b");
    if (b.rows() != inst.a.rows() || b.cols() != inst.a.cols()) {
      throw InputError("instance: A and B dimensions differ");
    }
    inst.k = require_key(j, "k", "instance").get<long>();
    inst.horizon = require_key(j, "T", "instance").get<long>();
    if (inst.horizon < 0) throw InputError("instance: T must be non-negative");
    inst.normalized = j.value("normalized", false);
    inst.learner_denominator = j.value("denominator", inst.normalized ? 160 : 20);
    if (inst.learner_denominator <= 0) throw InputError("instance: denominator must be positive");
    inst.n_vertices = j.value("n_vertices", static_cast<int>(inst.a.cols() / 2));
    inst.learner_numerators.resize(b.rows(), b.cols());
    const double den = static_cast<double>(inst.learner_denominator);
    for (Index r = 0; r < b.rows(); ++r) {
      for (Index c = 0; c < b.cols(); ++c) {
        const double scaled = b(r, c) * den;
        const double rounded = std::round(scaled);
        if (std::abs(scaled - rounded) > 1e-6) {
          throw InputError("instance: B entry (" + std::to_string(r + 1) + ", " +
                           std::to_string(c + 1) + ") is not a multiple of 1/" +
                           std::to_string(inst.learner_denominator));
        }
        inst.learner_numerators(r, c) = static_cast<std::int64_t>(rounded);
      }
    }
    if (j.contains("labels")) {
      inst.row_labels = j.at("labels").value("rows", std::vector<std::string>{});
      inst.col_labels = j.at("labels").value("cols", std::vector<std::string>{});
    }
    if (j.contains("edges")) {
      for (const auto& e : j.at("edges")) {
        inst.edges.emplace_back(e.at(0).get<int>() - 1, e.at(1).get<int>() - 1);
      }
    }
    return inst;
  } catch (const Json::exception& e) {
    throw InputError(std::string("instance: ") + e.what());
  }
}

Witness parse_witness(std::string_view text, std::string_view source) {
  Witness w;
  std::vector<long> cycle;
  std::vector<long> sequence;
  if (looks_like_json(text)) {
    const Json j = parse_json(text, source);
    try {
      if (j.contains("sequence")) sequence = ids_from_json(j.at("sequence"), "sequence");
      if (j.contains("cycle")) cycle = ids_from_json(j.at("cycle"), "cycle");
    } catch (const InputError& e) {
      fail(source, e.what());
    }
  } else {
    std::size_t line_no = 0;
    for (std::string_view line : split_lines(text)) {
      const auto toks = tokenize(line, ++line_no);
      if (is_comment_or_blank(toks)) continue;
      std::string key(toks.front().text);
      if (!key.empty() && key.back() == ':') key.pop_back();
      std::vector<long>* target = nullptr;
      if (key == "cycle") {
        target = &cycle;
      } else if (key == "sequence") {
        target = &sequence;
      } else {
        fail_at(source, toks.front().pos, "expected \"cycle\" or \"sequence\"");
      }
      for (std::size_t i = 1; i < toks.size(); ++i) target->push_back(parse_integer(toks[i], source));
    }
  }
  if (cycle.empty() && sequence.empty()) fail(source, "witness names neither a cycle nor a sequence");
  for (long v : cycle) {
    if (v < 1) fail(source, "vertex ids are 1-based");
    w.cycle.push_back(static_cast<int>(v - 1));
  }
  for (long e : sequence) {
    if (e < 1) fail(source, "edge ids are 1-based");
    w.sequence.push_back(static_cast<Index>(e - 1));
  }
  return w;
}

Json witness_to_json(const OcdpInstance& instance, const OcdpPlayout& playout,
                     const std::vector<int>& cycle) {
  Json seq = Json::array();
  for (Index r : playout.sequence) seq.push_back(r + 1);
  Json learner = Json::array();
  for (Index c : playout.learner_actions) {
    learner.push_back(static_cast<std::size_t>(c) < instance.col_labels.size()
                          ? Json(instance.col_labels[static_cast<std::size_t>(c)])
                          : Json(c + 1));
  }
  Json cyc = Json::array();
  for (int v : cycle) cyc.push_back(v + 1);
  return Json{{"sequence", std::move(seq)},
              {"learner", std::move(learner)},
              {"reward", playout.total_reward},
              {"cycle", std::move(cyc)}};
}

}  // namespace strategizer::io
