#include "strategizer/game.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "strategizer/errors.hpp"
#include "strategizer/lp.hpp"

namespace strategizer {

namespace {

constexpr double kNegativeSlack = 1e-12;

void require_finite(const Matrix& m, const char* name) {
  if (!m.allFinite()) throw InputError(std::string(name) + " has non-finite entries");
}

void require_dim(Index got, Index want, const char* what) {
  if (got != want) {
    throw InputError(std::string("dimension mismatch: ") + what + " has dimension " +
                     std::to_string(got) + ", expected " + std::to_string(want));
  }
}

// Column scores x^T A e_j of the optimizer strategy x.
Vector column_scores(const Matrix& a, const Vector& x) { return a.transpose() * x; }

// Maximizes `objective` over minmax strategies x of `a` (value `val`) whose
// columns in `pinned` sit at the value, plus a margin variable mu in [0, 1]
// forcing every column in `lifted` to be at least val + mu.
struct ConstrainedMinmax {
  LpStatus status;
  Vector x;
  double margin;
};

ConstrainedMinmax solve_minmax_face(const Matrix& a, double val,
                                    const std::vector<Index>& pinned,
                                    const std::vector<Index>& lifted,
                                    const Vector& x_objective, double margin_weight) {
  const Index n = a.rows();
  const Index m = a.cols();
  LinearProgram<double> lp(n + 1);
  Vector c(n + 1);
  c << x_objective, margin_weight;
  lp.set_objective(c);

  Vector simplex = Vector::Zero(n + 1);
  simplex.head(n).setOnes();
  lp.add_constraint(simplex, Relation::equal, 1.0);

  Vector margin_cap = Vector::Zero(n + 1);
  margin_cap(n) = 1.0;
  lp.add_constraint(margin_cap, Relation::less_equal, 1.0);

  std::vector<bool> is_lifted(static_cast<std::size_t>(m), false);
  for (Index j : lifted) is_lifted[static_cast<std::size_t>(j)] = true;
  std::vector<bool> is_pinned(static_cast<std::size_t>(m), false);
  for (Index j : pinned) is_pinned[static_cast<std::size_t>(j)] = true;

  for (Index j = 0; j < m; ++j) {
    Vector row = Vector::Zero(n + 1);
    row.head(n) = a.col(j);
    if (is_lifted[static_cast<std::size_t>(j)]) {
      row(n) = -1.0;
      lp.add_constraint(row, Relation::greater_equal, val);
    } else if (!is_pinned[static_cast<std::size_t>(j)]) {
      lp.add_constraint(row, Relation::greater_equal, val);
    }
  }
  // Exact equalities: rounding in val is absorbed by the phase-one
  // feasibility tolerance, and the optimum is then an exact vertex.
  for (Index j : pinned) {
    Vector row = Vector::Zero(n + 1);
    row.head(n) = a.col(j);
    lp.add_constraint(row, Relation::equal, val);
  }

  const auto sol = lp.maximize();
  ConstrainedMinmax out{sol.status, Vector(), 0.0};
  if (sol.status == LpStatus::optimal) {
    out.x = sol.x.head(n);
    out.margin = sol.x(n);
  }
  return out;
}

// Calls fn(subset) for every k-subset of {0..m-1} in lexicographic order
// until fn returns true.
template <typename Fn>
bool for_each_subset(Index m, Index k, Fn&& fn) {
  std::vector<Index> idx(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    if (fn(idx)) return true;
    Index pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - k + pos) --pos;
    if (pos < 0) return false;
    ++idx[static_cast<std::size_t>(pos)];
    for (Index i = pos + 1; i < k; ++i) {
      idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
}

void check_enumeration_cap(const Matrix& a, int cap) {
  if (a.cols() > cap) {
    throw ResourceCapError("instance too large for exact min-BR search (" +
                           std::to_string(a.cols()) + " columns, cap " +
                           std::to_string(cap) + ")");
  }
}

}  // namespace

SimplexVector::SimplexVector(Vector weights) : weights_(std::move(weights)) {
  if (weights_.size() == 0) throw InputError("simplex vector must be non-empty");
  if (!weights_.allFinite()) throw InputError("simplex vector has non-finite weights");
  for (Index i = 0; i < weights_.size(); ++i) {
    if (weights_(i) < -kNegativeSlack) {
      throw InputError("simplex vector has negative weight at index " + std::to_string(i));
    }
    weights_(i) = std::max(0.0, weights_(i));
  }
  const double total = weights_.sum();
  if (!(total > 0.0)) throw InputError("simplex vector weights sum to zero");
  weights_ /= total;
}

SimplexVector SimplexVector::uniform(Index dim) {
  if (dim <= 0) throw InputError("simplex dimension must be positive");
  return SimplexVector(Vector::Constant(dim, 1.0 / static_cast<double>(dim)));
}

SimplexVector SimplexVector::pure(Index dim, Index action) {
  if (dim <= 0) throw InputError("simplex dimension must be positive");
  if (action < 0 || action >= dim) {
    throw InputError("pure action " + std::to_string(action) + " out of range [0, " +
                     std::to_string(dim) + ")");
  }
  Vector w = Vector::Zero(dim);
  w(action) = 1.0;
  return SimplexVector(std::move(w));
}

BimatrixGame::BimatrixGame(Matrix a, Matrix b, bool zero_sum)
    : a_(std::move(a)), b_(std::move(b)), zero_sum_(zero_sum) {
  if (a_.rows() < 1 || a_.cols() < 1) throw InputError("game must have at least one row and column");
  if (a_.rows() != b_.rows() || a_.cols() != b_.cols()) {
    throw InputError("payoff matrices differ in shape: A is " + std::to_string(a_.rows()) +
                     "x" + std::to_string(a_.cols()) + ", B is " + std::to_string(b_.rows()) +
                     "x" + std::to_string(b_.cols()));
  }
  require_finite(a_, "A");
  require_finite(b_, "B");
}

BimatrixGame::BimatrixGame(Matrix a, Matrix b)
    : BimatrixGame(std::move(a), std::move(b), false) {
  zero_sum_ = (a_ + b_).cwiseAbs().maxCoeff() == 0.0;
}

BimatrixGame BimatrixGame::zero_sum(Matrix a) {
  Matrix b = -a;
  return BimatrixGame(std::move(a), std::move(b), true);
}

double expected_payoff(const SimplexVector& x, const BimatrixGame& game,
                       const SimplexVector& y, Side side) {
  require_dim(x.dim(), game.rows(), "optimizer strategy x");
  require_dim(y.dim(), game.cols(), "learner strategy y");
  const Matrix& m = side == Side::optimizer ? game.a() : game.b();
  return x.weights().dot(m * y.weights());
}

GameValueResult game_value(const Matrix& a) {
  if (a.rows() < 1 || a.cols() < 1) throw InputError("game matrix must be non-empty");
  require_finite(a, "A");
  const Index n = a.rows();
  const Index m = a.cols();

  // Row player: max v s.t. (A^T x)_j >= v, sum x = 1. v = v_pos - v_neg.
  LinearProgram<double> row_lp(n + 2);
  {
    Vector c = Vector::Zero(n + 2);
    c(n) = 1.0;
    c(n + 1) = -1.0;
    row_lp.set_objective(c);
    for (Index j = 0; j < m; ++j) {
      Vector r(n + 2);
      r << -a.col(j), 1.0, -1.0;
      row_lp.add_constraint(r, Relation::less_equal, 0.0);
    }
    Vector s = Vector::Zero(n + 2);
    s.head(n).setOnes();
    row_lp.add_constraint(s, Relation::equal, 1.0);
  }
  // Column player: min w s.t. (A y)_i <= w, sum y = 1.
  LinearProgram<double> col_lp(m + 2);
  {
    Vector c = Vector::Zero(m + 2);
    c(m) = -1.0;
    c(m + 1) = 1.0;
    col_lp.set_objective(c);
    for (Index i = 0; i < n; ++i) {
      Vector r(m + 2);
      r << a.row(i).transpose(), -1.0, 1.0;
      col_lp.add_constraint(r, Relation::less_equal, 0.0);
    }
    Vector s = Vector::Zero(m + 2);
    s.head(m).setOnes();
    col_lp.add_constraint(s, Relation::equal, 1.0);
  }

  const auto row_sol = row_lp.maximize();
  const auto col_sol = col_lp.maximize();
  if (row_sol.status != LpStatus::optimal || col_sol.status != LpStatus::optimal) {
    throw std::logic_error("game value LP did not reach an optimum");
  }

  SimplexVector x(row_sol.x.head(n));
  SimplexVector y(col_sol.x.head(m));
  const double lo = column_scores(a, x.weights()).minCoeff();
  const double hi = (a * y.weights()).maxCoeff();
  GameValueResult out;
  out.value = 0.5 * (lo + hi);
  out.optimizer_strategy = std::move(x);
  out.learner_strategy = std::move(y);
  out.certificate_gap = hi - lo;
  return out;
}

std::vector<Index> best_response_set(const SimplexVector& x, const BimatrixGame& game,
                                     double tol) {
  require_dim(x.dim(), game.rows(), "optimizer strategy x");
  if (tol < 0.0) throw InputError("tolerance must be non-negative");
  const Vector scores = game.b().transpose() * x.weights();
  const double best = scores.maxCoeff();
  std::vector<Index> out;
  for (Index j = 0; j < scores.size(); ++j) {
    if (scores(j) >= best - tol) out.push_back(j);
  }
  return out;
}

MinBrResult min_br_minmax(const Matrix& a, double tol, int cap) {
  check_enumeration_cap(a, cap);
  const double val = game_value(a).value;
  const Index n = a.rows();
  const Index m = a.cols();

  for (Index k = 1; k <= m; ++k) {
    std::optional<MinBrResult> found;
    for_each_subset(m, k, [&](const std::vector<Index>& pinned) {
      std::vector<Index> lifted;
      for (Index j = 0, p = 0; j < m; ++j) {
        if (p < k && pinned[static_cast<std::size_t>(p)] == j) {
          ++p;
        } else {
          lifted.push_back(j);
        }
      }
      const auto face = solve_minmax_face(a, val, pinned, lifted, Vector::Zero(n), 1.0);
      if (face.status != LpStatus::optimal) return false;
      if (!lifted.empty() && face.margin <= tol) return false;
      found = MinBrResult{SimplexVector(face.x), k, val};
      return true;
    });
    if (found) return *found;
  }
  // Unreachable for finite input: the full column set always admits every
  // minmax strategy.
  throw std::logic_error("min-BR search found no feasible best-response set");
}

std::optional<NoPureWitness> check_assumption_no_pure(const Matrix& a, double tol,
                                                      int cap) {
  check_enumeration_cap(a, cap);
  const double val = game_value(a).value;
  const Index n = a.rows();
  const Index m = a.cols();

  // For each column pair and each row on which they disagree, find the
  // minmax strategy with both columns tied at the value that puts the most
  // mass on that row.
  for (Index i1 = 0; i1 < m; ++i1) {
    for (Index i2 = i1 + 1; i2 < m; ++i2) {
      for (Index k = 0; k < n; ++k) {
        if (std::abs(a(k, i1) - a(k, i2)) <= tol) continue;
        Vector objective = Vector::Zero(n);
        objective(k) = 1.0;
        const auto face = solve_minmax_face(a, val, {i1, i2}, {}, objective, 0.0);
        if (face.status != LpStatus::optimal || face.x(k) <= tol) continue;
        return NoPureWitness{SimplexVector(face.x), i1, i2, k};
      }
    }
  }
  return std::nullopt;
}

}  // namespace strategizer
