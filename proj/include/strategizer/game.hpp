#pragma once

// Two-player matrix games: payoffs, mixed strategies, the minmax value and
// best-response structure of the optimizer's minmax strategies.
//
// Indices are 0-based throughout the library. Rows are optimizer actions,
// columns are learner actions.

#include <optional>
#include <vector>

#include "strategizer/numerics.hpp"

namespace strategizer {

inline constexpr double kDefaultTol = 1e-7;
inline constexpr int kDefaultEnumerationCap = 20;

// A probability distribution over a finite action set. Construction clamps
// round-off negatives (>= -1e-12) to zero and renormalizes.
class SimplexVector {
 public:
  explicit SimplexVector(Vector weights);

  static SimplexVector uniform(Index dim);
  static SimplexVector pure(Index dim, Index action);

  const Vector& weights() const { return weights_; }
  Index dim() const { return weights_.size(); }
  double operator[](Index i) const { return weights_(i); }

 private:
  Vector weights_;
};

class BimatrixGame {
 public:
  // General-sum game; a and b must have identical shape.
  BimatrixGame(Matrix a, Matrix b);

  // Zero-sum game with b materialized as -a.
  static BimatrixGame zero_sum(Matrix a);

  const Matrix& a() const { return a_; }
  const Matrix& b() const { return b_; }
  bool is_zero_sum() const { return zero_sum_; }
  Index rows() const { return a_.rows(); }
  Index cols() const { return a_.cols(); }

 private:
  BimatrixGame(Matrix a, Matrix b, bool zero_sum);

  Matrix a_;
  Matrix b_;
  bool zero_sum_;
};

enum class Side { optimizer, learner };

struct GameValueResult {
  double value = 0.0;
  SimplexVector optimizer_strategy = SimplexVector::uniform(1);
  SimplexVector learner_strategy = SimplexVector::uniform(1);
  // max_i (A y)_i - min_j (x^T A)_j for the returned pair.
  double certificate_gap = 0.0;
};

// x^T A y (optimizer side) or x^T B y (learner side).
double expected_payoff(const SimplexVector& x, const BimatrixGame& game,
                       const SimplexVector& y, Side side);

// Val(A) = max_x min_y x^T A y, with a minmax strategy for each player.
GameValueResult game_value(const Matrix& a);

// { j : x^T B e_j >= max_k x^T B e_k - tol }, sorted ascending.
std::vector<Index> best_response_set(const SimplexVector& x, const BimatrixGame& game,
                                     double tol = kDefaultTol);

struct MinBrResult {
  SimplexVector strategy = SimplexVector::uniform(1);
  Index k = 0;
  double value = 0.0;
};

// Minmax strategy of the zero-sum game `a` with the fewest learner best
// responses. Enumerates candidate best-response sets by increasing size, so
// the cost is exponential in the number of columns; `cap` bounds it.
MinBrResult min_br_minmax(const Matrix& a, double tol = kDefaultTol,
                          int cap = kDefaultEnumerationCap);

struct NoPureWitness {
  SimplexVector x = SimplexVector::uniform(1);
  Index i1 = 0;
  Index i2 = 0;
  Index k_action = 0;
};

// Searches for a minmax strategy x with two best responses i1 < i2 that
// differ on some support action k: |A[k,i1] - A[k,i2]| > tol, x_k > tol.
std::optional<NoPureWitness> check_assumption_no_pure(const Matrix& a,
                                                      double tol = kDefaultTol,
                                                      int cap = kDefaultEnumerationCap);

}  // namespace strategizer
