#pragma once

// Offline planning for the optimizer in zero-sum games (B = -A) against the
// replicator dynamics and MWU.
//
// Against the replicator dynamics with step eta, starting history h0 and
// horizon T, the optimizer's reward depends only on the time-averaged play
// xbar:
//
//   R(xbar) = [ lse(eta h0) - lse(eta (h0 - T A^T xbar)) ] / eta
//
// so the best plan is constant and is found by minimizing the convex
// f(x) = lse(eta (h0 - T A^T x)) over the simplex with Frank-Wolfe.

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "strategizer/game.hpp"
#include "strategizer/learners.hpp"

namespace strategizer {

// Closed-form reward of a continuous schedule against the replicator
// dynamics. Exact: only the schedule's time average enters.
double reward_cont(const Schedule& schedule, const Vector& h0, double horizon,
                   const Matrix& a, double eta);
// Same, rejecting general-sum games.
double reward_cont(const Schedule& schedule, const Vector& h0, double horizon,
                   const BimatrixGame& game, double eta);

// Reward of playing x for the whole horizon.
double reward_constant(const SimplexVector& x, const Vector& h0, double horizon,
                       const Matrix& a, double eta);

// f(x) = lse(eta (h0 - T A^T x)) and its gradient -eta T A softmax(...).
class ContinuousObjective {
 public:
  ContinuousObjective(const Matrix& a, const Vector& h0, double horizon, double eta);

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  // Curvature constant beta * R^2 with beta the l1-smoothness of f and R = 2
  // the l1 diameter of the simplex.
  double curvature_bound() const;

  const Matrix& a() const { return a_; }
  double eta() const { return eta_; }
  double horizon() const { return horizon_; }

 private:
  Vector logits(const Vector& x) const;

  Matrix a_;
  Vector eta_h0_;
  double horizon_;
  double eta_;
};

enum class StepRule {
  fixed,        // gamma_s = 2 / (s + 2)
  line_search,  // exact minimization along the Frank-Wolfe segment
  away_steps,   // line search plus away steps (linear rate on the simplex)
};

struct FrankWolfeOptions {
  StepRule step_rule = StepRule::fixed;
  long max_iterations = 10'000'000;
  // Optional per-iteration callback: (s, x_s, f(x_s)) for s = 0, 1, ...
  std::function<void(long, const Vector&, double)> observer;
};

struct PlannerResult {
  SimplexVector x_star = SimplexVector::uniform(1);
  double r_star = 0.0;
  double epsilon = 0.0;
  long iterations = 0;      // linear-minimization oracle calls
  double frank_wolfe_gap = 0.0;  // certified bound on f(x_star) - min f
};

// Frank-Wolfe from the uniform strategy until the duality gap certifies
// f(x) - min f <= epsilon * eta, i.e. a reward within epsilon of optimal.
// Throws ResourceCapError if max_iterations is reached first.
PlannerResult optimize_continuous(const Matrix& a, const Vector& h0, double horizon,
                                  double eta, double epsilon,
                                  const FrankWolfeOptions& options = {});

// Iteration budget ceil(2 / (epsilon * eta)) of the fixed-step rate bound.
long nominal_iterations(double epsilon, double eta);

// (Val(A) T, Val(A) T + ln(m) / eta).
std::pair<double, double> reward_bounds(const Matrix& a, double horizon, double eta);

// Val(A) T + ln(m / k) / eta with k from min_br_minmax. Asymptotic in eta T,
// not a hard bound at finite horizon.
double asymptotic_lower_bound(const Matrix& a, double horizon, double eta,
                              double tol = kDefaultTol);

struct AlternatingPlan {
  SimplexVector x_odd;
  SimplexVector x_even;
  SimplexVector base;
  double delta = 0.0;  // perturbation weight on e_k actually used
  Index i1 = 0;
  Index i2 = 0;
  Index k_action = 0;
};

// Splits a no-pure witness x into x' = (1 - d) x + d e_k and
// x'' = (1 + d) x - d e_k with d = fraction * min(1, x_k / (1 - x_k)), so
// that (x' + x'') / 2 = x. fraction = 1 uses the largest feasible split.
AlternatingPlan alternating_plan(const Matrix& a, double tol = kDefaultTol,
                                 double fraction = 1.0);

// x' on odd rounds, x'' on even rounds, the base strategy in a trailing odd
// round.
Schedule alternating_schedule(const AlternatingPlan& plan, long rounds);

// |dV/dt - max_x x^T A (softmax(eta h) - grad_h V)| for the closed-form value
// V(h, t) = R*_cont(h, t, A, -A), where t is the remaining horizon. The
// derivatives are central finite differences with step fd_step and each V
// is solved to within fd_step^2.
double hjb_residual(const Vector& h, double t, const Matrix& a, double eta, double fd_step);

// Optimal continuous value V(h, t) solved to within `tolerance`.
double continuous_value(const Vector& h, double t, const Matrix& a, double eta,
                        double tolerance);

}  // namespace strategizer
