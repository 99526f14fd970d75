#include "strategizer/planner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "strategizer/errors.hpp"

namespace strategizer {

namespace {

constexpr double kHorizonRelTol = 1e-9;

void require_zero_sum(const BimatrixGame& game) {
  if (!game.is_zero_sum()) {
    throw PreconditionError("closed form valid only for B = -A");
  }
}

void require_eta(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw InputError("eta must be positive and finite");
}

void require_h0(const Vector& h0, const Matrix& a) {
  if (h0.size() != a.cols()) {
    throw InputError("dimension mismatch: h0 has dimension " + std::to_string(h0.size()) +
                     ", expected " + std::to_string(a.cols()));
  }
}

// Minimizes phi(g) = lse(z0 + g w) over g in [0, g_max]. phi is convex with
// phi'(g) = softmax(z0 + g w) . w and phi'' the softmax variance of w.
double line_minimize(const Vector& z0, const Vector& w, double g_max) {
  const auto slope = [&](double g) { return softmax((z0 + g * w).eval()).dot(w); };
  if (slope(g_max) <= 0.0) return g_max;
  double lo = 0.0;
  double hi = g_max;
  double g = 0.5 * g_max;
  for (int it = 0; it < 100; ++it) {
    const Vector z = z0 + g * w;
    const double d1 = softmax(z).dot(w);
    if (d1 > 0.0) {
      hi = g;
    } else {
      lo = g;
    }
    if (hi - lo <= 1e-16 * std::max(1.0, g_max)) break;
    const double d2 = softmax_variance(z, w);
    double next = d2 > 0.0 ? g - d1 / d2 : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    g = next;
  }
  return g;
}

Vector index_vector(Index n, Index i) {
  Vector e = Vector::Zero(n);
  e(i) = 1.0;
  return e;
}

}  // namespace

double reward_constant(const SimplexVector& x, const Vector& h0, double horizon,
                       const Matrix& a, double eta) {
  require_eta(eta);
  require_h0(h0, a);
  if (x.dim() != a.rows()) {
    throw InputError("dimension mismatch: strategy has dimension " + std::to_string(x.dim()) +
                     ", expected " + std::to_string(a.rows()));
  }
  if (horizon < 0.0) throw InputError("horizon must be non-negative");
  if (horizon == 0.0) return 0.0;
  const Vector start = eta * h0;
  const Vector end = eta * (h0 - horizon * (a.transpose() * x.weights()));
  return (log_sum_exp(start) - log_sum_exp(end)) / eta;
}

double reward_cont(const Schedule& schedule, const Vector& h0, double horizon,
                   const Matrix& a, double eta) {
  if (schedule.mode() != ScheduleMode::continuous) {
    throw PreconditionError("closed-form reward needs a continuous schedule");
  }
  if (std::abs(schedule.horizon() - horizon) > kHorizonRelTol * std::max(1.0, horizon)) {
    throw InputError("schedule duration " + std::to_string(schedule.horizon()) +
                     " does not match the horizon " + std::to_string(horizon));
  }
  if (schedule.segments().empty()) return 0.0;
  return reward_constant(SimplexVector(schedule.time_average()), h0, horizon, a, eta);
}

double reward_cont(const Schedule& schedule, const Vector& h0, double horizon,
                   const BimatrixGame& game, double eta) {
  require_zero_sum(game);
  return reward_cont(schedule, h0, horizon, game.a(), eta);
}

ContinuousObjective::ContinuousObjective(const Matrix& a, const Vector& h0, double horizon,
                                         double eta)
    : a_(a), eta_h0_(eta * h0), horizon_(horizon), eta_(eta) {
  require_eta(eta);
  require_h0(h0, a);
}

Vector ContinuousObjective::logits(const Vector& x) const {
  return eta_h0_ - (eta_ * horizon_) * (a_.transpose() * x);
}

double ContinuousObjective::value(const Vector& x) const { return log_sum_exp(logits(x)); }

Vector ContinuousObjective::gradient(const Vector& x) const {
  return -(eta_ * horizon_) * (a_ * softmax(logits(x)));
}

double ContinuousObjective::curvature_bound() const {
  const double scale = eta_ * horizon_ * a_.cwiseAbs().maxCoeff();
  return 4.0 * scale * scale;
}

long nominal_iterations(double epsilon, double eta) {
  return static_cast<long>(std::ceil(2.0 / (epsilon * eta)));
}

PlannerResult optimize_continuous(const Matrix& a, const Vector& h0, double horizon,
                                  double eta, double epsilon,
                                  const FrankWolfeOptions& options) {
  if (!(epsilon > 0.0)) throw InputError("epsilon must be positive");
  if (a.rows() < 1 || a.cols() < 1) throw InputError("game matrix must be non-empty");
  if (!(horizon >= 0.0)) throw InputError("horizon must be non-negative");
  require_eta(eta);
  require_h0(h0, a);
  const Vector eta_h0 = eta * h0;
  const Index n = a.rows();
  const double scale = eta * horizon;
  const double target_gap = epsilon * eta;

  Vector x = Vector::Constant(n, 1.0 / static_cast<double>(n));
  // Column scores A^T x, maintained incrementally.
  Vector scores = a.transpose() * x;

  for (long s = 0;; ++s) {
    const Vector z = eta_h0 - scale * scores;
    const Vector q = softmax(z);
    const Vector grad = -scale * (a * q);
    if (options.observer) options.observer(s, x, log_sum_exp(z));

    Index fw = 0;
    grad.minCoeff(&fw);
    const double gx = grad.dot(x);
    const double gap = gx - grad(fw);
    if (gap <= target_gap) {
      PlannerResult out;
      out.x_star = SimplexVector(x);
      out.r_star = reward_constant(out.x_star, h0, horizon, a, eta);
      out.epsilon = epsilon;
      out.iterations = s + 1;
      out.frank_wolfe_gap = std::max(0.0, gap);
      return out;
    }
    if (s >= options.max_iterations) {
      throw ResourceCapError("Frank-Wolfe reached " + std::to_string(options.max_iterations) +
                             " iterations with gap " + std::to_string(gap) + " > " +
                             std::to_string(target_gap));
    }

    switch (options.step_rule) {
      case StepRule::fixed: {
        const double gamma = 2.0 / (static_cast<double>(s) + 2.0);
        x *= (1.0 - gamma);
        x(fw) += gamma;
        if ((s + 1) % 1024 == 0) {
          scores = a.transpose() * x;
        } else {
          scores = (1.0 - gamma) * scores + gamma * a.row(fw).transpose();
        }
        break;
      }
      case StepRule::line_search: {
        const Vector dir_scores = a.row(fw).transpose() - scores;
        const double gamma = line_minimize(z, -scale * dir_scores, 1.0);
        x *= (1.0 - gamma);
        x(fw) += gamma;
        scores += gamma * dir_scores;
        break;
      }
      case StepRule::away_steps: {
        Index away = -1;
        for (Index i = 0; i < n; ++i) {
          if (x(i) > 0.0 && (away < 0 || grad(i) > grad(away))) away = i;
        }
        const double away_gap = grad(away) - gx;
        if (gap >= away_gap || x(away) >= 1.0) {
          const Vector dir_scores = a.row(fw).transpose() - scores;
          const double gamma = line_minimize(z, -scale * dir_scores, 1.0);
          x *= (1.0 - gamma);
          x(fw) += gamma;
          scores += gamma * dir_scores;
        } else {
          const double g_max = x(away) / (1.0 - x(away));
          const Vector dir_scores = scores - a.row(away).transpose();
          const double gamma = line_minimize(z, -scale * dir_scores, g_max);
          x = (1.0 + gamma) * x - gamma * index_vector(n, away);
          if (gamma >= g_max) x(away) = 0.0;
          x = x.cwiseMax(0.0);
          x /= x.sum();
          scores = a.transpose() * x;
        }
        break;
      }
    }
  }
}

std::pair<double, double> reward_bounds(const Matrix& a, double horizon, double eta) {
  require_eta(eta);
  const double val = game_value(a).value;
  const double lo = val * horizon;
  return {lo, lo + std::log(static_cast<double>(a.cols())) / eta};
}

double asymptotic_lower_bound(const Matrix& a, double horizon, double eta, double tol) {
  require_eta(eta);
  const MinBrResult br = min_br_minmax(a, tol);
  return br.value * horizon +
         std::log(static_cast<double>(a.cols()) / static_cast<double>(br.k)) / eta;
}

AlternatingPlan alternating_plan(const Matrix& a, double tol, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw InputError("fraction must lie in (0, 1]");
  const auto witness = check_assumption_no_pure(a, tol);
  if (!witness) throw PreconditionError("game does not satisfy the no-pure assumption");

  const Vector& x = witness->x.weights();
  const Index k = witness->k_action;
  const Index n = a.rows();
  const double xk = x(k);
  if (xk >= 1.0) throw std::logic_error("no-pure witness cannot be a pure strategy");
  const double delta = fraction * std::min(1.0, xk / (1.0 - xk));

  // The LP witness may sit up to its feasibility band away from the exact
  // face; weights that end up below tol are that noise and are dropped.
  const auto snap = [tol](Vector v) {
    v = (v.array().abs() <= tol).select(0.0, v);
    return SimplexVector(std::move(v));
  };
  const Vector ek = index_vector(n, k);
  SimplexVector first = snap((1.0 - delta) * x + delta * ek);
  SimplexVector second = snap((1.0 + delta) * x - delta * ek);

  const auto spread = [&](const SimplexVector& s) {
    return s.weights().dot(a.col(witness->i1) - a.col(witness->i2));
  };
  if (spread(first) < 0.0) std::swap(first, second);

  return AlternatingPlan{std::move(first), std::move(second), witness->x, delta,
                         witness->i1,      witness->i2,       k};
}

Schedule alternating_schedule(const AlternatingPlan& plan, long rounds) {
  if (rounds < 0) throw InputError("round count must be non-negative");
  std::vector<ScheduleSegment> segments;
  segments.reserve(static_cast<std::size_t>(rounds));
  for (long t = 1; t <= rounds; ++t) {
    if (t % 2 == 1) {
      segments.push_back({1.0, t == rounds ? plan.base : plan.x_odd});
    } else {
      segments.push_back({1.0, plan.x_even});
    }
  }
  return Schedule(ScheduleMode::discrete, std::move(segments));
}

double continuous_value(const Vector& h, double t, const Matrix& a, double eta,
                        double tolerance) {
  if (t <= 0.0) return 0.0;
  FrankWolfeOptions opts;
  opts.step_rule = StepRule::away_steps;
  return optimize_continuous(a, h, t, eta, tolerance, opts).r_star;
}

double hjb_residual(const Vector& h, double t, const Matrix& a, double eta, double fd_step) {
  if (!(fd_step > 0.0)) throw InputError("finite-difference step must be positive");
  if (t < 0.0) throw InputError("remaining horizon must be non-negative");
  require_h0(h, a);
  const double tol = fd_step * fd_step;
  const auto V = [&](const Vector& hh, double tt) {
    return continuous_value(hh, tt, a, eta, tol);
  };

  double dv_dt;
  if (t > fd_step) {
    dv_dt = (V(h, t + fd_step) - V(h, t - fd_step)) / (2.0 * fd_step);
  } else {
    dv_dt = (-3.0 * V(h, t) + 4.0 * V(h, t + fd_step) - V(h, t + 2.0 * fd_step)) /
            (2.0 * fd_step);
  }
  Vector grad(h.size());
  for (Index i = 0; i < h.size(); ++i) {
    Vector up = h;
    Vector down = h;
    up(i) += fd_step;
    down(i) -= fd_step;
    grad(i) = (V(up, t) - V(down, t)) / (2.0 * fd_step);
  }
  const Vector p = softmax((eta * h).eval());
  // Linear in x over the simplex: the maximum sits at a vertex.
  const double best = (a * (p - grad)).maxCoeff();
  return std::abs(dv_dt - best);
}

}  // namespace strategizer
