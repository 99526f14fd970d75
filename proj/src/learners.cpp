#include "strategizer/learners.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "strategizer/errors.hpp"

namespace strategizer {

namespace {

constexpr double kHorizonTol = 1e-9;

void require_positive_eta(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw InputError("step size eta must be a positive finite number");
  }
}

// h + B^T x with each column sum accumulated in row order.
Vector accumulate_rewards(const Vector& h, const Matrix& b, const Vector& x) {
  Vector out = h;
  for (Index j = 0; j < b.cols(); ++j) {
    double acc = 0.0;
    for (Index i = 0; i < b.rows(); ++i) acc += b(i, j) * x(i);
    out(j) += acc;
  }
  return out;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

const char* to_string(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::mwu:
      return "mwu";
    case LearnerKind::replicator:
      return "replicator";
    case LearnerKind::best_response:
      return "br";
  }
  return "unknown";
}

LearnerKind parse_learner_kind(const std::string& name) {
  if (name == "mwu") return LearnerKind::mwu;
  if (name == "replicator") return LearnerKind::replicator;
  if (name == "br" || name == "best-response") return LearnerKind::best_response;
  throw InputError("unknown learner '" + name + "' (expected mwu, br or replicator)");
}

LearnerState LearnerState::initial(LearnerKind kind, Index m, double eta, Vector h0) {
  if (m <= 0) throw InputError("learner must have at least one action");
  if (kind != LearnerKind::best_response) require_positive_eta(eta);
  LearnerState s;
  s.kind = kind;
  s.eta = eta;
  if (h0.size() == 0) {
    s.h = Vector::Zero(m);
  } else if (h0.size() != m) {
    throw InputError("dimension mismatch: h0 has dimension " + std::to_string(h0.size()) +
                     ", expected " + std::to_string(m));
  } else {
    s.h = std::move(h0);
  }
  if (!s.h.allFinite()) throw InputError("historical rewards must be finite");
  return s;
}

SimplexVector mwu_strategy(const LearnerState& state) {
  return SimplexVector(softmax((state.eta * state.h).eval()));
}

LearnerState learner_update(const LearnerState& state, const SimplexVector& x,
                            const BimatrixGame& game) {
  if (x.dim() != game.rows()) {
    throw InputError("dimension mismatch: optimizer strategy x has dimension " +
                     std::to_string(x.dim()) + ", expected " + std::to_string(game.rows()));
  }
  if (state.h.size() != game.cols()) {
    throw InputError("dimension mismatch: learner history has dimension " +
                     std::to_string(state.h.size()) + ", expected " +
                     std::to_string(game.cols()));
  }
  LearnerState next = state;
  next.h = accumulate_rewards(state.h, game.b(), x.weights());
  ++next.round;
  next.time += 1.0;
  return next;
}

Index br_action(const Vector& h) {
  Index best = 0;
  for (Index j = 1; j < h.size(); ++j) {
    if (h(j) > h(best)) best = j;
  }
  return best;
}

Schedule::Schedule(ScheduleMode mode, std::vector<ScheduleSegment> segments)
    : mode_(mode), segments_(std::move(segments)) {
  for (const auto& seg : segments_) {
    if (!(seg.length > 0.0) || !std::isfinite(seg.length)) {
      throw InputError("schedule segment lengths must be positive and finite");
    }
    if (mode_ == ScheduleMode::discrete && seg.length != std::floor(seg.length)) {
      throw InputError("discrete schedule segment counts must be integers");
    }
    if (seg.strategy.dim() != segments_.front().strategy.dim()) {
      throw InputError("schedule strategies have inconsistent dimensions");
    }
    horizon_ += seg.length;
  }
}

Schedule Schedule::constant(ScheduleMode mode, double horizon, const SimplexVector& x) {
  if (horizon <= 0.0) return Schedule(mode, {});
  return Schedule(mode, {ScheduleSegment{horizon, x}});
}

Index Schedule::dim() const {
  return segments_.empty() ? 0 : segments_.front().strategy.dim();
}

Vector Schedule::integral_until(double t) const {
  Vector acc = Vector::Zero(dim());
  double elapsed = 0.0;
  for (const auto& seg : segments_) {
    if (t <= elapsed) break;
    const double span = std::min(seg.length, t - elapsed);
    acc += span * seg.strategy.weights();
    elapsed += seg.length;
  }
  return acc;
}

Vector Schedule::time_average() const {
  if (segments_.empty()) throw PreconditionError("empty schedule has no time average");
  return integral_until(horizon_) / horizon_;
}

std::vector<SimplexVector> Schedule::rounds() const {
  if (mode_ != ScheduleMode::discrete) {
    throw PreconditionError("only discrete schedules have rounds");
  }
  std::vector<SimplexVector> out;
  out.reserve(static_cast<std::size_t>(horizon_));
  for (const auto& seg : segments_) {
    for (long r = 0; r < static_cast<long>(seg.length); ++r) out.push_back(seg.strategy);
  }
  return out;
}

SimplexVector replicator_strategy(const Vector& h0, const Schedule& schedule, double t,
                                  double eta, const BimatrixGame& game) {
  require_positive_eta(eta);
  if (schedule.mode() != ScheduleMode::continuous) {
    throw PreconditionError("replicator dynamics need a continuous schedule");
  }
  if (t < 0.0 || t > schedule.horizon() * (1.0 + kHorizonTol) + kHorizonTol) {
    throw InputError("time " + std::to_string(t) + " outside [0, " +
                     std::to_string(schedule.horizon()) + "]");
  }
  if (h0.size() != game.cols()) {
    throw InputError("dimension mismatch: h0 has dimension " + std::to_string(h0.size()) +
                     ", expected " + std::to_string(game.cols()));
  }
  if (schedule.segments().empty()) return SimplexVector(softmax((eta * h0).eval()));
  if (schedule.dim() != game.rows()) {
    throw InputError("dimension mismatch: schedule strategies have dimension " +
                     std::to_string(schedule.dim()) + ", expected " +
                     std::to_string(game.rows()));
  }
  const Vector h = h0 + game.b().transpose() * schedule.integral_until(t);
  return SimplexVector(softmax((eta * h).eval()));
}

Trajectory simulate(const BimatrixGame& game, const Schedule& schedule, LearnerKind kind,
                    double eta, const Vector& h0) {
  if (!schedule.segments().empty() && schedule.dim() != game.rows()) {
    throw InputError("dimension mismatch: schedule strategies have dimension " +
                     std::to_string(schedule.dim()) + ", expected " +
                     std::to_string(game.rows()));
  }
  Trajectory traj;
  LearnerState state = LearnerState::initial(kind, game.cols(), eta, h0);
  if (kind == LearnerKind::mwu && eta > 0.5) {
    traj.warnings.push_back("eta = " + std::to_string(eta) +
                            " exceeds 1/2, outside the usual MWU step-size range");
  }

  if (kind == LearnerKind::replicator) {
    if (schedule.mode() != ScheduleMode::continuous) {
      throw PreconditionError("the replicator learner needs a continuous schedule");
    }
    double t = 0.0;
    for (const auto& seg : schedule.segments()) {
      const Vector& x = seg.strategy.weights();
      const Vector u = game.b().transpose() * x;  // learner payoff rate per action
      const Vector w = game.a().transpose() * x;  // optimizer payoff per learner action
      const Vector z0 = eta * state.h;
      const Vector z1 = eta * (state.h + seg.length * u);
      // d/ds lse(eta (h + s u)) = eta * softmax . u, so the learner integral
      // telescopes exactly.
      const double learner_reward = (log_sum_exp(z1) - log_sum_exp(z0)) / eta;
      double optimizer_reward;
      if (game.is_zero_sum()) {
        optimizer_reward = -learner_reward;
      } else {
        const auto rate = [&](double s) {
          return softmax((z0 + (eta * s) * u).eval()).dot(w);
        };
        optimizer_reward = integrate(rate, 0.0, seg.length, 1e-12 * (1.0 + seg.length));
      }
      SimplexVector y(softmax(z0));
      state.h += seg.length * u;
      state.time += seg.length;
      t += seg.length;
      traj.optimizer_total += optimizer_reward;
      traj.learner_total += learner_reward;
      traj.rounds.push_back(
          TrajectoryRecord{t, seg.strategy, std::move(y), optimizer_reward, learner_reward, state.h});
    }
    return traj;
  }

  if (schedule.mode() != ScheduleMode::discrete) {
    throw PreconditionError(std::string("the ") + to_string(kind) +
                            " learner needs a discrete schedule");
  }
  long round = 0;
  for (const auto& seg : schedule.segments()) {
    for (long r = 0; r < static_cast<long>(seg.length); ++r) {
      ++round;
      SimplexVector y = kind == LearnerKind::mwu
                            ? mwu_strategy(state)
                            : SimplexVector::pure(game.cols(), br_action(state));
      const double opt = expected_payoff(seg.strategy, game, y, Side::optimizer);
      const double lrn = expected_payoff(seg.strategy, game, y, Side::learner);
      state = learner_update(state, seg.strategy, game);
      traj.optimizer_total += opt;
      traj.learner_total += lrn;
      traj.rounds.push_back(TrajectoryRecord{static_cast<double>(round), seg.strategy,
                                             std::move(y), opt, lrn, state.h});
    }
  }
  return traj;
}

}  // namespace strategizer
