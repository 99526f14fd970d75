#pragma once

// Learner algorithms driven by cumulative historical rewards h, and a
// round-by-round simulator against a fixed optimizer schedule.
//
// Round convention: in round t the learner commits to a strategy computed
// from h after rounds 1..t-1, then observes x(t) and sets h += B^T x(t).

#include <string>
#include <vector>

#include "strategizer/game.hpp"

namespace strategizer {

enum class LearnerKind { mwu, replicator, best_response };

const char* to_string(LearnerKind kind);
LearnerKind parse_learner_kind(const std::string& name);

struct LearnerState {
  Vector h;
  double eta = 1.0;  // ignored for best_response
  LearnerKind kind = LearnerKind::mwu;
  long round = 0;
  double time = 0.0;

  // h0 empty means the zero vector of length m.
  static LearnerState initial(LearnerKind kind, Index m, double eta, Vector h0 = Vector());
};

// softmax(eta * h).
SimplexVector mwu_strategy(const LearnerState& state);

// h' = h + B^T x, accumulated in row order; round advances by one.
LearnerState learner_update(const LearnerState& state, const SimplexVector& x,
                            const BimatrixGame& game);

// Lexicographically first maximizer of h under exact comparison.
Index br_action(const Vector& h);
inline Index br_action(const LearnerState& state) { return br_action(state.h); }

enum class ScheduleMode { discrete, continuous };

struct ScheduleSegment {
  double length;  // round count (discrete) or duration (continuous)
  SimplexVector strategy;
};

// Piecewise-constant optimizer plan.
class Schedule {
 public:
  Schedule(ScheduleMode mode, std::vector<ScheduleSegment> segments);

  static Schedule constant(ScheduleMode mode, double horizon, const SimplexVector& x);

  ScheduleMode mode() const { return mode_; }
  const std::vector<ScheduleSegment>& segments() const { return segments_; }
  double horizon() const { return horizon_; }
  Index dim() const;

  // (1/T) * integral of x(s) ds over the whole schedule.
  Vector time_average() const;
  // integral of x(s) ds over [0, t], exact for the piecewise-constant plan.
  Vector integral_until(double t) const;
  // Optimizer strategy for each discrete round, in order.
  std::vector<SimplexVector> rounds() const;

 private:
  ScheduleMode mode_;
  std::vector<ScheduleSegment> segments_;
  double horizon_ = 0.0;
};

// Replicator dynamics: softmax(eta * (h0 + B^T * integral_0^t x(s) ds)).
SimplexVector replicator_strategy(const Vector& h0, const Schedule& schedule, double t,
                                  double eta, const BimatrixGame& game);

struct TrajectoryRecord {
  double t;  // round index, or segment end time for replicator play
  SimplexVector optimizer_strategy;
  SimplexVector learner_strategy;  // at the start of the round/segment
  double optimizer_reward;
  double learner_reward;
  Vector h_after;
};

struct Trajectory {
  std::vector<TrajectoryRecord> rounds;
  double optimizer_total = 0.0;
  double learner_total = 0.0;
  std::vector<std::string> warnings;
};

// Plays `schedule` against the learner. MWU and best-response need a
// discrete schedule; the replicator learner needs a continuous one and
// produces one record per segment with exactly integrated rewards.
Trajectory simulate(const BimatrixGame& game, const Schedule& schedule, LearnerKind kind,
                    double eta, const Vector& h0 = Vector());

}  // namespace strategizer
