#pragma once

// Dense two-phase simplex method for small linear programs.
//
//   maximize    c^T x
//   subject to  row_i^T x  (<= | = | >=)  rhs_i
//               x >= 0
//
// Games handled here are desk-scale (tens of rows and columns), so the full
// tableau is kept in a dense Eigen matrix. Pivot selection is Dantzig's rule,
// falling back to Bland's rule after a run of degenerate pivots so that the
// method always terminates.

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "strategizer/numerics.hpp"

namespace strategizer {

enum class Relation { less_equal, equal, greater_equal };
enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

template <typename Scalar>
struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  VectorX<Scalar> x;
  Scalar objective = Scalar(0);
};

template <typename Scalar>
class LinearProgram {
 public:
  explicit LinearProgram(Index num_vars)
      : num_vars_(num_vars), objective_(VectorX<Scalar>::Zero(num_vars)) {}

  Index num_vars() const { return num_vars_; }
  Index num_constraints() const { return static_cast<Index>(rows_.size()); }

  void set_objective(const VectorX<Scalar>& c) { objective_ = c; }

  void add_constraint(const VectorX<Scalar>& row, Relation rel, Scalar rhs) {
    rows_.push_back(row);
    relations_.push_back(rel);
    rhs_.push_back(rhs);
  }

  LpSolution<Scalar> maximize(Scalar pivot_tol = Scalar(1e-9),
                              long max_pivots = 200000) const;

 private:
  Index num_vars_;
  VectorX<Scalar> objective_;
  std::vector<VectorX<Scalar>> rows_;
  std::vector<Relation> relations_;
  std::vector<Scalar> rhs_;
};

namespace detail {

template <typename Scalar>
class Tableau {
 public:
  // t_: constraint rows followed by one objective row; last column is rhs.
  MatrixX<Scalar> t;
  std::vector<Index> basis;

  Index rows() const { return t.rows() - 1; }
  Index cols() const { return t.cols() - 1; }

  void pivot(Index r, Index c) {
    t.row(r) /= t(r, c);
    for (Index i = 0; i < t.rows(); ++i) {
      if (i == r) continue;
      const Scalar f = t(i, c);
      if (f != Scalar(0)) t.row(i) -= f * t.row(r);
    }
    t(r, c) = Scalar(1);
    basis[static_cast<std::size_t>(r)] = c;
  }

  // Runs simplex pivots on the objective row over columns [0, active_cols).
  LpStatus optimize(Index active_cols, Scalar tol, long max_pivots) {
    const Index z = rows();
    bool bland = false;
    int degenerate_run = 0;
    for (long it = 0; it < max_pivots; ++it) {
      Index enter = -1;
      if (bland) {
        for (Index j = 0; j < active_cols; ++j) {
          if (t(z, j) < -tol) {
            enter = j;
            break;
          }
        }
      } else {
        Scalar best = -tol;
        for (Index j = 0; j < active_cols; ++j) {
          if (t(z, j) < best) {
            best = t(z, j);
            enter = j;
          }
        }
      }
      if (enter < 0) return LpStatus::optimal;

      Index leave = -1;
      Scalar best_ratio = std::numeric_limits<Scalar>::infinity();
      for (Index i = 0; i < z; ++i) {
        const Scalar a = t(i, enter);
        if (a <= tol) continue;
        const Scalar ratio = t(i, cols()) / a;
        if (leave < 0 || ratio < best_ratio - tol) {
          leave = i;
          best_ratio = ratio;
        } else if (ratio <= best_ratio + tol &&
                   basis[static_cast<std::size_t>(i)] <
                       basis[static_cast<std::size_t>(leave)]) {
          leave = i;
          best_ratio = std::min(best_ratio, ratio);
        }
      }
      if (leave < 0) return LpStatus::unbounded;

      degenerate_run = (best_ratio <= tol) ? degenerate_run + 1 : 0;
      if (degenerate_run > 50) bland = true;
      pivot(leave, enter);
    }
    return LpStatus::iteration_limit;
  }
};

}  // namespace detail

template <typename Scalar>
LpSolution<Scalar> LinearProgram<Scalar>::maximize(Scalar pivot_tol,
                                                   long max_pivots) const {
  const Index m = num_constraints();
  const Index n = num_vars_;

  Index num_slack = 0;
  Index num_art = 0;
  std::vector<Relation> rel(relations_);
  std::vector<Scalar> rhs(rhs_);
  std::vector<Scalar> sign(static_cast<std::size_t>(m), Scalar(1));
  for (Index i = 0; i < m; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (rhs[k] < Scalar(0)) {
      sign[k] = Scalar(-1);
      rhs[k] = -rhs[k];
      if (rel[k] == Relation::less_equal) {
        rel[k] = Relation::greater_equal;
      } else if (rel[k] == Relation::greater_equal) {
        rel[k] = Relation::less_equal;
      }
    }
    if (rel[k] != Relation::equal) ++num_slack;
    if (rel[k] != Relation::less_equal) ++num_art;
  }

  const Index art_begin = n + num_slack;
  const Index total = art_begin + num_art;
  detail::Tableau<Scalar> tab;
  tab.t = MatrixX<Scalar>::Zero(m + 1, total + 1);
  tab.basis.assign(static_cast<std::size_t>(m), -1);

  Index next_slack = n;
  Index next_art = art_begin;
  for (Index i = 0; i < m; ++i) {
    const auto k = static_cast<std::size_t>(i);
    tab.t.row(i).head(n) = sign[k] * rows_[k].transpose();
    tab.t(i, total) = rhs[k];
    switch (rel[k]) {
      case Relation::less_equal:
        tab.t(i, next_slack) = Scalar(1);
        tab.basis[k] = next_slack++;
        break;
      case Relation::greater_equal:
        tab.t(i, next_slack++) = Scalar(-1);
        tab.t(i, next_art) = Scalar(1);
        tab.basis[k] = next_art++;
        break;
      case Relation::equal:
        tab.t(i, next_art) = Scalar(1);
        tab.basis[k] = next_art++;
        break;
    }
  }

  LpSolution<Scalar> out;
  const Scalar scale =
      Scalar(1) + (m > 0 ? *std::max_element(rhs.begin(), rhs.end()) : Scalar(0));

  // Phase 1: maximize -(sum of artificials).
  if (num_art > 0) {
    tab.t.row(m).setZero();
    for (Index i = 0; i < m; ++i) {
      if (tab.basis[static_cast<std::size_t>(i)] >= art_begin) tab.t.row(m) -= tab.t.row(i);
    }
    tab.t.row(m).segment(art_begin, num_art).setZero();
    const LpStatus s1 = tab.optimize(total, pivot_tol, max_pivots);
    if (s1 == LpStatus::iteration_limit) {
      out.status = s1;
      return out;
    }
    if (tab.t(m, total) < -pivot_tol * scale) {
      out.status = LpStatus::infeasible;
      return out;
    }
    // Drive remaining artificials out of the basis; drop redundant rows.
    for (Index i = 0; i < tab.rows();) {
      if (tab.basis[static_cast<std::size_t>(i)] < art_begin) {
        ++i;
        continue;
      }
      Index col = -1;
      for (Index j = 0; j < art_begin; ++j) {
        if (std::abs(tab.t(i, j)) > pivot_tol) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        tab.pivot(i, col);
        ++i;
      } else {
        const Index last = tab.t.rows() - 1;
        MatrixX<Scalar> reduced(tab.t.rows() - 1, tab.t.cols());
        reduced << tab.t.topRows(i), tab.t.bottomRows(last - i);
        tab.t = std::move(reduced);
        tab.basis.erase(tab.basis.begin() + i);
      }
    }
  }

  // Phase 2 over structural and slack columns only.
  const Index z = tab.rows();
  MatrixX<Scalar> phase2(tab.t.rows(), art_begin + 1);
  phase2.leftCols(art_begin) = tab.t.leftCols(art_begin);
  phase2.col(art_begin) = tab.t.col(total);
  tab.t = std::move(phase2);
  tab.t.row(z).setZero();
  tab.t.row(z).head(n) = -objective_.transpose();
  for (Index i = 0; i < z; ++i) {
    const Index b = tab.basis[static_cast<std::size_t>(i)];
    if (b < n && objective_(b) != Scalar(0)) tab.t.row(z) += objective_(b) * tab.t.row(i);
  }
  const LpStatus s2 = tab.optimize(art_begin, pivot_tol, max_pivots);
  out.status = s2;
  if (s2 != LpStatus::optimal) return out;

  out.x = VectorX<Scalar>::Zero(n);
  for (Index i = 0; i < z; ++i) {
    const Index b = tab.basis[static_cast<std::size_t>(i)];
    if (b < n) out.x(b) = std::max(Scalar(0), tab.t(i, tab.cols()));
  }
  out.objective = objective_.dot(out.x);
  return out;
}

}  // namespace strategizer
