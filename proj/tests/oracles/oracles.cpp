#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oracles {

namespace {

struct HamiltonSearch {
  int n;
  std::vector<std::vector<int>> out;
  std::vector<bool> used;

  bool extend(int at, int depth) {
    if (depth == n) {
      return std::find(out[at].begin(), out[at].end(), 0) != out[at].end();
    }
    for (int next : out[at]) {
      if (used[next]) continue;
      used[next] = true;
      if (extend(next, depth + 1)) return true;
      used[next] = false;
    }
    return false;
  }
};

}  // namespace

bool has_hamiltonian_cycle(int n_vertices, const std::vector<std::pair<int, int>>& edges) {
  if (n_vertices < 2) return false;
  std::vector<int> in_degree(n_vertices, 0);
  HamiltonSearch search{n_vertices, std::vector<std::vector<int>>(n_vertices),
                        std::vector<bool>(n_vertices, false)};
  for (const auto& [from, to] : edges) {
    if (from == to) continue;
    search.out[from].push_back(to);
    ++in_degree[to];
  }
  for (int v = 0; v < n_vertices; ++v) {
    if (search.out[v].empty() || in_degree[v] == 0) return false;
  }
  search.used[0] = true;
  return search.extend(0, 1);
}

double value_two_rows(const Matrix& a) {
  const auto envelope = [&](double p) {
    double lo = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < a.cols(); ++j) lo = std::min(lo, p * a(0, j) + (1 - p) * a(1, j));
    return lo;
  };
  std::vector<double> candidates{0.0, 1.0};
  for (Eigen::Index i = 0; i < a.cols(); ++i) {
    for (Eigen::Index j = i + 1; j < a.cols(); ++j) {
      // p a0i + (1-p) a1i = p a0j + (1-p) a1j
      const double denom = (a(0, i) - a(1, i)) - (a(0, j) - a(1, j));
      if (denom == 0.0) continue;
      const double p = (a(1, j) - a(1, i)) / denom;
      if (p > 0.0 && p < 1.0) candidates.push_back(p);
    }
  }
  double best = -std::numeric_limits<double>::infinity();
  for (double p : candidates) best = std::max(best, envelope(p));
  return best;
}

double value_two_by_two(const Matrix& a) {
  const double lower = std::max(std::min(a(0, 0), a(0, 1)), std::min(a(1, 0), a(1, 1)));
  const double upper = std::min(std::max(a(0, 0), a(1, 0)), std::max(a(0, 1), a(1, 1)));
  if (lower == upper) return lower;
  return (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)) / (a(0, 0) + a(1, 1) - a(0, 1) - a(1, 0));
}

std::vector<long double> softmax_long_double(const std::vector<long double>& z) {
  std::vector<long double> out(z.size());
  long double total = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    out[i] = std::exp(z[i]);
    total += out[i];
  }
  for (auto& v : out) v /= total;
  return out;
}

std::vector<long> best_response_set(const Vector& x, const Matrix& b, double tol) {
  std::vector<double> scores(b.cols(), 0.0);
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    for (Eigen::Index i = 0; i < b.rows(); ++i) scores[j] += x(i) * b(i, j);
  }
  const double top = *std::max_element(scores.begin(), scores.end());
  std::vector<long> out;
  for (std::size_t j = 0; j < scores.size(); ++j) {
    if (scores[j] >= top - tol) out.push_back(static_cast<long>(j));
  }
  return out;
}

double matching_pennies_alternating_total(double eta, long rounds) {
  return 0.5 * static_cast<double>(rounds / 2 * 2) * std::tanh(eta);
}

}  // namespace oracles
