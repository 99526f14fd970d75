#pragma once

// Reference implementations that share no code paths with the library.
// They are deliberately naive and only meant for small inputs.

#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracles {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Backtracking search for a directed Hamiltonian cycle. Vertices are 0-based.
// Prunes on zero in- or out-degree before searching.
bool has_hamiltonian_cycle(int n_vertices, const std::vector<std::pair<int, int>>& edges);

// Minmax value of a 2 x m game. The lower envelope of m lines over p in
// [0, 1] is concave; its maximum sits at an endpoint or at a crossing.
double value_two_rows(const Matrix& a);

// Closed form for 2 x 2 games (saddle point check, then the mixed formula).
double value_two_by_two(const Matrix& a);

// Direct exp(z_i) / sum exp(z_j) in long double, no max shift. Exact
// enough for |z| up to about 11000.
std::vector<long double> softmax_long_double(const std::vector<long double>& z);

// Columns j with x^T B e_j >= max - tol, by direct summation.
std::vector<long> best_response_set(const Vector& x, const Matrix& b, double tol);

// Total optimizer reward of pure alternation against MWU on matching
// pennies: (T / 2) tanh(eta).
double matching_pennies_alternating_total(double eta, long rounds);

}  // namespace oracles
