#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>

#include "oracles.hpp"
#include "strategizer/errors.hpp"
#include "strategizer/game.hpp"

using namespace strategizer;

namespace {

Matrix mat(Index r, Index c, std::initializer_list<double> xs) {
  Matrix m(r, c);
  auto it = xs.begin();
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = *it++;
  return m;
}

SimplexVector sv(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v(i++) = x;
  return SimplexVector(v);
}

Matrix matching_pennies() { return mat(2, 2, {1, -1, -1, 1}); }

// The (n + 2) x (n + 3) game whose unique min-BR minmax strategy has a
// single best response.
Matrix single_br_game(int n) {
  Matrix a = Matrix::Zero(n + 2, n + 3);
  for (int i = 0; i < n; ++i) {
    a(i, i) = n;
    a(i, n) = n;
    a(i, n + 1) = n;
  }
  for (int j = 0; j < n; ++j) {
    a(n, j) = n;
    a(n + 1, j) = n;
  }
  a(n, n) = 2;
  a(n + 1, n + 1) = 2;
  a.col(n + 2).setOnes();
  return a;
}

Matrix random_matrix(std::mt19937_64& rng, Index r, Index c) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = u(rng);
  return m;
}

SimplexVector random_simplex(std::mt19937_64& rng, Index n) {
  std::exponential_distribution<double> e(1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = e(rng);
  return SimplexVector(v);
}

}  // namespace

TEST_SUITE("simplex vectors") {
  TEST_CASE("construction normalizes and rejects bad weights") {
    const SimplexVector x = sv({1, 3});
    CHECK(x[0] == doctest::Approx(0.25));
    CHECK(x[1] == doctest::Approx(0.75));
    CHECK_THROWS_AS(sv({1, -0.5}), InputError);
    CHECK_THROWS_AS(sv({0, 0}), InputError);
    CHECK_THROWS_AS(SimplexVector::pure(3, 3), InputError);
    CHECK(SimplexVector::uniform(4)[2] == doctest::Approx(0.25));
  }

  TEST_CASE("tiny negative round-off is clamped") {
    const SimplexVector x = sv({1.0, -1e-13});
    CHECK(x[1] == 0.0);
    CHECK(x[0] == 1.0);
  }
}

TEST_CASE("expected payoff") {
  const BimatrixGame mp = BimatrixGame::zero_sum(matching_pennies());
  CHECK(expected_payoff(sv({1, 0}), mp, sv({1, 0}), Side::optimizer) == 1.0);
  CHECK(expected_payoff(sv({1, 0}), mp, sv({1, 0}), Side::learner) == -1.0);

  const BimatrixGame zero_cols = BimatrixGame::zero_sum(mat(2, 3, {1, -2, 3, -1, 2, -3}));
  CHECK(expected_payoff(SimplexVector::uniform(2), zero_cols, SimplexVector::uniform(3),
                        Side::optimizer) == doctest::Approx(0.0));

  const BimatrixGame g = BimatrixGame::zero_sum(mat(2, 2, {2, 0, 0, 1}));
  CHECK(expected_payoff(sv({1.0 / 3, 2.0 / 3}), g, sv({1, 0}), Side::optimizer) ==
        doctest::Approx(2.0 / 3));

  try {
    expected_payoff(SimplexVector::uniform(3), g, sv({1, 0}), Side::optimizer);
    FAIL("expected a dimension error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("dimension") != std::string::npos);
  }
}

TEST_CASE("bimatrix construction") {
  CHECK_THROWS_AS(BimatrixGame(Matrix::Zero(2, 2), Matrix::Zero(2, 3)), InputError);
  CHECK(BimatrixGame::zero_sum(matching_pennies()).is_zero_sum());
  CHECK(BimatrixGame::zero_sum(matching_pennies()).b() == -matching_pennies());
  CHECK_FALSE(BimatrixGame(Matrix::Zero(2, 2), Matrix::Ones(2, 2)).is_zero_sum());
}

TEST_SUITE("game value") {
  TEST_CASE("matching pennies") {
    const auto r = game_value(matching_pennies());
    CHECK(r.value == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.optimizer_strategy[0] == doctest::Approx(0.5));
    CHECK(r.learner_strategy[0] == doctest::Approx(0.5));
    CHECK(r.certificate_gap <= 1e-9);
  }

  TEST_CASE("all-zero matrix") {
    const auto r = game_value(Matrix::Zero(3, 4));
    CHECK(r.value == 0.0);
    CHECK(r.optimizer_strategy.dim() == 3);
    CHECK(r.learner_strategy.dim() == 4);
  }

  TEST_CASE("two by two diagonal") {
    const auto r = game_value(mat(2, 2, {2, 0, 0, 1}));
    CHECK(r.value == doctest::Approx(2.0 / 3));
    CHECK(r.optimizer_strategy[0] == doctest::Approx(1.0 / 3));
    CHECK(r.optimizer_strategy[1] == doctest::Approx(2.0 / 3));
  }

  TEST_CASE("duality certificate on random games") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const Index r = 1 + trial % 6;
      const Index c = 1 + (trial / 6) % 6;
      const Matrix a = random_matrix(rng, r, c);
      const auto res = game_value(a);
      const Vector col_payoffs = a.transpose() * res.optimizer_strategy.weights();
      const Vector row_payoffs = a * res.learner_strategy.weights();
      CHECK(col_payoffs.minCoeff() >= res.value - 1e-8);
      CHECK(row_payoffs.maxCoeff() <= res.value + 1e-8);
    }
  }

  TEST_CASE("agrees with the two-row oracle") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
      const Matrix a = random_matrix(rng, 2, 1 + trial % 7);
      CHECK(game_value(a).value == doctest::Approx(oracles::value_two_rows(a)).epsilon(1e-9));
    }
  }

  TEST_CASE("rejects empty and non-finite input") {
    CHECK_THROWS_AS(game_value(Matrix(0, 2)), InputError);
    Matrix bad = matching_pennies();
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(game_value(bad), InputError);
  }
}

TEST_SUITE("best responses") {
  TEST_CASE("examples") {
    const BimatrixGame mp = BimatrixGame::zero_sum(matching_pennies());
    CHECK(best_response_set(sv({0.5, 0.5}), mp) == std::vector<Index>{0, 1});

    const BimatrixGame g(Matrix::Zero(2, 3), mat(2, 3, {0, 5, 1, 3, 2, 1}));
    CHECK(best_response_set(SimplexVector::pure(2, 0), g) == std::vector<Index>{1});
    CHECK(best_response_set(SimplexVector::pure(2, 1), g) == std::vector<Index>{0});

    const Matrix ex = single_br_game(3);
    const auto br = best_response_set(sv({0, 0, 0.5, 0.5, 0}), BimatrixGame::zero_sum(ex));
    CHECK(br == std::vector<Index>{5});
  }

  TEST_CASE("never empty and monotone in tol") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
      const Matrix b = random_matrix(rng, 3, 5);
      const BimatrixGame g(-b, b);
      const SimplexVector x = random_simplex(rng, 3);
      std::size_t last = 0;
      for (double tol : {0.0, 1e-7, 1e-3, 0.1, 0.5, 10.0}) {
        const auto set = best_response_set(x, g, tol);
        CHECK_FALSE(set.empty());
        CHECK(set.size() >= last);
        last = set.size();
      }
      CHECK(last == 5);
    }
  }

  TEST_CASE("invariant under positive affine maps of B") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 100; ++trial) {
      const Matrix b = random_matrix(rng, 3, 4);
      const SimplexVector x = random_simplex(rng, 3);
      const BimatrixGame g(Matrix::Zero(3, 4), b);
      const BimatrixGame scaled(Matrix::Zero(3, 4), 2.5 * b + Matrix::Constant(3, 4, -7.0));
      CHECK(best_response_set(x, g, 0.0) == best_response_set(x, scaled, 0.0));
    }
  }

  TEST_CASE("agrees with direct summation") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 100; ++trial) {
      const Matrix b = random_matrix(rng, 4, 4);
      const SimplexVector x = random_simplex(rng, 4);
      const auto lib = best_response_set(x, BimatrixGame(Matrix::Zero(4, 4), b), 1e-3);
      const auto ref = oracles::best_response_set(x.weights(), b, 1e-3);
      REQUIRE(lib.size() == ref.size());
      for (std::size_t i = 0; i < lib.size(); ++i) CHECK(lib[i] == ref[i]);
    }
  }
}

TEST_SUITE("min-BR minmax") {
  TEST_CASE("examples") {
    const auto mp = min_br_minmax(matching_pennies());
    CHECK(mp.k == 2);
    CHECK(mp.strategy[0] == doctest::Approx(0.5));

    const auto zeros = min_br_minmax(Matrix::Zero(2, 5));
    CHECK(zeros.k == 5);
    CHECK(zeros.value == 0.0);

    const auto ex = min_br_minmax(single_br_game(3));
    CHECK(ex.k == 1);
    CHECK(ex.value == doctest::Approx(1.0));
    CHECK(best_response_set(ex.strategy, BimatrixGame::zero_sum(single_br_game(3))) ==
          std::vector<Index>{5});
  }

  TEST_CASE("returned strategy is minmax with exactly k best responses") {
    std::mt19937_64 rng(16);
    std::uniform_int_distribution<int> small(-2, 2);
    for (int trial = 0; trial < 60; ++trial) {
      // Integer payoffs make ties between columns common.
      Matrix a(3, 4);
      for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 4; ++j) a(i, j) = small(rng);
      const auto res = min_br_minmax(a);
      const double val = game_value(a).value;
      const Vector cols = a.transpose() * res.strategy.weights();
      CHECK(cols.minCoeff() >= val - 1e-8);
      CHECK(res.value == doctest::Approx(val).epsilon(1e-8));
      const auto br = best_response_set(res.strategy, BimatrixGame::zero_sum(a));
      CHECK(static_cast<Index>(br.size()) == res.k);
    }
  }

  TEST_CASE("enumeration cap") {
    try {
      min_br_minmax(Matrix::Zero(2, 6), kDefaultTol, 5);
      FAIL("expected the cap to bind");
    } catch (const ResourceCapError& e) {
      CHECK(std::string(e.what()).find("instance too large for exact min-BR search") !=
            std::string::npos);
    }
  }
}

TEST_SUITE("no-pure assumption") {
  TEST_CASE("matching pennies has a witness") {
    const auto w = check_assumption_no_pure(matching_pennies());
    REQUIRE(w.has_value());
    CHECK(w->x[0] == doctest::Approx(0.5));
    CHECK(w->i1 == 0);
    CHECK(w->i2 == 1);
    CHECK(w->k_action == 0);
  }

  TEST_CASE("games without a witness") {
    CHECK_FALSE(check_assumption_no_pure(Matrix::Zero(3, 3)).has_value());
    CHECK_FALSE(check_assumption_no_pure(mat(2, 2, {1, 1, 0, 0})).has_value());
  }

  TEST_CASE("witnesses are minmax and satisfy the definition") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> small(-1, 1);
    int found = 0;
    for (int trial = 0; trial < 80; ++trial) {
      Matrix a(3, 3);
      for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 3; ++j) a(i, j) = small(rng);
      const auto w = check_assumption_no_pure(a);
      if (!w) continue;
      ++found;
      const double val = game_value(a).value;
      const Vector cols = a.transpose() * w->x.weights();
      CHECK(cols.minCoeff() >= val - 1e-8);
      CHECK(cols(w->i1) <= val + 1e-7);
      CHECK(cols(w->i2) <= val + 1e-7);
      CHECK(w->i1 < w->i2);
      CHECK(w->x[w->k_action] > kDefaultTol);
      CHECK(std::abs(a(w->k_action, w->i1) - a(w->k_action, w->i2)) > kDefaultTol);
    }
    CHECK(found > 0);
  }
}
