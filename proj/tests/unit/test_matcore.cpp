#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "pmu/error.hpp"
#include "pmu/linalg.hpp"
#include "support.hpp"

using namespace pmu;

TEST_CASE("dense matrix rejects empty shapes and non-finite entries") {
  CHECK_THROWS_AS(DenseMatrix(0, 3), ShapeError);
  CHECK_THROWS_AS(DenseMatrix(MatrixXd(2, 0)), ShapeError);
  MatrixXd bad = MatrixXd::Zero(2, 2);
  bad(1, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS((void)DenseMatrix(bad), ParameterError);
  bad(1, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS((void)DenseMatrix(bad), ParameterError);
  CHECK_THROWS_AS((DenseMatrix{{1, 2}, {3}}), ShapeError);
}

TEST_CASE("mask bits are 0 or 1") {
  CHECK_THROWS_AS((MaskMatrix{{1, 2}}), ParameterError);
  MaskBits bits = MaskBits::Ones(2, 2);
  bits(0, 1) = 7;
  CHECK_THROWS_AS((void)MaskMatrix(bits), ParameterError);
  const MaskMatrix m{{1, 0, 1}, {0, 0, 0}};
  CHECK(m.observed_count() == 2);
  CHECK(m.missing_count() == 4);
  CHECK(m.first_empty_row() == 1);
  CHECK(MaskMatrix(2, 2, 1).first_empty_row() == -1);
}

TEST_CASE("observed matrix zeroes values under missing positions") {
  const ObservedMatrix o(DenseMatrix{{5, 6}, {7, 0}}, MaskMatrix{{1, 0}, {0, 1}});
  CHECK(o.values() == DenseMatrix{{5, 0}, {0, 0}});
  // A genuine zero stays observed.
  CHECK(o.mask().observed(1, 1));
  CHECK_THROWS_AS(ObservedMatrix(DenseMatrix(2, 2), MaskMatrix(2, 3)), ShapeError);
}

TEST_CASE("masked residual") {
  SUBCASE("X = M gives zero") {
    const auto x = testing::random_matrix(4, 3, 1);
    const auto r = masked_residual(x, x, testing::random_mask(4, 3, 0.5, 2));
    CHECK(r.eigen().isZero(0.0));
  }
  SUBCASE("all-zero mask gives zero") {
    const auto r = masked_residual(testing::random_matrix(3, 3, 3), testing::random_matrix(3, 3, 4),
                                   MaskMatrix(3, 3, 0));
    CHECK(r.eigen().isZero(0.0));
  }
  SUBCASE("1x2 arithmetic") {
    CHECK(masked_residual(DenseMatrix{{2, 3}}, DenseMatrix{{1, 1}}, MaskMatrix{{1, 0}}) ==
          DenseMatrix{{1, 0}});
  }
  SUBCASE("shape mismatch") {
    CHECK_THROWS_AS(masked_residual(DenseMatrix(2, 2), DenseMatrix(2, 3), MaskMatrix(2, 2)),
                    ShapeError);
    CHECK_THROWS_AS(masked_residual(DenseMatrix(2, 2), DenseMatrix(2, 2), MaskMatrix(3, 2)),
                    ShapeError);
  }
  SUBCASE("entrywise against a direct loop") {
    for (unsigned seed = 0; seed < 50; ++seed) {
      const Index rows = 1 + seed % 7, cols = 1 + (seed * 3) % 5;
      const auto x = testing::random_matrix(rows, cols, seed);
      const auto m = testing::random_matrix(rows, cols, seed + 100);
      const auto mask = testing::random_mask(rows, cols, 0.6, seed + 200);
      const auto r = masked_residual(x, m, mask);
      for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j)
          CHECK(r(i, j) == (mask.observed(i, j) ? x(i, j) - m(i, j) : 0.0));
    }
  }
}

TEST_CASE("frobenius norm") {
  CHECK(frobenius_norm(DenseMatrix(3, 2)) == 0.0);
  CHECK(frobenius_norm(DenseMatrix{{1, 0}, {0, 1}}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(frobenius_norm(DenseMatrix{{3, 4}}) == doctest::Approx(5.0));
}

TEST_CASE("singular values") {
  SUBCASE("identity") {
    const auto s = singular_values(DenseMatrix{{1, 0}, {0, 1}});
    REQUIRE(s.size() == 2);
    CHECK(s.values[0] == doctest::Approx(1.0));
    CHECK(s.values[1] == doctest::Approx(1.0));
  }
  SUBCASE("diagonal sorted descending") {
    const auto s = singular_values(DenseMatrix{{3, 0}, {0, 4}});
    CHECK(s.values[0] == doctest::Approx(4.0));
    CHECK(s.values[1] == doctest::Approx(3.0));
  }
  SUBCASE("rank one outer product") {
    Eigen::VectorXd u(4), v(3);
    u << 1, -2, 0.5, 3;
    v << 2, 1, -1;
    const auto s = singular_values(DenseMatrix(MatrixXd(u * v.transpose())));
    REQUIRE(s.size() == 3);
    CHECK(s.values[0] == doctest::Approx(u.norm() * v.norm()).epsilon(1e-12));
    CHECK(s.values[1] < 1e-12 * s.values[0]);
    CHECK(s.numerical_rank() == 1);
  }
  SUBCASE("energy equals squared Frobenius norm on random 20x8") {
    for (unsigned seed = 0; seed < 20; ++seed) {
      const auto x = testing::random_matrix(20, 8, seed);
      const auto s = singular_values(x);
      REQUIRE(s.size() == 8);
      double energy = 0.0;
      for (double v : s.values) energy += v * v;
      const double f2 = x.eigen().squaredNorm();
      CHECK(std::abs(energy - f2) <= 1e-9 * f2);
    }
  }
  SUBCASE("matches eigenvalues of the Gram matrix") {
    const auto x = testing::random_matrix(9, 5, 77);
    const auto s = singular_values(x);
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(x.eigen().transpose() * x.eigen());
    auto ev = eig.eigenvalues();  // ascending
    for (Index i = 0; i < 5; ++i)
      CHECK(s.values[static_cast<std::size_t>(i)] ==
            doctest::Approx(std::sqrt(std::max(0.0, ev(4 - i)))).epsilon(1e-9));
  }
  SUBCASE("length is min(rows, cols) for wide input") {
    CHECK(singular_values(testing::random_matrix(3, 7, 5)).size() == 3);
  }
}

TEST_CASE("approximate rank") {
  CHECK(approximate_rank({{4, 3, 0}}, 0.8) == 1);
  CHECK(approximate_rank({{1}}, 1.0) == 1);
  CHECK(approximate_rank({{4, 3, 0}}, 0.81) == 2);
  CHECK(approximate_rank({{0, 0}}, 0.5) == 0);
  CHECK(approximate_rank(singular_values(DenseMatrix(4, 3)), 0.9) == 0);

  CHECK_THROWS_AS(approximate_rank({{1, 1}}, 0.0), ParameterError);
  CHECK_THROWS_AS(approximate_rank({{1, 1}}, 1.5), ParameterError);
  CHECK_THROWS_AS(approximate_rank({{1, 1}}, -0.1), ParameterError);
  CHECK_THROWS_AS(approximate_rank({}, 0.9), ParameterError);

  SUBCASE("nondecreasing in beta") {
    for (unsigned seed = 0; seed < 20; ++seed) {
      const auto s = singular_values(testing::random_matrix(12, 6, seed));
      int prev = 0;
      for (int k = 1; k <= 100; ++k) {
        const int r = approximate_rank(s, k / 100.0);
        CHECK(r >= prev);
        prev = r;
      }
    }
  }
  SUBCASE("beta = 1 counts nonzero singular values") {
    Eigen::MatrixXd u = testing::random_matrix(10, 3, 8).eigen();
    Eigen::MatrixXd v = testing::random_matrix(3, 6, 9).eigen();
    const auto s = singular_values(DenseMatrix(MatrixXd(u * v)));
    CHECK(approximate_rank(s, 1.0) == 3);
    CHECK(s.numerical_rank() == 3);
  }
}

TEST_CASE("MAE over missing entries") {
  const DenseMatrix truth{{1.5, 9.0}, {2.5, 7.0}};
  const MaskMatrix mask{{0, 1}, {0, 1}};
  CHECK(mae_missing(truth, truth, mask) == 0.0);
  CHECK(mae_missing(DenseMatrix{{1.0, 9.0}, {2.0, 7.0}}, truth, mask) == doctest::Approx(0.5));
  CHECK_THROWS_AS(mae_missing(truth, truth, MaskMatrix(2, 2, 1)), UndefinedMetricError);
  CHECK_THROWS_AS(mae_missing(truth, DenseMatrix(2, 3), MaskMatrix(2, 2, 0)), ShapeError);

  SUBCASE("independent of estimates at observed positions") {
    const auto x = testing::random_matrix(15, 6, 21);
    const auto est = testing::random_matrix(15, 6, 22);
    const auto m = testing::random_mask(15, 6, 0.7, 23);
    MatrixXd other = est.eigen();
    for (Index c = 0; c < 6; ++c)
      for (Index r = 0; r < 15; ++r)
        if (m.observed(r, c)) other(r, c) += 100.0 * (r + 1);
    CHECK(mae_missing(est, x, m) == mae_missing(DenseMatrix(other), x, m));

    double sum = 0.0;
    int count = 0;
    for (Index c = 0; c < 6; ++c)
      for (Index r = 0; r < 15; ++r)
        if (!m.observed(r, c)) {
          sum += std::abs(est(r, c) - x(r, c));
          ++count;
        }
    CHECK(mae_missing(est, x, m) == doctest::Approx(sum / count).epsilon(1e-14));
  }
}
