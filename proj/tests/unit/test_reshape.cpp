#include <random>
#include <vector>

#include "doctest.h"
#include "pmu/ccrm.hpp"
#include "pmu/error.hpp"
#include "support.hpp"

using namespace pmu;

namespace {

// Largest divisor d of n1 with n1/d >= n2, by enumeration.
Index cut_factor_oracle(Index n1, Index n2) {
  Index best = 1;
  for (Index d = 1; d <= n1; ++d)
    if (n1 % d == 0 && n1 / d >= n2) best = d;
  return best;
}

// The 6x2 example with row 5 missing, entries m_rc = 10 r + c (1-based).
ObservedMatrix six_by_two() {
  DenseMatrix m(6, 2);
  MaskMatrix mask(6, 2, 1);
  for (Index r = 0; r < 6; ++r)
    for (Index c = 0; c < 2; ++c) m(r, c) = 10.0 * (r + 1) + (c + 1);
  mask.set(4, 0, false);
  mask.set(4, 1, false);
  return ObservedMatrix(m, mask);
}

}  // namespace

TEST_CASE("cut factor selection") {
  CHECK(select_cut_factor(1800, 86) == 20);
  CHECK(select_cut_factor(6, 2) == 3);
  CHECK(select_cut_factor(10, 3) == 2);
  CHECK(select_cut_factor(5, 7) == 1);
  CHECK(select_cut_factor(1, 1) == 1);

  SUBCASE("matches enumeration") {
    for (Index n1 = 1; n1 <= 120; ++n1)
      for (Index n2 = 1; n2 <= 40; ++n2) {
        const Index k = select_cut_factor(n1, n2);
        CHECK(n1 % k == 0);
        CHECK(k == cut_factor_oracle(n1, n2));
        if (k > 1) CHECK(n1 / k >= n2);
      }
  }
}

TEST_CASE("plan construction") {
  const ReshapePlan plan = make_plan(1800, 86, 20);
  CHECK(plan.seg_len == 90);
  CHECK(plan.reshaped_rows() == 90);
  CHECK(plan.reshaped_cols() == 1720);
  CHECK_THROWS_AS(make_plan(10, 2, 3), ParameterError);
  CHECK(make_plan(7, 3, 1).identity());
}

TEST_CASE("the 6x2 example with n* = 3") {
  const auto [reshaped, plan] = ccrm_reshape(six_by_two(), 3);
  CHECK(plan == ReshapePlan{6, 2, 3, 2});
  // Rows [m11 m31 * m12 m32 *] and [m21 m41 m61 m22 m42 m62].
  CHECK(reshaped.values() == DenseMatrix{{11, 31, 0, 12, 32, 0}, {21, 41, 61, 22, 42, 62}});
  CHECK(reshaped.mask() == MaskMatrix{{1, 1, 0, 1, 1, 0}, {1, 1, 1, 1, 1, 1}});
  CHECK(reshaped.mask().first_empty_row() == -1);

  const DenseMatrix full{{11, 31, 51, 12, 32, 52}, {21, 41, 61, 22, 42, 62}};
  const DenseMatrix back = ccrm_inverse(full, plan);
  for (Index r = 0; r < 6; ++r)
    for (Index c = 0; c < 2; ++c) CHECK(back(r, c) == 10.0 * (r + 1) + (c + 1));
}

TEST_CASE("small layouts") {
  const DenseMatrix col{{1}, {2}, {3}, {4}};
  const ReshapePlan plan = make_plan(4, 1, 2);
  CHECK(ccrm_reshape(col, plan) == DenseMatrix{{1, 3}, {2, 4}});
  CHECK(ccrm_inverse(DenseMatrix{{1, 3}, {2, 4}}, plan) == col);

  const auto x = testing::random_matrix(5, 3, 1);
  const ReshapePlan id = make_plan(5, 3, 1);
  CHECK(ccrm_reshape(x, id) == x);
  CHECK(ccrm_inverse(x, id) == x);
  const auto [same, same_plan] = ccrm_reshape(ObservedMatrix(x), 1);
  CHECK(same.values() == x);
  CHECK(same_plan == ReshapePlan{5, 3, 1, 5});
}

TEST_CASE("inverse checks the shape") {
  const ReshapePlan plan = make_plan(6, 2, 3);
  CHECK_THROWS_AS(ccrm_inverse(DenseMatrix(3, 4), plan), ShapeError);
  CHECK_THROWS_AS(ccrm_reshape(DenseMatrix(6, 3), plan), ShapeError);
  CHECK_THROWS_AS(ccrm_reshape(ObservedMatrix(DenseMatrix(6, 2)), 4), ParameterError);
}

TEST_CASE("index map against the 1-based layout rule") {
  // out(i, c) = in((s-1) L + i, ceil(c / n*)), s = ((c-1) mod n*) + 1.
  const auto x = testing::random_matrix(12, 3, 5);
  for (Index k : {1, 2, 3, 4, 6, 12}) {
    const ReshapePlan plan = make_plan(12, 3, k);
    const DenseMatrix out = ccrm_reshape(x, plan);
    const Index len = 12 / k;
    REQUIRE(out.rows() == len);
    REQUIRE(out.cols() == 3 * k);
    for (Index i = 1; i <= len; ++i)
      for (Index c = 1; c <= 3 * k; ++c) {
        const Index j = (c + k - 1) / k;
        const Index s = (c - 1) % k + 1;
        CHECK(out(i - 1, c - 1) == x((s - 1) * len + i - 1, j - 1));
      }
  }
}

TEST_CASE("bijectivity and missing-count preservation on 1000 random shapes") {
  std::mt19937 gen(2024);
  std::uniform_int_distribution<int> dim(1, 24);
  for (int trial = 0; trial < 1000; ++trial) {
    const Index n1 = dim(gen), n2 = dim(gen);
    std::vector<Index> divisors;
    for (Index d = 1; d <= n1; ++d)
      if (n1 % d == 0) divisors.push_back(d);
    const Index k = divisors[static_cast<std::size_t>(gen() % divisors.size())];
    const auto x = testing::random_matrix(n1, n2, static_cast<unsigned>(trial));
    const auto mask = testing::random_mask(n1, n2, 0.7, static_cast<unsigned>(trial) + 5000);
    const ObservedMatrix observed(x, mask);

    const auto [reshaped, plan] = ccrm_reshape(observed, k);
    CHECK(reshaped.mask().missing_count() == mask.missing_count());
    CHECK(ccrm_inverse(reshaped.values(), plan) == observed.values());
    CHECK(ccrm_inverse(reshaped.mask(), plan) == mask);
    CHECK(ccrm_inverse(ccrm_reshape(x, plan), plan) == x);
  }
}

TEST_CASE("empty reshaped column iff an aligned segment is fully missing") {
  std::mt19937 gen(7);
  for (int trial = 0; trial < 300; ++trial) {
    const Index k = 1 + static_cast<Index>(gen() % 4);
    const Index len = 1 + static_cast<Index>(gen() % 4);
    const Index n1 = k * len, n2 = 1 + static_cast<Index>(gen() % 3);
    const auto mask = testing::random_mask(n1, n2, 0.5, static_cast<unsigned>(trial));
    const ReshapePlan plan = make_plan(n1, n2, k);
    const MaskMatrix out = ccrm_reshape(mask, plan);

    bool segment_empty = false;
    for (Index j = 0; j < n2; ++j)
      for (Index s = 0; s < k; ++s) {
        bool all_missing = true;
        for (Index i = 0; i < len; ++i)
          if (mask.observed(s * len + i, j)) all_missing = false;
        segment_empty = segment_empty || all_missing;
      }
    bool column_empty = false;
    for (Index c = 0; c < out.cols(); ++c) {
      bool all_missing = true;
      for (Index i = 0; i < out.rows(); ++i)
        if (out.observed(i, c)) all_missing = false;
      column_empty = column_empty || all_missing;
    }
    CHECK(segment_empty == column_empty);
  }
}

TEST_CASE("1800x86 reshape turns empty rows into partial rows") {
  MaskMatrix mask(1800, 86, 1);
  for (Index c = 0; c < 86; ++c) mask.set(500, c, false);
  const ReshapePlan plan = make_plan(1800, 86, select_cut_factor(1800, 86));
  const MaskMatrix out = ccrm_reshape(mask, plan);
  CHECK(out.rows() == 90);
  CHECK(out.cols() == 1720);
  CHECK(mask.first_empty_row() == 500);
  CHECK(out.first_empty_row() == -1);
  CHECK(out.missing_count() == 86);
}
