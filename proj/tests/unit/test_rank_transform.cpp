#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "support/test_support.hpp"
#include "telag/estimator_core.hpp"

using namespace telag;

namespace {

std::vector<double> ranks_of(const std::vector<double>& column) {
  const auto u = empirical_copula_transform(SampleMatrix::from_column(column));
  return u.matrix().column(0);
}

}  // namespace

TEST_CASE("ranks of a strictly increasing column") {
  REQUIRE(ranks_of({1, 2, 3, 4}) == std::vector<double>{0.25, 0.50, 0.75, 1.00});
}

TEST_CASE("a single observation ranks to one") {
  REQUIRE(ranks_of({3.0}) == std::vector<double>{1.0});
}

TEST_CASE("ties share the weak-inequality rank") {
  REQUIRE(ranks_of({2, 2, 5}) == std::vector<double>{2.0 / 3.0, 2.0 / 3.0, 1.0});
}

TEST_CASE("non-finite input is rejected naming the cell") {
  SampleMatrix m(3, 2);
  m(2, 1) = std::numeric_limits<double>::quiet_NaN();
  REQUIRE_THROWS_MATCHES(empirical_copula_transform(m), InvalidInputError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("row 2, column 1")));
}

TEST_CASE("ranks are exactly invariant under strictly increasing transforms") {
  const auto base = ts::gaussian_series(11, 300);
  const auto expected = ranks_of(base);

  std::vector<double> expd(base.size()), cubed(base.size()), affine(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    expd[i] = std::exp(base[i]);
    cubed[i] = base[i] * base[i] * base[i];
    affine[i] = 2.5 * base[i] + 7.0;
  }
  REQUIRE(ranks_of(expd) == expected);
  REQUIRE(ranks_of(cubed) == expected);
  REQUIRE(ranks_of(affine) == expected);
}

TEST_CASE("permuting rows permutes ranks identically") {
  auto values = ts::gaussian_series(5, 200);
  values[10] = values[20];  // include a tie
  const auto ranks = ranks_of(values);

  std::vector<std::size_t> perm(values.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = (i * 37 + 11) % perm.size();
  std::vector<double> shuffled(values.size());
  for (std::size_t i = 0; i < perm.size(); ++i) shuffled[i] = values[perm[i]];

  const auto shuffled_ranks = ranks_of(shuffled);
  for (std::size_t i = 0; i < perm.size(); ++i) REQUIRE(shuffled_ranks[i] == ranks[perm[i]]);
}

TEST_CASE("every column of a tie-free sample is a permutation of the rank grid") {
  const std::size_t n = 157;
  SampleMatrix m(n, 2);
  const auto a = ts::gaussian_series(3, n, 0.0, 1.0, 0);
  const auto b = ts::gaussian_series(3, n, 0.0, 1.0, 1);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, 0) = a[i];
    m(i, 1) = b[i];
  }
  const auto u = empirical_copula_transform(m);
  for (std::size_t c = 0; c < 2; ++c) {
    auto col = u.matrix().column(c);
    std::sort(col.begin(), col.end());
    for (std::size_t i = 0; i < n; ++i)
      REQUIRE(col[i] == static_cast<double>(i + 1) / static_cast<double>(n));
  }
}
