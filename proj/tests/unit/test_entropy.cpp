#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "support/test_support.hpp"
#include "telag/estimator_core.hpp"

using namespace telag;

namespace {

constexpr double kGaussianEntropy = 1.4189385332046727;  // 0.5 * ln(2 pi e)

double entropy_of(const std::vector<double>& series) {
  return knn_entropy(SampleMatrix::from_column(series), EstimatorConfig{});
}

}  // namespace

TEST_CASE("standard gaussian entropy matches the analytic value") {
  REQUIRE_THAT(entropy_of(ts::gaussian_series(1, 2000)),
               Catch::Matchers::WithinAbs(kGaussianEntropy, 0.05));
}

TEST_CASE("uniform [0,1) entropy is near zero") {
  REQUIRE_THAT(entropy_of(ts::uniform_series(2, 2000)), Catch::Matchers::WithinAbs(0.0, 0.05));
}

TEST_CASE("entropy needs more observations than neighbors") {
  const std::vector<double> three{1.0, 2.0, 3.0};
  REQUIRE_THROWS_AS(entropy_of(three), InsufficientSampleError);
}

TEST_CASE("all-identical observations are degenerate") {
  const std::vector<double> flat(50, 4.2);
  REQUIRE_THROWS_AS(entropy_of(flat), DegenerateSampleError);
}

TEST_CASE("duplicate points are clamped and reported in diagnostics") {
  auto series = ts::gaussian_series(3, 64);
  series[1] = series[0];
  series[2] = series[0];
  series[3] = series[0];  // four copies: the 3rd neighbor of each sits at distance 0
  EntropyDiagnostics diag;
  const double h = knn_entropy(SampleMatrix::from_column(series), EstimatorConfig{}, &diag);
  REQUIRE(std::isfinite(h));
  REQUIRE(diag.clamped_distances == 4);
}

TEST_CASE("entropy is invariant under permutation and translation") {
  const auto base = ts::gaussian_series(4, 500);
  const double h = entropy_of(base);

  // translating the raw coordinates rounds them, so distances move in the
  // last ulps; the invariance holds to near machine precision
  std::vector<double> shifted(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) shifted[i] = base[i] + 1234.5;
  REQUIRE_THAT(entropy_of(shifted), Catch::Matchers::WithinAbs(h, 1e-9));

  std::vector<double> permuted(base.size());
  for (std::size_t i = 0; i < base.size(); ++i)
    permuted[i] = base[(i * 101 + 17) % base.size()];
  REQUIRE(entropy_of(permuted) == h);
}

TEST_CASE("euclidean unit-ball volume reduces to the max norm in one dimension") {
  REQUIRE_THAT(log_unit_ball_volume(Norm::euclidean, 1), Catch::Matchers::WithinAbs(0.0, 1e-15));
  REQUIRE(log_unit_ball_volume(Norm::chebyshev, 7) == 0.0);
  // d = 2: pi / (4 * Gamma(2)) = pi / 4
  REQUIRE_THAT(log_unit_ball_volume(Norm::euclidean, 2),
               Catch::Matchers::WithinAbs(std::log(M_PI / 4.0), 1e-12));
}

TEST_CASE("euclidean and chebyshev entropies agree in one dimension") {
  const auto series = ts::gaussian_series(5, 800);
  EstimatorConfig cheb;
  EstimatorConfig eucl;
  eucl.norm = Norm::euclidean;
  const auto m = SampleMatrix::from_column(series);
  REQUIRE_THAT(knn_entropy(m, cheb), Catch::Matchers::WithinAbs(knn_entropy(m, eucl), 1e-9));
}
