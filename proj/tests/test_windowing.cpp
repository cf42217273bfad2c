#include <doctest.h>

#include "graphseg/rng.hpp"
#include "graphseg/windowing.hpp"

using namespace graphseg;

namespace {

MultivariateSeries random_series(std::uint64_t seed, Index n, Index d) {
  Rng rng(seed);
  MultivariateSeries series;
  series.values.resize(n, d);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < d; ++c) series.values(r, c) = rng.normal();
  }
  for (Index c = 0; c < d; ++c) series.names.push_back("v" + std::to_string(c));
  return series;
}

} // namespace

TEST_CASE("make_windows counts and starts") {
  SUBCASE("exact cover") {
    const auto batch = make_windows(random_series(1, 1000, 2), 100, 100);
    REQUIRE(batch.batches() == 10);
    CHECK(batch.starts.front() == 0);
    CHECK(batch.starts.back() == 900);
    for (Index b = 0; b < 10; ++b) CHECK(batch.starts[b] == b * 100);
  }
  SUBCASE("single full window") {
    CHECK(make_windows(random_series(2, 1000, 2), 1000, 100).batches() == 1);
  }
  SUBCASE("trailing samples are dropped") {
    const auto batch = make_windows(random_series(3, 999, 2), 100, 100);
    CHECK(batch.batches() == 9);
    CHECK(batch.starts.back() == 800);
  }
  SUBCASE("bad geometry is rejected") {
    CHECK_THROWS_AS(make_windows(random_series(4, 50, 2), 100, 10),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_windows(random_series(5, 50, 2), 10, 0),
                    std::invalid_argument);
  }
}

TEST_CASE("perfectly dependent variables correlate to 1") {
  MultivariateSeries series;
  series.values.resize(64, 2);
  Rng rng(11);
  for (Index r = 0; r < 64; ++r) {
    series.values(r, 0) = rng.normal();
    series.values(r, 1) = 2.0 * series.values(r, 0);
  }
  const auto correlations =
      window_correlation(make_windows(series, 64, 64));
  REQUIRE(correlations.batches() == 1);
  CHECK(correlations.matrices[0](0, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(correlations.matrices[0](0, 0) == 1.0);
}

TEST_CASE("independent draws decorrelate for large windows") {
  // sampling oracle: with M = 10000 independent draws the sample
  // correlation concentrates well inside +-0.05
  const auto correlations =
      window_correlation(make_windows(random_series(21, 10000, 2), 10000, 10000));
  CHECK(std::abs(correlations.matrices[0](0, 1)) < 0.05);
}

TEST_CASE("constant columns get zeroed correlations and a unit diagonal") {
  MultivariateSeries series = random_series(31, 128, 3);
  series.values.col(1).setConstant(4.2);
  const auto correlations = window_correlation(make_windows(series, 128, 128));
  const Matrix& s = correlations.matrices[0];
  CHECK(s(0, 1) == 0.0);
  CHECK(s(1, 0) == 0.0);
  CHECK(s(1, 2) == 0.0);
  CHECK(s(2, 1) == 0.0);
  CHECK(s(1, 1) == 1.0);
  CHECK(s == s.transpose());
}

TEST_CASE("correlations are invariant to positive affine rescaling") {
  MultivariateSeries series = random_series(41, 300, 3);
  const auto base = window_correlation(make_windows(series, 100, 100));

  MultivariateSeries scaled = series;
  Rng rng(42);
  for (Index c = 0; c < 3; ++c) {
    const double a = 0.1 + 5.0 * rng.uniform01();
    const double b = rng.uniform(-10.0, 10.0);
    scaled.values.col(c) = (a * scaled.values.col(c)).array() + b;
  }
  const auto rescaled = window_correlation(make_windows(scaled, 100, 100));
  for (std::size_t b = 0; b < base.matrices.size(); ++b) {
    CHECK((base.matrices[b] - rescaled.matrices[b]).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("correlation matrices are positive semidefinite") {
  const auto correlations =
      window_correlation(make_windows(random_series(51, 400, 4), 50, 25));
  for (const Matrix& s : correlations.matrices) {
    Eigen::SelfAdjointEigenSolver<Matrix> eigen(s);
    CHECK(eigen.eigenvalues().minCoeff() >= -1e-8);
  }
}

TEST_CASE("windowing two halves equals windowing the concatenation") {
  const MultivariateSeries whole = random_series(61, 600, 2);
  MultivariateSeries first, second;
  first.values = whole.values.topRows(300);
  second.values = whole.values.bottomRows(300);

  const auto all = window_correlation(make_windows(whole, 100, 100));
  const auto head = window_correlation(make_windows(first, 100, 100));
  const auto tail = window_correlation(make_windows(second, 100, 100));
  REQUIRE(all.batches() == head.batches() + tail.batches());
  for (Index b = 0; b < head.batches(); ++b) {
    CHECK(all.matrices[b] == head.matrices[b]);
  }
  for (Index b = 0; b < tail.batches(); ++b) {
    CHECK(all.matrices[head.batches() + b] == tail.matrices[b]);
  }
}

TEST_CASE("raw covariance mode keeps variances on the diagonal") {
  MultivariateSeries series = random_series(71, 200, 2);
  series.values.col(1) *= 3.0;
  const auto covariance = window_correlation(make_windows(series, 200, 200), 1e-8,
                                             SolverInput::RawCovariance);
  const Matrix& s = covariance.matrices[0];
  CHECK(s(1, 1) > 4.0 * s(0, 0));  // scaling survives in raw mode
  CHECK(s == s.transpose());
}
