#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "syncact/activations.hpp"
#include "syncact/errors.hpp"
#include "syncact/matching.hpp"

using namespace syncact;
using namespace syncact::activations;

namespace {

FeatureMapSequence maps_of(std::vector<std::size_t> shape, std::vector<double> data) {
  return {Tensor(std::move(shape), std::move(data)), "layer", "model"};
}

}  // namespace

TEST_SUITE("filter activations") {
  TEST_CASE("max over a 2x2 map") {
    const auto a = filter_activations(maps_of({1, 1, 2, 2}, {1, 5, 3, 2}));
    CHECK(a.values == Matrix::from_rows({{5}}));
    CHECK_FALSE(a.normalized);
  }

  TEST_CASE("constant maps give constant columns") {
    const auto a = filter_activations(maps_of({3, 2, 2, 2}, std::vector<double>(24, 1.5)));
    CHECK(a.values == Matrix(3, 2, 1.5));
  }

  TEST_CASE("exhaustive scan oracle and shift property") {
    Rng rng(1);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t t = 1 + rng.below(4), c = 1 + rng.below(4), h = 1 + rng.below(5), w = 1 + rng.below(5);
      Tensor maps({t, c, h, w});
      for (double& v : maps.data) v = rng.normal();
      const auto a = filter_activations({maps, "", ""});
      for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t k = 0; k < c; ++k) {
          double best = -INFINITY;
          for (std::size_t y = 0; y < h; ++y)
            for (std::size_t x = 0; x < w; ++x) best = std::max(best, maps.data[((i * c + k) * h + y) * w + x]);
          CHECK(a.values(i, k) == best);
        }
      }
      const double shift = rng.uniform(0.5, 4.0);
      Tensor moved = maps;
      for (double& v : moved.data) v += shift;
      const auto b = filter_activations({moved, "", ""});
      CHECK(max_abs_diff(b.values, a.values + Matrix(t, c, shift)) < 1e-12);
    }
  }

  TEST_CASE("rank must be four") {
    CHECK_THROWS_AS(filter_activations(maps_of({2, 2}, {1, 2, 3, 4})), ShapeError);
  }
}

TEST_SUITE("align") {
  TEST_CASE("zero lag only z-normalizes") {
    Rng rng(2);
    const Matrix a = rng.normal_matrix(12, 3) * 4.0;
    const Matrix l = rng.normal_matrix(12, 2);
    const auto out = align({a, false, 0}, {l}, 0);
    CHECK(out.filters.values.rows() == 12);
    CHECK(out.fbns.values.rows() == 12);
    CHECK(out.filters.normalized);
    CHECK(max_abs_diff(out.filters.values, embedding::znormalize(a).values) < 1e-12);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        CHECK(std::fabs(matching::pearson(out.filters.values.column(i), out.fbns.values.column(j)) -
                        matching::pearson(a.column(i), l.column(j))) < 1e-12);
      }
    }
  }

  TEST_CASE("lag two on ten samples") {
    Matrix a(10, 1), l(10, 1);
    for (std::size_t i = 0; i < 10; ++i) {
      a(i, 0) = double(i * i);
      l(i, 0) = double(i) * 3.0 + 1.0;
    }
    const auto out = align({a, false, 0}, {l}, 2);
    CHECK(out.filters.values.rows() == 8);
    CHECK(out.fbns.values.rows() == 8);
    CHECK(out.filters.lag == 2);
    CHECK(max_abs_diff(out.filters.values, embedding::znormalize(a.row_slice(0, 8)).values) < 1e-12);
    CHECK(max_abs_diff(out.fbns.values, embedding::znormalize(l.row_slice(2, 8)).values) < 1e-12);
  }

  TEST_CASE("negative lag shifts the other way") {
    Rng rng(3);
    const Matrix a = rng.normal_matrix(9, 2);
    const Matrix l = rng.normal_matrix(9, 2);
    const auto out = align({a, false, 0}, {l}, -3);
    CHECK(max_abs_diff(out.filters.values, embedding::znormalize(a.row_slice(3, 6)).values) < 1e-12);
    CHECK(max_abs_diff(out.fbns.values, embedding::znormalize(l.row_slice(0, 6)).values) < 1e-12);
  }

  TEST_CASE("delayed copy is recovered with the matching lag") {
    Rng rng(4);
    const std::size_t t = 80;
    Matrix a(t, 1), l(t, 1);
    for (std::size_t i = 0; i < t; ++i) a(i, 0) = rng.normal();
    for (std::size_t i = 1; i < t; ++i) l(i, 0) = a(i - 1, 0);
    l(0, 0) = rng.normal();
    const auto lag0 = align({a, false, 0}, {l}, 0);
    const auto lag1 = align({a, false, 0}, {l}, 1);
    const double r0 = matching::pearson(lag0.filters.values.column(0), lag0.fbns.values.column(0));
    const double r1 = matching::pearson(lag1.filters.values.column(0), lag1.fbns.values.column(0));
    CHECK(r1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(r0) < 0.5);
  }

  TEST_CASE("different lengths truncate to the overlap") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t t1 = 3 + rng.below(20), t2 = 3 + rng.below(20);
      const int max_lag = int(std::min(t1, t2)) - 1;
      const int lag = int(rng.below(2 * max_lag + 1)) - max_lag;
      if (std::min(t1, t2) - std::size_t(std::abs(lag)) < 2) continue;
      const auto out = align({rng.normal_matrix(t1, 2), false, 0}, {rng.normal_matrix(t2, 3)}, lag);
      CHECK(out.filters.values.rows() == out.fbns.values.rows());
    }
  }

  TEST_CASE("lag too large") {
    CHECK_THROWS_AS(align({Matrix(5, 1), false, 0}, {Matrix(6, 1)}, 5), InputError);
    CHECK_THROWS_AS(align({Matrix(5, 1), false, 0}, {Matrix(6, 1)}, -7), InputError);
  }
}
