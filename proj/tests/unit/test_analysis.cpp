#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "support.hpp"
#include "syncact/analysis.hpp"
#include "syncact/embedding.hpp"
#include "syncact/errors.hpp"
#include "syncact/matching.hpp"

using namespace syncact;
using namespace syncact::analysis;

TEST_SUITE("pair metrics") {
  TEST_CASE("identical series") {
    const std::vector<double> x{0.3, -1.2, 2.0, 0.7};
    const auto b = pair_metrics(x, x);
    CHECK(b.mae == 0.0);
    CHECK(b.mse == 0.0);
    CHECK(b.rmse == 0.0);
    CHECK(b.dtw == 0.0);
    CHECK(b.pcc == doctest::Approx(1.0));
  }

  TEST_CASE("constant offset") {
    const auto b = pair_metrics(std::vector<double>{0, 0, 0}, std::vector<double>{1, 1, 1});
    CHECK(b.mae == 1.0);
    CHECK(b.mse == 1.0);
    CHECK(b.rmse == 1.0);
    CHECK(std::isnan(b.pcc));
  }

  TEST_CASE("random length-10 pairs against straight-line oracles") {
    Rng rng(1);
    for (int trial = 0; trial < 100; ++trial) {
      const auto x = testing::random_series(rng, 10);
      const auto y = testing::random_series(rng, 10);
      double mae = 0, mse = 0;
      for (int i = 0; i < 10; ++i) {
        mae += std::fabs(x[i] - y[i]) / 10;
        mse += (x[i] - y[i]) * (x[i] - y[i]) / 10;
      }
      const auto b = pair_metrics(x, y);
      CHECK(std::fabs(b.mae - mae) < 1e-12);
      CHECK(std::fabs(b.mse - mse) < 1e-12);
      CHECK(std::fabs(b.rmse * b.rmse - b.mse) < 1e-12);
      CHECK(std::fabs(b.dtw - oracle::dtw(x, y)) < 1e-12);
      CHECK(std::fabs(b.pcc - oracle::pearson(x, y)) < 1e-12);
    }
  }

  TEST_CASE("z-normalized series satisfy mse = 2(1 - pcc)") {
    Rng rng(2);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 3 + rng.below(100);
      const Matrix z = embedding::znormalize(rng.normal_matrix(n, 2)).values;
      const auto b = pair_metrics(z.column(0), z.column(1));
      CHECK(std::fabs(b.mse - 2 * (1 - b.pcc)) < 1e-12);
    }
  }

  TEST_CASE("the ablation table of the paper satisfies the same identity") {
    // MSE and PCC means for LT, LT+LSTM and LT+MSA, as printed to 4 decimals.
    const double mse[] = {1.5309, 1.4411, 1.5136};
    const double pcc[] = {0.2346, 0.2794, 0.2432};
    for (int i = 0; i < 3; ++i) CHECK(std::fabs(mse[i] - 2 * (1 - pcc[i])) <= 1.5e-4);
  }

  TEST_CASE("length checks") {
    CHECK_THROWS_AS(pair_metrics(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2}), InputError);
    CHECK_THROWS_AS(pair_metrics(std::vector<double>{1, 2}, std::vector<double>{1, 2}), InputError);
  }
}

TEST_SUITE("dtw") {
  TEST_CASE("examples") {
    CHECK(dtw(std::vector<double>{0, 1}, std::vector<double>{0, 1, 1}) == 0.0);
    CHECK(dtw(std::vector<double>{0, 2}, std::vector<double>{1}) == 2.0);
    CHECK(dtw(std::vector<double>{4}, std::vector<double>{4}) == 0.0);
    CHECK_THROWS_AS(dtw(std::vector<double>{}, std::vector<double>{1}), InputError);
  }

  TEST_CASE("equals the exhaustive recursion, symmetric, nonnegative") {
    Rng rng(3);
    for (int trial = 0; trial < 300; ++trial) {
      const auto x = testing::random_series(rng, 1 + rng.below(6));
      const auto y = testing::random_series(rng, 1 + rng.below(6));
      const double d = dtw(x, y);
      CHECK(std::fabs(d - oracle::dtw(x, y)) < 1e-12);
      CHECK(d == dtw(y, x));
      CHECK(d >= 0.0);
      CHECK(dtw(x, x) == 0.0);
    }
  }

  TEST_CASE("zero exactly when a stretched copy") {
    const std::vector<double> x{1, 2, 3};
    CHECK(dtw(x, std::vector<double>{1, 1, 2, 3, 3, 3}) == 0.0);
    CHECK(dtw(x, std::vector<double>{1, 2, 2, 3.5}) > 0.0);
  }
}

TEST_SUITE("regression") {
  std::vector<Point> points(std::vector<double> x, std::vector<double> y) {
    std::vector<Point> out;
    for (std::size_t i = 0; i < x.size(); ++i) out.push_back({x[i], y[i]});
    return out;
  }

  TEST_CASE("exact line") {
    const auto fit = ols_fit(points({0, 1, 2}, {0, 1, 2}));
    CHECK(fit.slope == doctest::Approx(1.0));
    CHECK(fit.intercept == doctest::Approx(0.0));
    CHECK(fit.r2 == 1.0);
    CHECK(fit.p_value == 0.0);
    CHECK(fit.n == 3);
  }

  TEST_CASE("hand computed fit") {
    const auto fit = ols_fit(points({0, 1, 2}, {0, 2, 1}));
    CHECK(fit.slope == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(fit.intercept == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(fit.r2 == doctest::Approx(0.25).epsilon(1e-14));
  }

  TEST_CASE("normal equations and the correlation test agree") {
    Rng rng(4);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 3 + rng.below(20);
      const auto x = testing::random_series(rng, n);
      auto y = testing::random_series(rng, n);
      const double slope = rng.uniform(-2, 2);
      for (std::size_t i = 0; i < n; ++i) y[i] += slope * x[i];
      const auto fit = ols_fit(points(x, y));
      const auto ref = oracle::ols(x, y);
      CHECK(std::fabs(fit.slope - ref.slope) < 1e-10);
      CHECK(std::fabs(fit.intercept - ref.intercept) < 1e-10);
      CHECK(std::fabs(fit.r2 - ref.r2) < 1e-10);
      const double r = oracle::pearson(x, y);
      CHECK(std::fabs(fit.r2 - r * r) < 1e-10);
      CHECK(std::fabs(fit.p_value - matching::pearson_pvalue(r, n)) < 1e-10);
    }
  }

  TEST_CASE("points on a line have r2 = 1 and tiny residuals") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
      const double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3);
      std::vector<Point> pts;
      for (int i = 0; i < 8; ++i) {
        const double x = rng.uniform(-5, 5);
        pts.push_back({x, a * x + b});
      }
      const auto fit = ols_fit(pts);
      CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-10));
      for (const auto& p : pts) CHECK(std::fabs(p.y - fit.intercept - fit.slope * p.x) < 1e-10);
    }
  }

  TEST_CASE("linear model with small noise is significant") {
    Rng rng(6);
    std::vector<Point> pts;
    for (int i = 0; i < 10; ++i) {
      const double pcc = rng.uniform(0.22, 0.32);
      pts.push_back({pcc, 20.0 + 200.0 * pcc + rng.normal() * 1.0});
    }
    const auto fit = ols_fit(pts);
    CHECK(fit.r2 > 0.7);
    CHECK(fit.p_value < 0.05);
  }

  TEST_CASE("degenerate inputs") {
    CHECK_THROWS_AS(ols_fit(points({1, 1, 1}, {1, 2, 3})), InputError);
    CHECK_THROWS_AS(ols_fit(points({1, 2}, {1, 2})), InputError);
    const auto flat = ols_fit(points({1, 2, 3}, {4, 4, 4}));
    CHECK(flat.slope == 0.0);
    CHECK(flat.r2 == 0.0);
    CHECK(flat.p_value == 1.0);
  }

  TEST_CASE("json and plot data") {
    const auto pts = points({0, 1, 2}, {0, 2, 1});
    const auto fit = ols_fit(pts);
    const auto j = nlohmann::json::parse(regression_json(fit));
    CHECK(j["slope"].get<double>() == doctest::Approx(0.5));
    CHECK(j.contains("intercept"));
    CHECK(j.contains("r2"));
    CHECK(j.contains("p_value"));
    CHECK(j["n"] == 3);
    CHECK(regression_plot_csv(fit, pts) == "x,y,fitted\n0,0,0.5\n1,2,1\n2,1,1.5\n");
  }
}

TEST_SUITE("ablation") {
  MetricBundle bundle(double base) { return {base, base + 1, std::sqrt(base + 1), base * 10, 1 - base}; }

  TEST_CASE("single bundle row equals the bundle") {
    const std::vector<VariantMetrics> v{{"LT", {bundle(0.3)}}};
    const auto rows = ablation_report(v);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].mean.mae == 0.3);
    CHECK(rows[0].mean.dtw == 3.0);
    CHECK(rows[0].rank == std::array<int, 5>{0, 0, 0, 0, 0});
  }

  TEST_CASE("two bundles average per field") {
    const std::vector<VariantMetrics> v{{"LT", {bundle(0.2), bundle(0.6)}}};
    const auto row = ablation_report(v)[0];
    CHECK(row.mean.mae == doctest::Approx(0.4));
    CHECK(row.mean.mse == doctest::Approx(1.4));
    CHECK(row.mean.rmse == doctest::Approx((std::sqrt(1.2) + std::sqrt(1.6)) / 2));
    CHECK(row.mean.pcc == doctest::Approx(0.6));
  }

  TEST_CASE("best and second best marks follow a manual ranking") {
    // Means of the paper's ablation table.
    const std::vector<VariantMetrics> v{
        {"a) LT", {{0.9781, 1.5309, 1.2360, 18.0688, 0.2346}}},
        {"b) LT+LSTM", {{0.9392, 1.4411, 1.1986, 18.4683, 0.2794}}},
        {"c) LT+MSA", {{0.9658, 1.5136, 1.2289, 18.7328, 0.2432}}},
    };
    const auto rows = ablation_report(v);
    CHECK(rows[0].rank == std::array<int, 5>{0, 0, 0, 1, 0});
    CHECK(rows[1].rank == std::array<int, 5>{1, 1, 1, 2, 1});
    CHECK(rows[2].rank == std::array<int, 5>{2, 2, 2, 0, 2});
    const std::string table = ablation_table(rows);
    CHECK(table.find("Methods") == 0);
    CHECK(table.find("MAE↓") != std::string::npos);
    CHECK(table.find("PCC↑") != std::string::npos);
    CHECK(table.find("18.0688 (1)") != std::string::npos);
    CHECK(table.find("0.2794 (1)") != std::string::npos);
    CHECK(table.find("0.2432 (2)") != std::string::npos);
    CHECK(table.find("18.7328  ") != std::string::npos);
    const std::string csv = ablation_csv(rows);
    CHECK(csv.find("variant,mae,mse,rmse,dtw,pcc") == 0);
    CHECK(csv.find("b) LT+LSTM,0.9392,1.4411,1.1986,18.4683,0.2794,1,1,1,2,1") != std::string::npos);
  }

  TEST_CASE("empty variant is rejected") {
    const std::vector<VariantMetrics> v{{"LT", {}}};
    CHECK_THROWS_AS(ablation_report(v), InputError);
  }
}
