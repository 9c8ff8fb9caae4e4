#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace syncact::analysis {

struct MetricBundle {
  double mae = 0.0;
  double mse = 0.0;
  double rmse = 0.0;
  double dtw = 0.0;
  double pcc = 0.0;
};

// Elementwise errors, DTW cost and PCC of two equal-length series (≥ 3).
// Callers pass z-normalized series so errors are comparable across neurons.
MetricBundle pair_metrics(std::span<const double> x, std::span<const double> y);

// Unconstrained DTW: local cost |x_i − y_j|, steps (1,0), (0,1), (1,1).
double dtw(std::span<const double> x, std::span<const double> y);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct RegressionFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double p_value = 1.0;  // two-sided t-test on the slope, n − 2 df
  std::size_t n = 0;
};

RegressionFit ols_fit(std::span<const Point> points);

std::string regression_json(const RegressionFit& fit);
// x,y,fitted for each input point (input order).
std::string regression_plot_csv(const RegressionFit& fit, std::span<const Point> points);

struct VariantMetrics {
  std::string variant;
  std::vector<MetricBundle> bundles;
};

struct AblationRow {
  std::string variant;
  MetricBundle mean;
  // Per metric (MAE, MSE, RMSE, DTW, PCC): 1 = best, 2 = second best, 0 = neither.
  std::array<int, 5> rank{};
};

// Per-variant means; lower is better for MAE/MSE/RMSE/DTW, higher for PCC.
std::vector<AblationRow> ablation_report(std::span<const VariantMetrics> variants);

std::string ablation_csv(std::span<const AblationRow> rows);
// Values to 4 decimals, best marked (1) and second best (2).
std::string ablation_table(std::span<const AblationRow> rows);

}  // namespace syncact::analysis
