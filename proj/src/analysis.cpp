#include "syncact/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>
#include <json.hpp>

#include "syncact/errors.hpp"
#include "syncact/matching.hpp"
#include "syncact/special.hpp"
#include "syncact/text.hpp"

namespace syncact::analysis {

double dtw(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw InputError("DTW of an empty series");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // Two rolling rows of the (|x|+1) × (|y|+1) cumulative cost table.
  std::vector<double> prev(y.size() + 1, kInf);
  std::vector<double> cur(y.size() + 1, kInf);
  prev[0] = 0.0;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    cur[0] = kInf;
    for (std::size_t j = 1; j <= y.size(); ++j) {
      cur[j] = std::abs(x[i - 1] - y[j - 1]) + std::min({prev[j - 1], prev[j], cur[j - 1]});
    }
    std::swap(prev, cur);
  }
  return prev[y.size()];
}

MetricBundle pair_metrics(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw InputError("series lengths differ (" + std::to_string(x.size()) + " vs " +
                     std::to_string(y.size()) + ")");
  }
  if (x.size() < 3) throw InputError("pair metrics need at least 3 samples");
  MetricBundle b;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    b.mae += std::abs(d);
    b.mse += d * d;
  }
  b.mae /= double(x.size());
  b.mse /= double(x.size());
  b.rmse = std::sqrt(b.mse);
  b.dtw = dtw(x, y);
  b.pcc = matching::pearson(x, y);
  return b;
}

RegressionFit ols_fit(std::span<const Point> points) {
  if (points.size() < 3) throw InputError("regression needs at least 3 points");
  const double n = double(points.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& p : points) {
    mx += p.x;
    my += p.y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& p : points) {
    sxx += (p.x - mx) * (p.x - mx);
    sxy += (p.x - mx) * (p.y - my);
    syy += (p.y - my) * (p.y - my);
  }
  if (!(sxx > 0.0)) throw InputError("regression x values are all equal");

  RegressionFit fit;
  fit.n = points.size();
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (const auto& p : points) {
    const double e = p.y - (fit.intercept + fit.slope * p.x);
    ss_res += e * e;
  }
  if (syy == 0.0) {
    // Constant y: zero slope explains nothing.
    fit.r2 = 0.0;
    fit.p_value = 1.0;
    return fit;
  }
  fit.r2 = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  const double df = n - 2.0;
  if (ss_res == 0.0) {
    fit.p_value = 0.0;
  } else {
    const double se = std::sqrt(ss_res / df / sxx);
    fit.p_value = student_t_two_sided(fit.slope / se, df);
  }
  return fit;
}

std::string regression_json(const RegressionFit& fit) {
  nlohmann::ordered_json j;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["r2"] = fit.r2;
  j["p_value"] = fit.p_value;
  j["n"] = fit.n;
  return j.dump(2) + "\n";
}

std::string regression_plot_csv(const RegressionFit& fit, std::span<const Point> points) {
  std::string out = "x,y,fitted\n";
  for (const auto& p : points) {
    out += fmt::format("{:.17g},{:.17g},{:.17g}\n", p.x, p.y, fit.intercept + fit.slope * p.x);
  }
  return out;
}

namespace {

constexpr std::array<const char*, 5> kMetricNames{"MAE", "MSE", "RMSE", "DTW", "PCC"};

double metric(const MetricBundle& b, std::size_t k) {
  switch (k) {
    case 0: return b.mae;
    case 1: return b.mse;
    case 2: return b.rmse;
    case 3: return b.dtw;
    default: return b.pcc;
  }
}

}  // namespace

std::vector<AblationRow> ablation_report(std::span<const VariantMetrics> variants) {
  std::vector<AblationRow> rows;
  for (const auto& v : variants) {
    if (v.bundles.empty()) throw InputError("variant " + v.variant + " has no metric bundles");
    AblationRow row{v.variant, {}, {}};
    for (const auto& b : v.bundles) {
      row.mean.mae += b.mae;
      row.mean.mse += b.mse;
      row.mean.rmse += b.rmse;
      row.mean.dtw += b.dtw;
      row.mean.pcc += b.pcc;
    }
    const double n = double(v.bundles.size());
    row.mean.mae /= n;
    row.mean.mse /= n;
    row.mean.rmse /= n;
    row.mean.dtw /= n;
    row.mean.pcc /= n;
    rows.push_back(row);
  }
  if (rows.size() < 2) return rows;
  for (std::size_t k = 0; k < kMetricNames.size(); ++k) {
    const bool higher_better = k == 4;
    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double va = metric(rows[a].mean, k);
      const double vb = metric(rows[b].mean, k);
      return higher_better ? va > vb : va < vb;
    });
    rows[order[0]].rank[k] = 1;
    rows[order[1]].rank[k] = 2;
  }
  return rows;
}

std::string ablation_csv(std::span<const AblationRow> rows) {
  std::string out = "variant,mae,mse,rmse,dtw,pcc,rank_mae,rank_mse,rank_rmse,rank_dtw,rank_pcc\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{:.4f},{:.4f},{:.4f},{:.4f},{:.4f},{},{},{},{},{}\n", csv_field(r.variant),
                       r.mean.mae, r.mean.mse, r.mean.rmse, r.mean.dtw, r.mean.pcc, r.rank[0],
                       r.rank[1], r.rank[2], r.rank[3], r.rank[4]);
  }
  return out;
}

std::string ablation_table(std::span<const AblationRow> rows) {
  std::vector<std::vector<std::string>> table{{"Methods", "MAE↓", "MSE↓", "RMSE↓", "DTW↓", "PCC↑"}};
  for (const auto& r : rows) {
    std::vector<std::string> line{r.variant};
    for (std::size_t k = 0; k < kMetricNames.size(); ++k) {
      std::string cell = fmt::format("{:.4f}", metric(r.mean, k));
      if (r.rank[k] != 0) cell += fmt::format(" ({})", r.rank[k]);
      line.push_back(cell);
    }
    table.push_back(line);
  }
  return render_table(table);
}

}  // namespace syncact::analysis
