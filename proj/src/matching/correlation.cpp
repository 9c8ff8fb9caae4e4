#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "syncact/errors.hpp"
#include "syncact/matching.hpp"
#include "syncact/special.hpp"

namespace syncact::matching {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Centered copy scaled to unit Euclidean norm; empty when the series is
// constant up to rounding.
std::vector<double> unit_centered(std::span<const double> x) {
  double mean = 0.0;
  double scale = 0.0;
  for (double v : x) {
    mean += v;
    scale = std::max(scale, std::abs(v));
  }
  mean /= double(x.size());
  std::vector<double> out(x.size());
  double norm2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = x[i] - mean;
    norm2 += out[i] * out[i];
  }
  const double sd = std::sqrt(norm2 / double(x.size()));
  if (!(sd > 1e-12 * std::max(1.0, scale))) return {};
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& v : out) v *= inv;
  return out;
}

double dot_clamped(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return kNaN;
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return std::clamp(acc, -1.0, 1.0);
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw InputError("series lengths differ (" + std::to_string(x.size()) + " vs " +
                     std::to_string(y.size()) + ")");
  }
  if (x.size() < 3) throw InputError("PCC needs at least 3 samples");
  return dot_clamped(unit_centered(x), unit_centered(y));
}

double pearson_pvalue(double r, std::size_t length) {
  if (length < 3) throw InputError("PCC significance needs at least 3 samples");
  if (std::isnan(r)) return kNaN;
  if (std::abs(r) > 1.0) throw InputError("correlation outside [-1, 1]");
  if (std::abs(r) == 1.0) return 0.0;
  // With t² = r²(T−2)/(1−r²), the beta argument df/(df+t²) reduces to 1 − r².
  const double df = double(length - 2);
  return incomplete_beta(0.5 * df, 0.5, (1.0 - r) * (1.0 + r));
}

CorrelationMatrix correlation_matrix(const Matrix& fbns, const Matrix& filters, std::size_t threads) {
  if (fbns.rows() != filters.rows()) {
    throw InputError("activation lengths differ (" + std::to_string(fbns.rows()) + " vs " +
                     std::to_string(filters.rows()) + " time points)");
  }
  const std::size_t length = fbns.rows();
  if (length < 3) throw InputError("PCC needs at least 3 samples");

  std::vector<std::vector<double>> left(fbns.cols());
  std::vector<std::vector<double>> right(filters.cols());
  for (std::size_t i = 0; i < fbns.cols(); ++i) left[i] = unit_centered(fbns.column(i));
  for (std::size_t j = 0; j < filters.cols(); ++j) right[j] = unit_centered(filters.column(j));

  CorrelationMatrix out{Matrix(fbns.cols(), filters.cols()), Matrix(fbns.cols(), filters.cols()),
                        length};
  auto fill_rows = [&](std::size_t first, std::size_t last) {
    for (std::size_t i = first; i < last; ++i) {
      for (std::size_t j = 0; j < right.size(); ++j) {
        const double r = dot_clamped(left[i], right[j]);
        out.r(i, j) = r;
        out.p(i, j) = pearson_pvalue(r, length);
      }
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(1, left.size()));
  if (workers == 1) {
    fill_rows(0, left.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (left.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t first = w * chunk;
      const std::size_t last = std::min(left.size(), first + chunk);
      if (first < last) pool.emplace_back(fill_rows, first, last);
    }
  }
  return out;
}

}  // namespace syncact::matching
