#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "syncact/matrix.hpp"

namespace syncact::matching {

// Sample Pearson correlation. Returns NaN when either series has (numerically)
// zero variance. Requires equal lengths of at least 3.
double pearson(std::span<const double> x, std::span<const double> y);

// Two-sided p-value of r under H0: ρ = 0, from t = r·√((T−2)/(1−r²)) with
// T−2 degrees of freedom. NaN in, NaN out.
double pearson_pvalue(double r, std::size_t length);

// Rows of r and p index the columns of `fbns`, columns index the columns of
// `filters`.
struct CorrelationMatrix {
  Matrix r;
  Matrix p;
  std::size_t length = 0;
};

// Pairwise PCC between every column of `fbns` (T×a) and `filters` (T×b).
// Cells are independent, so `threads` > 1 splits rows without changing results.
CorrelationMatrix correlation_matrix(const Matrix& fbns, const Matrix& filters,
                                     std::size_t threads = 1);

enum class Direction { kFbnToFilter, kFilterToFbn };

std::string_view direction_name(Direction d);
Direction parse_direction(std::string_view text);

struct NeuronPair {
  std::size_t source = 0;
  std::size_t target = 0;
  double r = 0.0;
  double p = 1.0;
  bool paired = true;  // false when every candidate correlation was NaN
};

struct PairingResult {
  Direction direction = Direction::kFbnToFilter;
  std::vector<NeuronPair> pairs;  // one per source neuron, in source order
  double mean_r = 0.0;            // over paired sources
  std::size_t nonsignificant = 0; // p > alpha, unpaired sources included
  std::size_t unpaired = 0;
  double alpha = 0.05;

  std::size_t source_count() const { return pairs.size(); }
  // "k/m" with k = nonsignificant, m = source count.
  std::string ratio() const;
};

// For each source neuron the target with the largest r; NaN cells are skipped
// and ties go to the lowest target index.
PairingResult pair_neurons(const CorrelationMatrix& c, Direction direction, double alpha = 0.05);

// ---------------------------------------------------------------------------
// Summary tables

struct LabeledPairing {
  std::string model;
  std::string layer;
  std::string run;
  PairingResult result;
};

struct SummaryRow {
  std::string model;
  std::string layer;
  std::string run;
  double mean_r = 0.0;
  std::string mean_text;  // 4 decimals
  std::size_t nonsignificant = 0;
  std::size_t sources = 0;
  std::string ratio;  // "k/m"
};

std::vector<SummaryRow> summarize(std::span<const LabeledPairing> results);

// Long form: model,layer,run,mean_pcc,ratio,nonsignificant,sources
std::string summary_csv(std::span<const SummaryRow> rows);

// Pivoted text table: one line per (model, layer), a PCC and Ratio column per
// run. When a model has several layers, the highest and second-highest PCC of
// each run are marked with (1) and (2).
std::string summary_table(std::span<const SummaryRow> rows);

// ---------------------------------------------------------------------------
// Cross-annotation

inline constexpr std::string_view kUnlabeled = "⟨unlabeled⟩";

struct LabelTable {
  std::map<std::size_t, std::string> entries;

  // Description for `id`, or kUnlabeled when absent.
  std::string_view describe(std::size_t id) const;
};

struct Annotation {
  std::size_t source = 0;
  std::string source_description;
  std::size_t target = 0;
  std::string target_description;
  double r = 0.0;
  double p = 1.0;
};

// One entry per paired source, sorted by descending r (ties by source index).
std::vector<Annotation> cross_annotate(const PairingResult& pairing, const LabelTable& source_labels,
                                       const LabelTable& target_labels);

std::string annotations_jsonl(std::span<const Annotation> entries);
std::string annotations_table(std::span<const Annotation> entries);

}  // namespace syncact::matching
