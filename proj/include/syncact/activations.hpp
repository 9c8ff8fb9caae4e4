#pragma once

#include <string>

#include "syncact/embedding.hpp"
#include "syncact/matrix.hpp"
#include "syncact/tensor.hpp"

namespace syncact::activations {

// One T×C×H×W tensor of filter responses, a frame per stimulus time point.
struct FeatureMapSequence {
  Tensor maps;
  std::string layer;
  std::string model;
};

struct FilterActivationMatrix {
  Matrix values;  // T × C
  bool normalized = false;
  int lag = 0;
};

// values[t][c] = max over the H×W map of channel c at frame t.
FilterActivationMatrix filter_activations(const FeatureMapSequence& fm);

struct Aligned {
  FilterActivationMatrix filters;
  embedding::FbnActivations fbns;
};

// Pairs filter row i with FBN row i + lag (negative lag shifts the other way),
// truncates both to the overlap and z-normalizes every column.
// Requires |lag| < min(T, t).
Aligned align(const FilterActivationMatrix& filters, const embedding::FbnActivations& fbns, int lag);

}  // namespace syncact::activations
