#pragma once

#include <cstddef>
#include <vector>

#include "syncact/matrix.hpp"
#include "syncact/numerics/params.hpp"
#include "syncact/rng.hpp"

namespace syncact::numerics {

// One recurrent layer. Gate pre-activations for a row input x and previous
// hidden state h are x·input_weight + h·recurrent_weight + bias, laid out as
// four column blocks of width `hidden` in the order input, forget, cell, output.
struct LstmLayer {
  Matrix input_weight;      // in × 4H
  Matrix recurrent_weight;  // H × 4H
  Matrix bias;              // 1 × 4H

  friend bool operator==(const LstmLayer&, const LstmLayer&) = default;
};

struct LstmParams {
  std::size_t hidden = 0;
  std::vector<LstmLayer> layers;

  std::size_t input_width() const { return layers.empty() ? 0 : layers.front().input_weight.rows(); }

  // Weights uniform in ±1/√fan-in, biases zero except forget gate at +1.
  static LstmParams init(std::size_t input_width, std::size_t hidden, std::size_t layers, Rng& rng);
  static LstmParams zeros_like(const LstmParams& other);

  // Throws ShapeError when layer shapes are inconsistent.
  void validate() const;
  ParamList parameters(const std::string& prefix);

  friend bool operator==(const LstmParams&, const LstmParams&) = default;
};

// Activations retained by the forward pass for backprop-through-time.
struct LstmCache {
  struct Layer {
    Matrix input;   // t × in
    Matrix gates;   // t × 4H, post-nonlinearity
    Matrix cell;    // t × H
    Matrix cell_tanh;
    Matrix hidden;  // t × H
  };
  std::vector<Layer> layers;
};

// Runs the stack over rows of x (time × features); returns the last layer's
// hidden states, time × H.
Matrix forward_lstm(const Matrix& x, const LstmParams& params, LstmCache* cache = nullptr);

// Accumulates parameter gradients into `grads` and returns dL/dX.
Matrix backward_lstm(const Matrix& grad_out, const LstmParams& params, const LstmCache& cache,
                     LstmParams& grads);

}  // namespace syncact::numerics
