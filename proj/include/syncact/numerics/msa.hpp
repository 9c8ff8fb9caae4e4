#pragma once

#include <cstddef>
#include <vector>

#include "syncact/matrix.hpp"
#include "syncact/numerics/params.hpp"
#include "syncact/rng.hpp"

namespace syncact::numerics {

// Single self-attention block: optional sinusoidal position table added to the
// input, `heads` scaled dot-product heads over time, concatenation, output
// projection and an optional residual connection from the (position-free)
// input. No feed-forward sublayer and no normalization.
struct MsaParams {
  std::size_t heads = 0;
  std::size_t width = 0;
  std::vector<Matrix> query;  // per head, width × width/heads
  std::vector<Matrix> key;
  std::vector<Matrix> value;
  Matrix output;  // width × width
  bool positional_encoding = true;
  bool residual = true;

  std::size_t head_width() const { return heads == 0 ? 0 : width / heads; }

  static MsaParams init(std::size_t width, std::size_t heads, Rng& rng);
  static MsaParams zeros_like(const MsaParams& other);

  void validate() const;
  ParamList parameters(const std::string& prefix);

  friend bool operator==(const MsaParams&, const MsaParams&) = default;
};

// PE[pos][2i] = sin(pos / 10000^(2i/width)), PE[pos][2i+1] = cos(...).
Matrix sinusoidal_positions(std::size_t steps, std::size_t width);

struct MsaCache {
  Matrix input;  // input with positions added
  std::vector<Matrix> q, k, v, attention;
  Matrix concat;
};

Matrix forward_msa(const Matrix& x, const MsaParams& params, MsaCache* cache = nullptr);

// Accumulates parameter gradients into `grads` and returns dL/dX.
Matrix backward_msa(const Matrix& grad_out, const MsaParams& params, const MsaCache& cache,
                    MsaParams& grads);

}  // namespace syncact::numerics
