#include "syncact/numerics/lstm.hpp"

#include <cmath>
#include <string>

#include "syncact/errors.hpp"

namespace syncact::numerics {
namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

enum Gate : std::size_t { kInput = 0, kForget = 1, kCell = 2, kOutput = 3 };

}  // namespace

LstmParams LstmParams::init(std::size_t input_width, std::size_t hidden, std::size_t layers,
                            Rng& rng) {
  if (layers == 0 || hidden == 0 || input_width == 0) {
    throw InputError("LSTM needs at least one layer and nonzero widths");
  }
  LstmParams p;
  p.hidden = hidden;
  for (std::size_t l = 0; l < layers; ++l) {
    const std::size_t in = l == 0 ? input_width : hidden;
    LstmLayer layer;
    layer.input_weight = rng.uniform_matrix(in, 4 * hidden, 1.0 / std::sqrt(double(in)));
    layer.recurrent_weight = rng.uniform_matrix(hidden, 4 * hidden, 1.0 / std::sqrt(double(hidden)));
    layer.bias = Matrix(1, 4 * hidden);
    for (std::size_t j = 0; j < hidden; ++j) layer.bias(0, kForget * hidden + j) = 1.0;
    p.layers.push_back(std::move(layer));
  }
  return p;
}

LstmParams LstmParams::zeros_like(const LstmParams& other) {
  LstmParams p;
  p.hidden = other.hidden;
  for (const auto& layer : other.layers) {
    p.layers.push_back({Matrix::zeros_like(layer.input_weight),
                        Matrix::zeros_like(layer.recurrent_weight), Matrix::zeros_like(layer.bias)});
  }
  return p;
}

void LstmParams::validate() const {
  if (layers.empty()) throw ShapeError("LSTM has no layers");
  const std::size_t gates = 4 * hidden;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& layer = layers[l];
    const bool ok = layer.input_weight.cols() == gates && layer.recurrent_weight.rows() == hidden &&
                    layer.recurrent_weight.cols() == gates && layer.bias.rows() == 1 &&
                    layer.bias.cols() == gates && (l == 0 || layer.input_weight.rows() == hidden);
    if (!ok) throw ShapeError("LSTM layer " + std::to_string(l) + " has inconsistent shapes");
  }
}

ParamList LstmParams::parameters(const std::string& prefix) {
  ParamList out;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const std::string base = prefix + ".layer" + std::to_string(l);
    out.push_back({base + ".input_weight", &layers[l].input_weight});
    out.push_back({base + ".recurrent_weight", &layers[l].recurrent_weight});
    out.push_back({base + ".bias", &layers[l].bias});
  }
  return out;
}

Matrix forward_lstm(const Matrix& x, const LstmParams& params, LstmCache* cache) {
  params.validate();
  if (x.rows() == 0) throw ShapeError("LSTM input has no time steps");
  if (x.cols() != params.input_width()) {
    throw ShapeError("LSTM input width " + std::to_string(x.cols()) + " != " +
                     std::to_string(params.input_width()));
  }
  const std::size_t steps = x.rows();
  const std::size_t h = params.hidden;
  if (cache) cache->layers.clear();

  Matrix input = x;
  for (const auto& layer : params.layers) {
    Matrix gates = matmul(input, layer.input_weight);
    Matrix cell(steps, h);
    Matrix cell_tanh(steps, h);
    Matrix hidden(steps, h);
    for (std::size_t t = 0; t < steps; ++t) {
      auto g = gates.row(t);
      for (std::size_t j = 0; j < 4 * h; ++j) g[j] += layer.bias(0, j);
      if (t > 0) {
        auto prev = hidden.row(t - 1);
        for (std::size_t k = 0; k < h; ++k) {
          const double hk = prev[k];
          if (hk == 0.0) continue;
          auto w = layer.recurrent_weight.row(k);
          for (std::size_t j = 0; j < 4 * h; ++j) g[j] += hk * w[j];
        }
      }
      for (std::size_t j = 0; j < h; ++j) {
        const double i = sigmoid(g[kInput * h + j]);
        const double f = sigmoid(g[kForget * h + j]);
        const double c_hat = std::tanh(g[kCell * h + j]);
        const double o = sigmoid(g[kOutput * h + j]);
        g[kInput * h + j] = i;
        g[kForget * h + j] = f;
        g[kCell * h + j] = c_hat;
        g[kOutput * h + j] = o;
        const double c_prev = t > 0 ? cell(t - 1, j) : 0.0;
        const double c = f * c_prev + i * c_hat;
        cell(t, j) = c;
        cell_tanh(t, j) = std::tanh(c);
        hidden(t, j) = o * cell_tanh(t, j);
      }
    }
    if (cache) {
      cache->layers.push_back({std::move(input), std::move(gates), std::move(cell),
                               std::move(cell_tanh), hidden});
    }
    input = std::move(hidden);
  }
  return input;
}

Matrix backward_lstm(const Matrix& grad_out, const LstmParams& params, const LstmCache& cache,
                     LstmParams& grads) {
  if (cache.layers.size() != params.layers.size()) {
    throw ShapeError("LSTM cache does not match parameter layer count");
  }
  const std::size_t h = params.hidden;
  Matrix grad = grad_out;
  for (std::size_t l = params.layers.size(); l-- > 0;) {
    const auto& layer = params.layers[l];
    const auto& c = cache.layers[l];
    const std::size_t steps = c.hidden.rows();
    if (grad.rows() != steps || grad.cols() != h) {
      throw ShapeError("LSTM output gradient shape mismatch");
    }
    Matrix pre_grad(steps, 4 * h);
    std::vector<double> dh_next(h, 0.0);
    std::vector<double> dc_next(h, 0.0);
    for (std::size_t t = steps; t-- > 0;) {
      auto g = c.gates.row(t);
      auto dpre = pre_grad.row(t);
      for (std::size_t j = 0; j < h; ++j) {
        const double i = g[kInput * h + j];
        const double f = g[kForget * h + j];
        const double c_hat = g[kCell * h + j];
        const double o = g[kOutput * h + j];
        const double tc = c.cell_tanh(t, j);
        const double dh = grad(t, j) + dh_next[j];
        const double dc = dh * o * (1.0 - tc * tc) + dc_next[j];
        const double c_prev = t > 0 ? c.cell(t - 1, j) : 0.0;
        dpre[kInput * h + j] = dc * c_hat * i * (1.0 - i);
        dpre[kForget * h + j] = dc * c_prev * f * (1.0 - f);
        dpre[kCell * h + j] = dc * i * (1.0 - c_hat * c_hat);
        dpre[kOutput * h + j] = dh * tc * o * (1.0 - o);
        dc_next[j] = dc * f;
      }
      for (std::size_t k = 0; k < h; ++k) {
        auto w = layer.recurrent_weight.row(k);
        double acc = 0.0;
        for (std::size_t j = 0; j < 4 * h; ++j) acc += dpre[j] * w[j];
        dh_next[k] = acc;
      }
    }
    auto& gl = grads.layers[l];
    gl.input_weight += matmul_tn(c.input, pre_grad);
    if (steps > 1) {
      gl.recurrent_weight +=
          matmul_tn(c.hidden.row_slice(0, steps - 1), pre_grad.row_slice(1, steps - 1));
    }
    for (std::size_t t = 0; t < steps; ++t) {
      for (std::size_t j = 0; j < 4 * h; ++j) gl.bias(0, j) += pre_grad(t, j);
    }
    grad = matmul_nt(pre_grad, layer.input_weight);
  }
  return grad;
}

}  // namespace syncact::numerics
