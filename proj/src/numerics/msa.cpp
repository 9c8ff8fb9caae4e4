#include "syncact/numerics/msa.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "syncact/errors.hpp"

namespace syncact::numerics {
namespace {

void softmax_rows(Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    const double peak = *std::max_element(row.begin(), row.end());
    double total = 0.0;
    for (double& v : row) {
      v = std::exp(v - peak);
      total += v;
    }
    for (double& v : row) v /= total;
  }
}

}  // namespace

MsaParams MsaParams::init(std::size_t width, std::size_t heads, Rng& rng) {
  if (heads == 0 || width == 0 || width % heads != 0) {
    throw InputError("attention width " + std::to_string(width) + " not divisible by " +
                     std::to_string(heads) + " heads");
  }
  MsaParams p;
  p.heads = heads;
  p.width = width;
  const double bound = 1.0 / std::sqrt(double(width));
  const std::size_t dh = width / heads;
  for (std::size_t h = 0; h < heads; ++h) {
    p.query.push_back(rng.uniform_matrix(width, dh, bound));
    p.key.push_back(rng.uniform_matrix(width, dh, bound));
    p.value.push_back(rng.uniform_matrix(width, dh, bound));
  }
  p.output = rng.uniform_matrix(width, width, bound);
  return p;
}

MsaParams MsaParams::zeros_like(const MsaParams& other) {
  MsaParams p = other;
  for (auto* group : {&p.query, &p.key, &p.value}) {
    for (auto& m : *group) m.fill(0.0);
  }
  p.output.fill(0.0);
  return p;
}

void MsaParams::validate() const {
  if (heads == 0 || width % heads != 0) throw ShapeError("attention width not divisible by heads");
  const std::size_t dh = head_width();
  if (query.size() != heads || key.size() != heads || value.size() != heads) {
    throw ShapeError("attention projection count does not match head count");
  }
  for (std::size_t h = 0; h < heads; ++h) {
    for (const Matrix* m : {&query[h], &key[h], &value[h]}) {
      if (m->rows() != width || m->cols() != dh) {
        throw ShapeError("attention projection for head " + std::to_string(h) + " is not " +
                         std::to_string(width) + "x" + std::to_string(dh));
      }
    }
  }
  if (output.rows() != width || output.cols() != width) {
    throw ShapeError("attention output projection has wrong shape");
  }
}

ParamList MsaParams::parameters(const std::string& prefix) {
  ParamList out;
  for (std::size_t h = 0; h < heads; ++h) {
    const std::string base = prefix + ".head" + std::to_string(h);
    out.push_back({base + ".query", &query[h]});
    out.push_back({base + ".key", &key[h]});
    out.push_back({base + ".value", &value[h]});
  }
  out.push_back({prefix + ".output", &output});
  return out;
}

Matrix sinusoidal_positions(std::size_t steps, std::size_t width) {
  Matrix pe(steps, width);
  for (std::size_t pos = 0; pos < steps; ++pos) {
    for (std::size_t i = 0; i < width; i += 2) {
      const double angle = double(pos) / std::pow(10000.0, double(i) / double(width));
      pe(pos, i) = std::sin(angle);
      if (i + 1 < width) pe(pos, i + 1) = std::cos(angle);
    }
  }
  return pe;
}

Matrix forward_msa(const Matrix& x, const MsaParams& params, MsaCache* cache) {
  params.validate();
  if (x.rows() == 0) throw ShapeError("attention input has no time steps");
  if (x.cols() != params.width) {
    throw ShapeError("attention input width " + std::to_string(x.cols()) + " != " +
                     std::to_string(params.width));
  }
  const std::size_t dh = params.head_width();
  const double scale = 1.0 / std::sqrt(double(dh));

  Matrix input = x;
  if (params.positional_encoding) input += sinusoidal_positions(x.rows(), x.cols());

  MsaCache local;
  MsaCache& c = cache ? *cache : local;
  c.q.clear();
  c.k.clear();
  c.v.clear();
  c.attention.clear();
  c.concat = Matrix(x.rows(), params.width);
  for (std::size_t h = 0; h < params.heads; ++h) {
    Matrix q = matmul(input, params.query[h]);
    Matrix k = matmul(input, params.key[h]);
    Matrix v = matmul(input, params.value[h]);
    Matrix scores = matmul_nt(q, k) * scale;
    softmax_rows(scores);
    c.concat.set_col_slice(h * dh, matmul(scores, v));
    c.q.push_back(std::move(q));
    c.k.push_back(std::move(k));
    c.v.push_back(std::move(v));
    c.attention.push_back(std::move(scores));
  }
  Matrix out = matmul(c.concat, params.output);
  if (params.residual) out += x;
  c.input = std::move(input);
  return out;
}

Matrix backward_msa(const Matrix& grad_out, const MsaParams& params, const MsaCache& cache,
                    MsaParams& grads) {
  if (grad_out.rows() != cache.concat.rows() || grad_out.cols() != params.width) {
    throw ShapeError("attention output gradient shape mismatch");
  }
  const std::size_t dh = params.head_width();
  const double scale = 1.0 / std::sqrt(double(dh));

  grads.output += matmul_tn(cache.concat, grad_out);
  const Matrix grad_concat = matmul_nt(grad_out, params.output);
  Matrix grad_input(grad_out.rows(), params.width);

  for (std::size_t h = 0; h < params.heads; ++h) {
    const Matrix grad_head = grad_concat.col_slice(h * dh, dh);
    const Matrix& a = cache.attention[h];
    const Matrix grad_attn = matmul_nt(grad_head, cache.v[h]);
    const Matrix grad_v = matmul_tn(a, grad_head);

    // Softmax Jacobian per row: dS = A ⊙ (dA − Σ_j dA·A).
    Matrix grad_scores(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
      double dot = 0.0;
      for (std::size_t j = 0; j < a.cols(); ++j) dot += grad_attn(r, j) * a(r, j);
      for (std::size_t j = 0; j < a.cols(); ++j) {
        grad_scores(r, j) = a(r, j) * (grad_attn(r, j) - dot) * scale;
      }
    }
    const Matrix grad_q = matmul(grad_scores, cache.k[h]);
    const Matrix grad_k = matmul_tn(grad_scores, cache.q[h]);

    grads.query[h] += matmul_tn(cache.input, grad_q);
    grads.key[h] += matmul_tn(cache.input, grad_k);
    grads.value[h] += matmul_tn(cache.input, grad_v);
    grad_input += matmul_nt(grad_q, params.query[h]);
    grad_input += matmul_nt(grad_k, params.key[h]);
    grad_input += matmul_nt(grad_v, params.value[h]);
  }
  if (params.residual) grad_input += grad_out;
  return grad_input;
}

}  // namespace syncact::numerics
