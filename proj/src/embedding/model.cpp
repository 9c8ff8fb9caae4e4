#include <cmath>
#include <string>

#include "syncact/embedding.hpp"
#include "syncact/errors.hpp"
#include "syncact/numerics/linear.hpp"
#include "syncact/rng.hpp"

namespace syncact::embedding {

using numerics::LstmCache;
using numerics::LstmParams;
using numerics::MsaCache;
using numerics::MsaParams;

NormalizedSignal znormalize(const Matrix& raw) {
  if (raw.rows() < 2) throw InputError("z-normalization needs at least 2 time points");
  NormalizedSignal out{Matrix(raw.rows(), raw.cols()), {}};
  const double t = double(raw.rows());
  for (std::size_t c = 0; c < raw.cols(); ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < raw.rows(); ++r) mean += raw(r, c);
    mean /= t;
    double var = 0.0;
    for (std::size_t r = 0; r < raw.rows(); ++r) {
      const double d = raw(r, c) - mean;
      var += d * d;
    }
    const double sd = std::sqrt(var / t);
    if (!(sd >= 1e-12)) {
      out.constant_columns.push_back(c);
      continue;
    }
    for (std::size_t r = 0; r < raw.rows(); ++r) out.values(r, c) = (raw(r, c) - mean) / sd;
  }
  return out;
}

std::string_view split_name(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kVal: return "val";
    case Split::kTest: return "test";
  }
  return "?";
}

Split parse_split(std::string_view text) {
  if (text == "train") return Split::kTrain;
  if (text == "val") return Split::kVal;
  if (text == "test") return Split::kTest;
  throw InputError("unknown split tag '" + std::string(text) + "' (expected train, val or test)");
}

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::kLt: return "lt";
    case Variant::kLtLstm: return "lt+lstm";
    case Variant::kLtMsa: return "lt+msa";
  }
  return "?";
}

Variant parse_variant(std::string_view text) {
  if (text == "lt") return Variant::kLt;
  if (text == "lt+lstm" || text == "lstm") return Variant::kLtLstm;
  if (text == "lt+msa" || text == "msa") return Variant::kLtMsa;
  throw InputError("unknown variant '" + std::string(text) + "' (expected lt, lt+lstm or lt+msa)");
}

void EmbeddingConfig::validate() const {
  if (fbns == 0 || voxels == 0 || fbns > voxels) {
    throw InputError("embedding needs 0 < m <= n (m=" + std::to_string(fbns) +
                     ", n=" + std::to_string(voxels) + ")");
  }
  if (epochs == 0) throw InputError("epochs must be >= 1");
  if (batch == 0) throw InputError("batch size must be >= 1");
  if (!(lr > 0.0)) throw InputError("learning rate must be positive");
  if (variant == Variant::kLtMsa && (heads == 0 || fbns % heads != 0)) {
    throw InputError("m=" + std::to_string(fbns) + " is not divisible by " +
                     std::to_string(heads) + " attention heads");
  }
  if (variant == Variant::kLtLstm && lstm_layers == 0) {
    throw InputError("LSTM variant needs at least one layer");
  }
}

namespace {

TemporalModule make_temporal(const EmbeddingConfig& config, Rng& rng) {
  switch (config.variant) {
    case Variant::kLt:
      return std::monostate{};
    case Variant::kLtLstm:
      return LstmParams::init(config.fbns, config.fbns, config.lstm_layers, rng);
    case Variant::kLtMsa: {
      auto p = MsaParams::init(config.fbns, config.heads, rng);
      p.positional_encoding = config.positional_encoding;
      p.residual = config.residual;
      return p;
    }
  }
  return std::monostate{};
}

TemporalModule zero_temporal(const TemporalModule& other) {
  return std::visit(
      [](const auto& p) -> TemporalModule {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return std::monostate{};
        } else {
          return T::zeros_like(p);
        }
      },
      other);
}

void append_temporal(numerics::ParamList& out, TemporalModule& module, const std::string& prefix) {
  if (auto* lstm = std::get_if<LstmParams>(&module)) {
    numerics::append_params(out, lstm->parameters(prefix));
  } else if (auto* msa = std::get_if<MsaParams>(&module)) {
    numerics::append_params(out, msa->parameters(prefix));
  }
}

using TemporalCache = std::variant<std::monostate, LstmCache, MsaCache>;

Matrix temporal_forward(const TemporalModule& module, const Matrix& x, TemporalCache* cache) {
  if (const auto* lstm = std::get_if<LstmParams>(&module)) {
    if (!cache) return numerics::forward_lstm(x, *lstm);
    auto& c = cache->emplace<LstmCache>();
    return numerics::forward_lstm(x, *lstm, &c);
  }
  if (const auto* msa = std::get_if<MsaParams>(&module)) {
    if (!cache) return numerics::forward_msa(x, *msa);
    auto& c = cache->emplace<MsaCache>();
    return numerics::forward_msa(x, *msa, &c);
  }
  return x;
}

Matrix temporal_backward(const TemporalModule& module, const Matrix& grad_out,
                         const TemporalCache& cache, TemporalModule& grads) {
  if (const auto* lstm = std::get_if<LstmParams>(&module)) {
    return numerics::backward_lstm(grad_out, *lstm, std::get<LstmCache>(cache),
                                   std::get<LstmParams>(grads));
  }
  if (const auto* msa = std::get_if<MsaParams>(&module)) {
    return numerics::backward_msa(grad_out, *msa, std::get<MsaCache>(cache),
                                  std::get<MsaParams>(grads));
  }
  return grad_out;
}

void check_signal(const EmbeddingModel& model, const Matrix& signal) {
  if (signal.cols() != model.encoder.rows()) {
    throw ShapeError("signal has " + std::to_string(signal.cols()) + " voxel columns, model expects " +
                     std::to_string(model.encoder.rows()));
  }
  if (signal.rows() == 0) throw ShapeError("signal has no time points");
}

}  // namespace

EmbeddingModel EmbeddingModel::init(const EmbeddingConfig& config) {
  config.validate();
  Rng rng(config.seed);
  EmbeddingModel model;
  model.config = config;
  model.encoder =
      rng.uniform_matrix(config.voxels, config.fbns, 1.0 / std::sqrt(double(config.voxels)));
  model.encoder_temporal = make_temporal(config, rng);
  model.decoder_temporal = make_temporal(config, rng);
  model.decoder = rng.uniform_matrix(config.fbns, config.voxels, 1.0 / std::sqrt(double(config.fbns)));
  model.decoder_bias = Matrix(1, config.voxels);
  return model;
}

EmbeddingModel EmbeddingModel::zeros_like(const EmbeddingModel& other) {
  EmbeddingModel z;
  z.config = other.config;
  z.encoder = Matrix::zeros_like(other.encoder);
  z.encoder_temporal = zero_temporal(other.encoder_temporal);
  z.decoder_temporal = zero_temporal(other.decoder_temporal);
  z.decoder = Matrix::zeros_like(other.decoder);
  z.decoder_bias = Matrix::zeros_like(other.decoder_bias);
  return z;
}

void EmbeddingModel::validate() const {
  const std::size_t n = config.voxels;
  const std::size_t m = config.fbns;
  if (encoder.rows() != n || encoder.cols() != m) throw ShapeError("encoder is not n x m");
  if (decoder.rows() != m || decoder.cols() != n) throw ShapeError("decoder is not m x n");
  if (decoder_bias.rows() != 1 || decoder_bias.cols() != n) throw ShapeError("decoder bias is not 1 x n");
  for (const auto* module : {&encoder_temporal, &decoder_temporal}) {
    if (const auto* lstm = std::get_if<LstmParams>(module)) {
      lstm->validate();
      if (lstm->input_width() != m || lstm->hidden != m) throw ShapeError("LSTM width is not m");
    } else if (const auto* msa = std::get_if<MsaParams>(module)) {
      msa->validate();
      if (msa->width != m) throw ShapeError("attention width is not m");
    }
  }
}

numerics::ParamList EmbeddingModel::parameters() {
  numerics::ParamList out;
  out.push_back({"encoder", &encoder});
  append_temporal(out, encoder_temporal, "encoder_temporal");
  append_temporal(out, decoder_temporal, "decoder_temporal");
  out.push_back({"decoder", &decoder});
  out.push_back({"decoder_bias", &decoder_bias});
  return out;
}

Encoded encode(const EmbeddingModel& model, const Matrix& signal) {
  check_signal(model, signal);
  Matrix features = numerics::forward_linear(signal, model.encoder);
  Matrix activations = temporal_forward(model.encoder_temporal, features, nullptr);
  return {std::move(features), {std::move(activations)}};
}

Matrix decode(const EmbeddingModel& model, const Matrix& activations) {
  if (activations.cols() != model.decoder.rows()) {
    throw ShapeError("activations have " + std::to_string(activations.cols()) +
                     " columns, model has " + std::to_string(model.decoder.rows()) + " FBNs");
  }
  Matrix hidden = temporal_forward(model.decoder_temporal, activations, nullptr);
  Matrix out = numerics::forward_linear(hidden, model.decoder);
  for (std::size_t r = 0; r < out.rows(); ++r) {
    auto row = out.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) row[c] += model.decoder_bias(0, c);
  }
  return out;
}

double reconstruction_loss(const EmbeddingModel& model, const Matrix& signal) {
  const Matrix recon = decode(model, encode(model, signal).activations.values);
  double total = 0.0;
  for (std::size_t i = 0; i < recon.size(); ++i) {
    const double d = recon.data()[i] - signal.data()[i];
    total += d * d;
  }
  return total / double(signal.size());
}

double accumulate_gradient(const EmbeddingModel& model, const Matrix& signal, double weight,
                           EmbeddingModel& grads) {
  check_signal(model, signal);
  TemporalCache enc_cache;
  TemporalCache dec_cache;
  const Matrix features = numerics::forward_linear(signal, model.encoder);
  const Matrix activations = temporal_forward(model.encoder_temporal, features, &enc_cache);
  const Matrix hidden = temporal_forward(model.decoder_temporal, activations, &dec_cache);
  Matrix recon = numerics::forward_linear(hidden, model.decoder);

  const double count = double(signal.size());
  double loss = 0.0;
  Matrix grad_recon(recon.rows(), recon.cols());
  for (std::size_t r = 0; r < recon.rows(); ++r) {
    for (std::size_t c = 0; c < recon.cols(); ++c) {
      const double d = recon(r, c) + model.decoder_bias(0, c) - signal(r, c);
      loss += d * d;
      grad_recon(r, c) = weight * 2.0 * d / count;
    }
  }

  for (std::size_t r = 0; r < grad_recon.rows(); ++r) {
    for (std::size_t c = 0; c < grad_recon.cols(); ++c) grads.decoder_bias(0, c) += grad_recon(r, c);
  }
  auto dec = numerics::backward_linear(hidden, model.decoder, grad_recon);
  grads.decoder += dec.weight;
  const Matrix grad_activations =
      temporal_backward(model.decoder_temporal, dec.input, dec_cache, grads.decoder_temporal);
  const Matrix grad_features =
      temporal_backward(model.encoder_temporal, grad_activations, enc_cache, grads.encoder_temporal);
  grads.encoder += matmul_tn(signal, grad_features);
  return loss / count;
}

FbnActivations subject_average(std::span<const FbnActivations> activations) {
  if (activations.empty()) throw InputError("cannot average an empty list of subjects");
  Matrix mean = activations.front().values;
  for (std::size_t i = 1; i < activations.size(); ++i) {
    if (!activations[i].values.same_shape(mean)) {
      throw ShapeError("subject " + std::to_string(i) + " activations differ in shape");
    }
    mean += activations[i].values;
  }
  mean *= 1.0 / double(activations.size());
  return {std::move(mean)};
}

FbnActivations average_activations(const EmbeddingModel& model,
                                   const std::vector<SubjectDataset>& datasets, Split split) {
  std::vector<FbnActivations> per_subject;
  for (const auto& d : datasets) {
    if (d.split == split) per_subject.push_back(encode(model, d.signal).activations);
  }
  if (per_subject.empty()) {
    throw InputError("no subjects tagged '" + std::string(split_name(split)) + "'");
  }
  return subject_average(per_subject);
}

}  // namespace syncact::embedding
