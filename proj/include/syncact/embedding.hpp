#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "syncact/matrix.hpp"
#include "syncact/numerics/lstm.hpp"
#include "syncact/numerics/msa.hpp"
#include "syncact/numerics/params.hpp"
#include "syncact/tensor.hpp"

namespace syncact::embedding {

// ---------------------------------------------------------------------------
// Signals

struct NormalizedSignal {
  Matrix values;
  std::vector<std::size_t> constant_columns;
};

// Per-column (x − mean) / population std. Columns with std < 1e-12 become
// all-zero and are listed in constant_columns. Requires at least two rows.
NormalizedSignal znormalize(const Matrix& raw);

enum class Split { kTrain, kVal, kTest };

std::string_view split_name(Split s);
Split parse_split(std::string_view text);

struct SubjectDataset {
  std::string id;
  Matrix signal;  // t × n, z-normalized per voxel
  Split split = Split::kTrain;
};

// ---------------------------------------------------------------------------
// Model

enum class Variant { kLt, kLtLstm, kLtMsa };

std::string_view variant_name(Variant v);
Variant parse_variant(std::string_view text);

struct EmbeddingConfig {
  std::size_t voxels = 0;
  std::size_t fbns = 64;
  Variant variant = Variant::kLtMsa;
  double lr = 0.01;
  std::size_t epochs = 100;
  std::size_t batch = 16;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  std::uint64_t seed = 42;
  std::size_t heads = 4;
  std::size_t lstm_layers = 2;
  bool positional_encoding = true;
  bool residual = true;

  void validate() const;

  friend bool operator==(const EmbeddingConfig&, const EmbeddingConfig&) = default;
};

using TemporalModule = std::variant<std::monostate, numerics::LstmParams, numerics::MsaParams>;

struct EmbeddingModel {
  EmbeddingConfig config;
  Matrix encoder;  // n × m, shared by every subject
  TemporalModule encoder_temporal;
  TemporalModule decoder_temporal;
  Matrix decoder;       // m × n
  Matrix decoder_bias;  // 1 × n

  // Encoder weights uniform ±1/√n, decoder weights uniform ±1/√m, decoder
  // bias zero; temporal modules per their own init rules. Seeded by config.
  static EmbeddingModel init(const EmbeddingConfig& config);
  static EmbeddingModel zeros_like(const EmbeddingModel& other);

  void validate() const;
  // Fixed order: encoder, encoder temporal, decoder temporal, decoder, bias.
  numerics::ParamList parameters();

  friend bool operator==(const EmbeddingModel&, const EmbeddingModel&) = default;
};

struct FbnActivations {
  Matrix values;  // t × m; column i is the temporal activation of FBN i
};

struct Encoded {
  Matrix features;  // S_f = S·W
  FbnActivations activations;
};

Encoded encode(const EmbeddingModel& model, const Matrix& signal);
Matrix decode(const EmbeddingModel& model, const Matrix& activations);

// ‖S − S′‖² / (t·n)
double reconstruction_loss(const EmbeddingModel& model, const Matrix& signal);

// Adds weight · d(loss)/d(params) into `grads` and returns the loss.
double accumulate_gradient(const EmbeddingModel& model, const Matrix& signal, double weight,
                           EmbeddingModel& grads);

// ---------------------------------------------------------------------------
// Training

struct EpochRecord {
  std::size_t epoch = 0;  // 0 = before any update
  double train_mse = 0.0;
  double val_mse = 0.0;  // NaN when no validation subjects exist
};

struct TrainResult {
  EmbeddingModel model;
  std::vector<EpochRecord> log;
};

// Adam over subject batches; each epoch shuffles training subjects with a
// generator seeded from config.seed. Throws NumericError on a non-finite loss.
TrainResult train(const std::vector<SubjectDataset>& datasets, EmbeddingModel initial);
TrainResult train(const std::vector<SubjectDataset>& datasets, const EmbeddingConfig& config);

// Elementwise mean over subjects.
FbnActivations subject_average(std::span<const FbnActivations> activations);

// Encodes every subject tagged `split` and averages their activations.
FbnActivations average_activations(const EmbeddingModel& model,
                                   const std::vector<SubjectDataset>& datasets,
                                   Split split = Split::kTest);

// ---------------------------------------------------------------------------
// Spatial maps

struct VoxelMask {
  std::array<std::size_t, 3> dims{};
  std::vector<std::array<std::size_t, 3>> coords;  // one per voxel column

  // Every nonzero entry of a 3-D volume is a voxel, enumerated in C order.
  static VoxelMask from_volume(const Tensor& volume);
};

// Linear-interpolated percentile of `values` (p in [0, 100]); values are
// copied and partially sorted.
double percentile(std::span<const double> values, double p);

// Column k of the encoder scattered into the mask volume. Weights whose
// magnitude falls outside the [lo, hi] percentile band of |w| are zeroed.
Tensor export_fbn_map(const EmbeddingModel& model, std::size_t k, const VoxelMask& mask,
                      double lo_percentile, double hi_percentile);

// ---------------------------------------------------------------------------
// Checkpoints

std::vector<std::uint8_t> serialize_model(const EmbeddingModel& model);
EmbeddingModel deserialize_model(std::span<const std::uint8_t> bytes);
void save_checkpoint(const std::filesystem::path& path, const EmbeddingModel& model);
EmbeddingModel load_checkpoint(const std::filesystem::path& path);

}  // namespace syncact::embedding
