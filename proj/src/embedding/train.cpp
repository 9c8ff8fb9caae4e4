#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "syncact/embedding.hpp"
#include "syncact/errors.hpp"
#include "syncact/numerics/adam.hpp"
#include "syncact/rng.hpp"

namespace syncact::embedding {
namespace {

// Separates the shuffling stream from the initialization stream.
constexpr std::uint64_t kShuffleStream = 0x9E3779B97F4A7C15ULL;

double mean_loss(const EmbeddingModel& model, const std::vector<SubjectDataset>& datasets,
                 const std::vector<std::size_t>& indices) {
  if (indices.empty()) return std::numeric_limits<double>::quiet_NaN();
  double total = 0.0;
  for (auto i : indices) total += reconstruction_loss(model, datasets[i].signal);
  return total / double(indices.size());
}

}  // namespace

TrainResult train(const std::vector<SubjectDataset>& datasets, EmbeddingModel initial) {
  initial.validate();
  const EmbeddingConfig& config = initial.config;
  config.validate();

  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> val_idx;
  std::size_t steps = 0;
  for (std::size_t i = 0; i < datasets.size(); ++i) {
    const auto& s = datasets[i].signal;
    if (s.cols() != config.voxels) {
      throw ShapeError("subject " + datasets[i].id + " has " + std::to_string(s.cols()) +
                       " voxels, expected " + std::to_string(config.voxels));
    }
    if (steps == 0) steps = s.rows();
    if (s.rows() != steps) {
      throw ShapeError("subject " + datasets[i].id + " has " + std::to_string(s.rows()) +
                       " time points, expected " + std::to_string(steps));
    }
    if (datasets[i].split == Split::kTrain) train_idx.push_back(i);
    if (datasets[i].split == Split::kVal) val_idx.push_back(i);
  }
  if (train_idx.empty()) throw InputError("training needs at least one subject tagged 'train'");

  TrainResult result{std::move(initial), {}};
  EmbeddingModel& model = result.model;
  const auto params = model.parameters();
  numerics::AdamState adam({config.lr, config.beta1, config.beta2, config.eps});
  Rng shuffler(config.seed ^ kShuffleStream);

  auto record = [&](std::size_t epoch) {
    EpochRecord rec{epoch, mean_loss(model, datasets, train_idx), mean_loss(model, datasets, val_idx)};
    if (!std::isfinite(rec.train_mse)) {
      throw NumericError("non-finite training loss at epoch " + std::to_string(epoch));
    }
    if (!val_idx.empty() && !std::isfinite(rec.val_mse)) {
      throw NumericError("non-finite validation loss at epoch " + std::to_string(epoch));
    }
    result.log.push_back(rec);
  };

  record(0);
  std::vector<std::size_t> order = train_idx;
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    shuffler.shuffle(order.begin(), order.end());
    for (std::size_t start = 0; start < order.size(); start += config.batch) {
      const std::size_t stop = std::min(order.size(), start + config.batch);
      const double weight = 1.0 / double(stop - start);
      EmbeddingModel grads = EmbeddingModel::zeros_like(model);
      for (std::size_t b = start; b < stop; ++b) {
        const double loss = accumulate_gradient(model, datasets[order[b]].signal, weight, grads);
        if (!std::isfinite(loss)) {
          throw NumericError("non-finite training loss at epoch " + std::to_string(epoch));
        }
      }
      numerics::adam_step(params, grads.parameters(), adam);
    }
    record(epoch);
  }
  return result;
}

TrainResult train(const std::vector<SubjectDataset>& datasets, const EmbeddingConfig& config) {
  return train(datasets, EmbeddingModel::init(config));
}

}  // namespace syncact::embedding
