#include "syncact/synth.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <string>

#include "syncact/embedding.hpp"
#include "syncact/errors.hpp"
#include "syncact/rng.hpp"

namespace syncact::synth {

void SynthConfig::validate() const {
  if (subjects == 0) throw InputError("synthetic dataset needs at least one subject");
  if (t < 3) throw InputError("synthetic series need at least 3 time points");
  if (m == 0 || m > n || m > c) throw InputError("need 0 < m <= min(n, c)");
  if (!(sigma_brain >= 0.0) || !(sigma_filter >= 0.0)) throw InputError("noise std must be >= 0");
  if (components == 0 || !(min_frequency > 0.0) || !(max_frequency >= min_frequency) ||
      max_frequency > 0.5) {
    throw InputError("source frequency band must satisfy 0 < min <= max <= 0.5");
  }
  if (!permutation.empty()) {
    if (permutation.size() != m) throw InputError("permutation must have m entries");
    std::set<std::size_t> seen;
    for (auto p : permutation) {
      if (p >= c) throw InputError("permutation target " + std::to_string(p) + " >= c");
      if (!seen.insert(p).second) throw InputError("permutation is not injective");
    }
  }
}

SynthDataset generate(const SynthConfig& config) {
  config.validate();
  Rng rng(config.seed);
  SynthDataset out;

  Matrix latent(config.t, config.m);
  for (std::size_t i = 0; i < config.m; ++i) {
    for (std::size_t k = 0; k < config.components; ++k) {
      const double freq = rng.uniform(config.min_frequency, config.max_frequency);
      const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const double amp = rng.normal();
      for (std::size_t s = 0; s < config.t; ++s) {
        latent(s, i) += amp * std::sin(2.0 * std::numbers::pi * freq * double(s) + phase);
      }
    }
  }
  out.latent = embedding::znormalize(latent).values;
  out.mixing = rng.normal_matrix(config.n, config.m);

  if (config.permutation.empty()) {
    std::vector<std::size_t> channels(config.c);
    std::iota(channels.begin(), channels.end(), 0);
    rng.shuffle(channels.begin(), channels.end());
    out.permutation.assign(channels.begin(), channels.begin() + static_cast<std::ptrdiff_t>(config.m));
  } else {
    out.permutation = config.permutation;
  }

  const Matrix clean = matmul_nt(out.latent, out.mixing);
  for (std::size_t s = 0; s < config.subjects; ++s) {
    Matrix signal = clean;
    if (config.sigma_brain > 0.0) signal += rng.normal_matrix(config.t, config.n, config.sigma_brain);
    out.subjects.push_back(embedding::znormalize(signal).values);
  }

  Matrix filters = rng.normal_matrix(config.t, config.c);
  for (std::size_t i = 0; i < config.m; ++i) {
    const std::size_t ch = out.permutation[i];
    for (std::size_t s = 0; s < config.t; ++s) {
      filters(s, ch) = out.latent(s, i);
      if (config.sigma_filter > 0.0) filters(s, ch) += config.sigma_filter * rng.normal();
    }
  }
  out.filters.values = embedding::znormalize(filters).values;
  out.filters.normalized = true;
  return out;
}

double score_recovery(const matching::PairingResult& pairing, const std::vector<std::size_t>& truth,
                      const Matrix& latent, const Matrix& fbn_activations) {
  if (pairing.direction != matching::Direction::kFbnToFilter) {
    throw InputError("recovery is scored on FBN-to-filter pairings");
  }
  if (truth.size() != latent.cols()) throw InputError("truth size does not match latent sources");
  if (latent.rows() != fbn_activations.rows()) {
    throw InputError("latent sources and FBN activations differ in length");
  }
  if (pairing.pairs.size() != fbn_activations.cols()) {
    throw InputError("pairing has " + std::to_string(pairing.pairs.size()) + " sources but there are " +
                     std::to_string(fbn_activations.cols()) + " FBNs");
  }
  if (truth.empty()) throw InputError("no latent sources to score");

  const auto corr = matching::correlation_matrix(latent, fbn_activations);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    std::size_t best = 0;
    double best_abs = -1.0;
    for (std::size_t j = 0; j < fbn_activations.cols(); ++j) {
      const double a = std::abs(corr.r(i, j));
      if (!std::isnan(a) && a > best_abs) {
        best_abs = a;
        best = j;
      }
    }
    const auto& pair = pairing.pairs[best];
    if (best_abs >= 0.0 && pair.paired && pair.target == truth[i]) ++correct;
  }
  return double(correct) / double(truth.size());
}

}  // namespace syncact::synth
