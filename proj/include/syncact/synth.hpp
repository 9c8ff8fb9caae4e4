#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "syncact/activations.hpp"
#include "syncact/matching.hpp"
#include "syncact/matrix.hpp"

namespace syncact::synth {

struct SynthConfig {
  std::size_t subjects = 12;
  std::size_t t = 200;
  std::size_t n = 500;
  std::size_t m = 8;
  std::size_t c = 16;
  double sigma_brain = 0.5;
  double sigma_filter = 0.5;
  // Latent source i drives filter channel permutation[i]. Drawn from the
  // seed when empty.
  std::vector<std::size_t> permutation;
  std::uint64_t seed = 42;
  // Sinusoids per latent source and their frequency band, cycles per sample.
  std::size_t components = 6;
  double min_frequency = 0.005;
  double max_frequency = 0.08;

  void validate() const;
};

struct SynthDataset {
  std::vector<Matrix> subjects;  // each t × n, z-normalized per voxel
  activations::FilterActivationMatrix filters;  // t × c, z-normalized
  std::vector<std::size_t> permutation;
  Matrix latent;  // t × m, z-normalized
  Matrix mixing;  // n × m
};

// Latent sources are sums of random sinusoids. Every subject sees the same
// sources through the same mixing plus independent noise of std sigma_brain;
// channel permutation[i] carries source i plus noise of std sigma_filter, the
// other channels carry unit Gaussian noise.
SynthDataset generate(const SynthConfig& config);

// Maps each latent source to the FBN with the largest |PCC| and counts the
// sources whose FBN was paired with filter permutation[i]. Returns the
// fraction in [0, 1].
double score_recovery(const matching::PairingResult& pairing, const std::vector<std::size_t>& truth,
                      const Matrix& latent, const Matrix& fbn_activations);

}  // namespace syncact::synth
