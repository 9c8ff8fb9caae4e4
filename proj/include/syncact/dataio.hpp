#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "syncact/embedding.hpp"
#include "syncact/matching.hpp"
#include "syncact/tensor.hpp"

namespace syncact::dataio {

// ---------------------------------------------------------------------------
// .npy tensors

enum class DType { kFloat32, kFloat64 };

struct NpyHeader {
  DType dtype = DType::kFloat64;
  bool big_endian = false;
  bool fortran_order = false;
  std::vector<std::size_t> shape;
  std::size_t data_offset = 0;  // byte offset of the first element
};

// Parses and checks the header; also checks that the remaining byte count
// matches the declared shape exactly. Throws FormatError with a byte offset.
NpyHeader parse_npy_header(std::span<const std::uint8_t> bytes);

Tensor decode_npy(std::span<const std::uint8_t> bytes);
// C-order little-endian float64, header padded to a 64-byte boundary.
std::vector<std::uint8_t> encode_npy(const Tensor& tensor);

Tensor read_tensor(const std::filesystem::path& path);
void write_tensor(const std::filesystem::path& path, const Tensor& tensor);
void write_matrix(const std::filesystem::path& path, const Matrix& m);
// Reads a rank-2 tensor; other ranks are a shape error.
Matrix read_matrix(const std::filesystem::path& path);
// Validates only the header and size of a tensor file.
NpyHeader check_tensor_file(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Label tables: UTF-8 CSV with header `id,description`.

matching::LabelTable parse_labels(std::string_view text);
matching::LabelTable read_labels(const std::filesystem::path& path);
void write_labels(const std::filesystem::path& path, const matching::LabelTable& labels);

// ---------------------------------------------------------------------------
// Manifests

// Overrides the directory that relative manifest paths resolve against.
inline constexpr const char* kDataRootEnv = "SYNCACT_DATA_ROOT";

struct SubjectEntry {
  std::string id;
  embedding::Split split = embedding::Split::kTrain;
  std::filesystem::path signal;
};

enum class ActivationKind { kFeatureMaps, kActivations };

struct ActivationEntry {
  std::string name;
  std::string model;
  std::string layer;
  ActivationKind kind = ActivationKind::kFeatureMaps;
  std::filesystem::path path;
};

struct SplitFractions {
  double train = 0.0;
  double val = 0.0;
  double test = 0.0;
};

struct Manifest {
  std::string name;
  double tr_seconds = 1.0;
  std::vector<SubjectEntry> subjects;
  std::vector<ActivationEntry> activations;
  std::map<std::string, std::filesystem::path> labels;

  SplitFractions split_fractions() const;
};

// Parses an INI manifest and resolves relative paths against `root`. Does not
// touch referenced files.
Manifest parse_manifest(std::string_view text, const std::filesystem::path& root);

// Loads a manifest, resolving paths against $SYNCACT_DATA_ROOT or the
// manifest's directory, then checks that every referenced file exists and that
// every tensor header is valid before returning.
Manifest load_manifest(const std::filesystem::path& path);

// Writes paths relative to the manifest's directory when possible.
void write_manifest(const std::filesystem::path& path, const Manifest& manifest);

// First round(0.6·count) subjects train, next round(0.1·count) validate, rest test.
std::vector<embedding::Split> assign_splits(std::size_t count);

// Reads every subject signal and z-normalizes each voxel column.
std::vector<embedding::SubjectDataset> load_subjects(const Manifest& manifest);

}  // namespace syncact::dataio
