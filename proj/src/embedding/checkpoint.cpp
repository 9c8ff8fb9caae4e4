#include <string>

#include "syncact/bytes.hpp"
#include "syncact/embedding.hpp"
#include "syncact/errors.hpp"

namespace syncact::embedding {
namespace {

constexpr std::string_view kMagic = "SACTCKPT";
constexpr std::uint32_t kVersion = 1;

}  // namespace

// Layout: magic, u32 version, config block, u32 tensor count, then for each
// tensor (in parameters() order) u32 name length, name, u64 rows, u64 cols
// and rows·cols f64 values. All integers and floats little-endian.
std::vector<std::uint8_t> serialize_model(const EmbeddingModel& model) {
  model.validate();
  ByteWriter w;
  w.put_bytes(kMagic);
  w.put<std::uint32_t>(kVersion);
  const auto& c = model.config;
  w.put<std::uint32_t>(static_cast<std::uint32_t>(c.variant));
  w.put<std::uint64_t>(c.voxels);
  w.put<std::uint64_t>(c.fbns);
  w.put<double>(c.lr);
  w.put<std::uint64_t>(c.epochs);
  w.put<std::uint64_t>(c.batch);
  w.put<double>(c.beta1);
  w.put<double>(c.beta2);
  w.put<double>(c.eps);
  w.put<std::uint64_t>(c.seed);
  w.put<std::uint64_t>(c.heads);
  w.put<std::uint64_t>(c.lstm_layers);
  w.put<std::uint8_t>(c.positional_encoding ? 1 : 0);
  w.put<std::uint8_t>(c.residual ? 1 : 0);

  EmbeddingModel copy = model;
  const auto params = copy.parameters();
  w.put<std::uint32_t>(static_cast<std::uint32_t>(params.size()));
  for (const auto& p : params) {
    w.put<std::uint32_t>(static_cast<std::uint32_t>(p.name.size()));
    w.put_bytes(p.name);
    w.put<std::uint64_t>(p.value->rows());
    w.put<std::uint64_t>(p.value->cols());
    for (double v : p.value->data()) w.put<double>(v);
  }
  return std::move(w.bytes());
}

EmbeddingModel deserialize_model(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  if (r.get_bytes(kMagic.size()) != kMagic) throw FormatError("bad checkpoint magic at offset 0");
  const auto version_offset = r.offset();
  const auto version = r.get<std::uint32_t>();
  if (version != kVersion) {
    throw FormatError("unsupported checkpoint version " + std::to_string(version) + " at offset " +
                      std::to_string(version_offset));
  }
  EmbeddingConfig c;
  const auto variant_offset = r.offset();
  const auto variant = r.get<std::uint32_t>();
  if (variant > static_cast<std::uint32_t>(Variant::kLtMsa)) {
    throw FormatError("bad variant tag at offset " + std::to_string(variant_offset));
  }
  c.variant = static_cast<Variant>(variant);
  c.voxels = r.get<std::uint64_t>();
  c.fbns = r.get<std::uint64_t>();
  c.lr = r.get<double>();
  c.epochs = r.get<std::uint64_t>();
  c.batch = r.get<std::uint64_t>();
  c.beta1 = r.get<double>();
  c.beta2 = r.get<double>();
  c.eps = r.get<double>();
  c.seed = r.get<std::uint64_t>();
  c.heads = r.get<std::uint64_t>();
  c.lstm_layers = r.get<std::uint64_t>();
  c.positional_encoding = r.get<std::uint8_t>() != 0;
  c.residual = r.get<std::uint8_t>() != 0;
  try {
    c.validate();
  } catch (const Error& e) {
    throw FormatError(std::string("checkpoint config invalid: ") + e.what());
  }

  // init() builds the parameter skeleton; every tensor is then overwritten.
  EmbeddingModel model = EmbeddingModel::init(c);
  auto params = model.parameters();
  const auto count_offset = r.offset();
  const auto count = r.get<std::uint32_t>();
  if (count != params.size()) {
    throw FormatError("checkpoint has " + std::to_string(count) + " tensors, expected " +
                      std::to_string(params.size()) + " (offset " + std::to_string(count_offset) + ")");
  }
  for (auto& p : params) {
    const auto at = r.offset();
    const auto name = r.get_bytes(r.get<std::uint32_t>());
    const auto rows = r.get<std::uint64_t>();
    const auto cols = r.get<std::uint64_t>();
    if (name != p.name || rows != p.value->rows() || cols != p.value->cols()) {
      throw FormatError("checkpoint tensor '" + name + "' at offset " + std::to_string(at) +
                        " does not match expected '" + p.name + "'");
    }
    r.require(rows * cols * sizeof(double));
    for (double& v : p.value->data()) v = r.get<double>();
  }
  if (r.remaining() != 0) {
    throw FormatError("trailing bytes after checkpoint at offset " + std::to_string(r.offset()));
  }
  return model;
}

void save_checkpoint(const std::filesystem::path& path, const EmbeddingModel& model) {
  write_file_bytes(path.string(), serialize_model(model));
}

EmbeddingModel load_checkpoint(const std::filesystem::path& path) {
  return deserialize_model(read_file_bytes(path.string()));
}

}  // namespace syncact::embedding
