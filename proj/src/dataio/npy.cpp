#include <algorithm>
#include <cmath>
#include <cstring>
#include <regex>
#include <string>

#include "syncact/bytes.hpp"
#include "syncact/dataio.hpp"
#include "syncact/errors.hpp"

namespace syncact::dataio {
namespace {

constexpr std::string_view kMagic = "\x93NUMPY";

std::string at(std::size_t offset) { return " at offset " + std::to_string(offset); }

}  // namespace

NpyHeader parse_npy_header(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  if (r.remaining() < kMagic.size() || r.get_bytes(kMagic.size()) != kMagic) {
    throw FormatError("bad .npy magic" + at(0));
  }
  const auto version_at = r.offset();
  const auto major = r.get<std::uint8_t>();
  const auto minor = r.get<std::uint8_t>();
  if (major < 1 || major > 3 || minor != 0) {
    throw FormatError("unsupported .npy version " + std::to_string(major) + "." +
                      std::to_string(minor) + at(version_at));
  }
  const std::size_t header_len =
      major == 1 ? std::size_t{r.get<std::uint16_t>()} : std::size_t{r.get<std::uint32_t>()};
  const auto header_at = r.offset();
  const std::string header = r.get_bytes(header_len);

  NpyHeader h;
  h.data_offset = r.offset();

  static const std::regex descr_re(R"('descr'\s*:\s*'([<>=|])([a-zA-Z])(\d+)')");
  static const std::regex fortran_re(R"('fortran_order'\s*:\s*(True|False))");
  static const std::regex shape_re(R"('shape'\s*:\s*\(([^)]*)\))");
  std::smatch m;
  if (!std::regex_search(header, m, descr_re)) throw FormatError("missing 'descr' in .npy header" + at(header_at));
  const std::string order = m[1];
  const std::string kind = m[2];
  const std::string width = m[3];
  if (kind != "f" || (width != "4" && width != "8")) {
    throw FormatError("unsupported dtype '" + order + kind + width + "' (float32/float64 only)" + at(header_at));
  }
  h.dtype = width == "4" ? DType::kFloat32 : DType::kFloat64;
  h.big_endian = order == ">";
  if (!std::regex_search(header, m, fortran_re)) {
    throw FormatError("missing 'fortran_order' in .npy header" + at(header_at));
  }
  h.fortran_order = m[1] == "True";
  if (!std::regex_search(header, m, shape_re)) throw FormatError("missing 'shape' in .npy header" + at(header_at));
  const std::string dims = m[1];
  static const std::regex dim_re(R"(\s*(\d+)\s*(,|$))");
  std::size_t consumed = 0;
  for (auto it = std::sregex_iterator(dims.begin(), dims.end(), dim_re); it != std::sregex_iterator(); ++it) {
    if (static_cast<std::size_t>(it->position()) != consumed) break;
    h.shape.push_back(std::stoull((*it)[1]));
    consumed += static_cast<std::size_t>(it->length());
  }
  if (dims.find_first_not_of(" \t") != std::string::npos && consumed != dims.size()) {
    throw FormatError("malformed shape '(" + dims + ")'" + at(header_at));
  }

  const std::size_t item = h.dtype == DType::kFloat32 ? 4 : 8;
  const std::size_t expected = Tensor::element_count(h.shape) * item;
  if (r.remaining() < expected) {
    throw FormatError("truncated .npy data: expected " + std::to_string(expected) + " bytes, found " +
                      std::to_string(r.remaining()) + at(h.data_offset));
  }
  if (r.remaining() > expected) {
    throw FormatError("trailing bytes after .npy data" + at(h.data_offset + expected));
  }
  return h;
}

Tensor decode_npy(std::span<const std::uint8_t> bytes) {
  const NpyHeader h = parse_npy_header(bytes);
  const std::size_t count = Tensor::element_count(h.shape);
  const std::size_t item = h.dtype == DType::kFloat32 ? 4 : 8;
  std::vector<double> values(count);
  const std::uint8_t* src = bytes.data() + h.data_offset;
  const bool swap = h.big_endian != (std::endian::native == std::endian::big);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint8_t raw[8];
    std::memcpy(raw, src + i * item, item);
    if (swap) std::reverse(raw, raw + item);
    if (item == 4) {
      float f;
      std::memcpy(&f, raw, 4);
      values[i] = static_cast<double>(f);
    } else {
      std::memcpy(&values[i], raw, 8);
    }
  }
  if (h.fortran_order && h.shape.size() > 1) {
    // Column-major: the first index varies fastest.
    std::vector<double> c_order(count);
    std::vector<std::size_t> index(h.shape.size(), 0);
    for (std::size_t f = 0; f < count; ++f) {
      std::size_t c = 0;
      for (std::size_t d = 0; d < h.shape.size(); ++d) c = c * h.shape[d] + index[d];
      c_order[c] = values[f];
      for (std::size_t d = 0; d < h.shape.size(); ++d) {
        if (++index[d] < h.shape[d]) break;
        index[d] = 0;
      }
    }
    values = std::move(c_order);
  }
  return Tensor(h.shape, std::move(values));
}

std::vector<std::uint8_t> encode_npy(const Tensor& tensor) {
  if (tensor.data.size() != Tensor::element_count(tensor.shape)) {
    throw ShapeError("tensor data does not match its shape");
  }
  for (double v : tensor.data) {
    if (!std::isfinite(v)) throw NumericError("refusing to write a non-finite tensor value");
  }
  std::string shape = "(";
  for (std::size_t i = 0; i < tensor.shape.size(); ++i) {
    shape += std::to_string(tensor.shape[i]);
    if (tensor.shape.size() == 1 || i + 1 < tensor.shape.size()) shape += ",";
    if (i + 1 < tensor.shape.size()) shape += " ";
  }
  shape += ")";
  std::string header = "{'descr': '<f8', 'fortran_order': False, 'shape': " + shape + ", }";
  const std::size_t prefix = kMagic.size() + 2 + 2;
  const std::size_t total = (prefix + header.size() + 1 + 63) / 64 * 64;
  header.append(total - prefix - header.size() - 1, ' ');
  header += '\n';
  if (header.size() > 0xFFFF) throw FormatError("tensor header too long for .npy v1.0");

  ByteWriter w;
  w.put_bytes(kMagic);
  w.put<std::uint8_t>(1);
  w.put<std::uint8_t>(0);
  w.put<std::uint16_t>(static_cast<std::uint16_t>(header.size()));
  w.put_bytes(header);
  for (double v : tensor.data) w.put<double>(v);
  return std::move(w.bytes());
}

Tensor read_tensor(const std::filesystem::path& path) {
  try {
    return decode_npy(read_file_bytes(path.string()));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_tensor(const std::filesystem::path& path, const Tensor& tensor) {
  write_file_bytes(path.string(), encode_npy(tensor));
}

void write_matrix(const std::filesystem::path& path, const Matrix& m) {
  write_tensor(path, Tensor::from_matrix(m));
}

Matrix read_matrix(const std::filesystem::path& path) {
  const Tensor t = read_tensor(path);
  if (t.rank() != 2) {
    throw ShapeError(path.string() + ": expected a 2-D tensor, got rank " + std::to_string(t.rank()));
  }
  return t.to_matrix();
}

NpyHeader check_tensor_file(const std::filesystem::path& path) {
  try {
    return parse_npy_header(read_file_bytes(path.string()));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace syncact::dataio
