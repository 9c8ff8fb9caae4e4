#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "syncact/bytes.hpp"
#include "syncact/dataio.hpp"
#include "syncact/errors.hpp"

namespace syncact::dataio {
namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace {

constexpr std::string_view kSubjectPrefix = "subject:";
constexpr std::string_view kActivationPrefix = "activation:";

std::string required(const pt::ptree& section, const std::string& section_name, const char* key) {
  auto v = section.get_child_optional(pt::ptree::path_type(key, '\0'));
  if (!v || v->data().empty()) {
    throw ParseError("manifest section [" + section_name + "] is missing '" + key + "'");
  }
  return v->data();
}

fs::path resolve(const fs::path& root, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : root / path;
}

std::string relative_to(const fs::path& p, const fs::path& base) {
  if (base.empty()) return p.generic_string();
  std::error_code ec;
  const auto rel = fs::relative(p, base, ec);
  return (ec || rel.empty()) ? p.generic_string() : rel.generic_string();
}

}  // namespace

SplitFractions Manifest::split_fractions() const {
  SplitFractions f;
  if (subjects.empty()) return f;
  for (const auto& s : subjects) {
    if (s.split == embedding::Split::kTrain) f.train += 1.0;
    if (s.split == embedding::Split::kVal) f.val += 1.0;
    if (s.split == embedding::Split::kTest) f.test += 1.0;
  }
  const double n = double(subjects.size());
  return {f.train / n, f.val / n, f.test / n};
}

Manifest parse_manifest(std::string_view text, const fs::path& root) {
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError("manifest line " + std::to_string(e.line()) + ": " + e.message());
  }

  Manifest m;
  for (const auto& [section, body] : tree) {
    if (section == "dataset") {
      m.name = body.get<std::string>(pt::ptree::path_type("name", '\0'), "");
      const auto tr = body.get<std::string>(pt::ptree::path_type("tr_seconds", '\0'), "1");
      try {
        m.tr_seconds = std::stod(tr);
      } catch (const std::exception&) {
        throw ParseError("manifest tr_seconds '" + tr + "' is not a number");
      }
      if (!(m.tr_seconds > 0.0)) throw ParseError("manifest tr_seconds must be positive");
    } else if (section.starts_with(kSubjectPrefix)) {
      SubjectEntry s;
      s.id = section.substr(kSubjectPrefix.size());
      try {
        s.split = embedding::parse_split(required(body, section, "split"));
      } catch (const InputError& e) {
        throw ParseError("manifest [" + section + "]: " + e.what());
      }
      s.signal = resolve(root, required(body, section, "signal"));
      m.subjects.push_back(std::move(s));
    } else if (section.starts_with(kActivationPrefix)) {
      ActivationEntry a;
      a.name = section.substr(kActivationPrefix.size());
      a.model = required(body, section, "model");
      a.layer = required(body, section, "layer");
      const auto kind = required(body, section, "kind");
      if (kind == "feature_maps") {
        a.kind = ActivationKind::kFeatureMaps;
      } else if (kind == "activations") {
        a.kind = ActivationKind::kActivations;
      } else {
        throw ParseError("manifest [" + section + "]: kind must be feature_maps or activations");
      }
      a.path = resolve(root, required(body, section, "path"));
      m.activations.push_back(std::move(a));
    } else if (section == "labels") {
      for (const auto& [key, value] : body) m.labels[key] = resolve(root, value.data());
    } else {
      throw ParseError("manifest has unknown section [" + section + "]");
    }
  }
  return m;
}

Manifest load_manifest(const fs::path& path) {
  const auto bytes = read_file_bytes(path.string());
  fs::path root = path.parent_path();
  if (const char* env = std::getenv(kDataRootEnv); env != nullptr && *env != '\0') root = env;
  Manifest m = parse_manifest(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()),
                              root);

  for (const auto& s : m.subjects) {
    if (!fs::exists(s.signal)) throw IoError("subject " + s.id + ": missing file " + s.signal.string());
    const auto h = check_tensor_file(s.signal);
    if (h.shape.size() != 2) {
      throw FormatError(s.signal.string() + ": subject signal must be 2-D (time x voxels)");
    }
  }
  for (const auto& a : m.activations) {
    if (!fs::exists(a.path)) throw IoError("activation " + a.name + ": missing file " + a.path.string());
    const auto h = check_tensor_file(a.path);
    const std::size_t rank = a.kind == ActivationKind::kFeatureMaps ? 4 : 2;
    if (h.shape.size() != rank) {
      throw FormatError(a.path.string() + ": expected rank " + std::to_string(rank) + ", found " +
                        std::to_string(h.shape.size()));
    }
  }
  for (const auto& [key, p] : m.labels) {
    if (!fs::exists(p)) throw IoError("label table " + key + ": missing file " + p.string());
  }
  return m;
}

void write_manifest(const fs::path& path, const Manifest& manifest) {
  const fs::path base = path.parent_path();
  std::ostringstream out;
  out << "[dataset]\n"
      << "name = " << manifest.name << "\n"
      << "tr_seconds = " << manifest.tr_seconds << "\n";
  for (const auto& s : manifest.subjects) {
    out << "\n[" << kSubjectPrefix << s.id << "]\n"
        << "split = " << embedding::split_name(s.split) << "\n"
        << "signal = " << relative_to(s.signal, base) << "\n";
  }
  for (const auto& a : manifest.activations) {
    out << "\n[" << kActivationPrefix << a.name << "]\n"
        << "model = " << a.model << "\n"
        << "layer = " << a.layer << "\n"
        << "kind = " << (a.kind == ActivationKind::kFeatureMaps ? "feature_maps" : "activations") << "\n"
        << "path = " << relative_to(a.path, base) << "\n";
  }
  if (!manifest.labels.empty()) {
    out << "\n[labels]\n";
    for (const auto& [key, p] : manifest.labels) out << key << " = " << relative_to(p, base) << "\n";
  }
  const std::string text = out.str();
  write_file_bytes(path.string(),
                   std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::vector<embedding::Split> assign_splits(std::size_t count) {
  const auto train = static_cast<std::size_t>(std::lround(0.6 * double(count)));
  const auto val = std::min(count - train, static_cast<std::size_t>(std::lround(0.1 * double(count))));
  std::vector<embedding::Split> out(count, embedding::Split::kTest);
  for (std::size_t i = 0; i < train; ++i) out[i] = embedding::Split::kTrain;
  for (std::size_t i = train; i < train + val; ++i) out[i] = embedding::Split::kVal;
  return out;
}

std::vector<embedding::SubjectDataset> load_subjects(const Manifest& manifest) {
  std::vector<embedding::SubjectDataset> out;
  for (const auto& s : manifest.subjects) {
    out.push_back({s.id, embedding::znormalize(read_matrix(s.signal)).values, s.split});
  }
  return out;
}

}  // namespace syncact::dataio
