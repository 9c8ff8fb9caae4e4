#include "syncact/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "syncact/activations.hpp"
#include "syncact/analysis.hpp"
#include "syncact/bytes.hpp"
#include "syncact/dataio.hpp"
#include "syncact/embedding.hpp"
#include "syncact/errors.hpp"
#include "syncact/matching.hpp"
#include "syncact/rng.hpp"
#include "syncact/synth.hpp"
#include "syncact/text.hpp"

namespace syncact::cli {
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  write_file_bytes(path.string(), std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string read_text(const fs::path& path) {
  const auto bytes = read_file_bytes(path.string());
  return {reinterpret_cast<const char*>(bytes.data()), bytes.size()};
}

json parse_json_file(const fs::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_or_nan(const json& j) { return j.is_null() ? std::nan("") : j.get<double>(); }

// Accepts either a T×C activation matrix or T×C×H×W feature maps.
Matrix load_filter_matrix(const fs::path& path) {
  Tensor t = dataio::read_tensor(path);
  if (t.rank() == 4) return activations::filter_activations({std::move(t), "", ""}).values;
  if (t.rank() == 2) return t.to_matrix();
  throw InputError(path.string() + ": expected a 2-D activation matrix or 4-D feature maps");
}

// ---------------------------------------------------------------------------

struct SynthOptions {
  synth::SynthConfig config;
  std::string out;
};

void cmd_synth(const SynthOptions& o, std::uint64_t seed, std::ostream& log) {
  synth::SynthConfig config = o.config;
  config.seed = seed;
  const auto data = synth::generate(config);
  const fs::path dir(o.out);

  dataio::Manifest manifest;
  manifest.name = "synthetic";
  manifest.tr_seconds = 1.0;
  const auto splits = dataio::assign_splits(data.subjects.size());
  for (std::size_t s = 0; s < data.subjects.size(); ++s) {
    const std::string id = fmt::format("s{:02d}", s);
    const fs::path file = dir / "subjects" / (id + ".npy");
    dataio::write_matrix(file, data.subjects[s]);
    manifest.subjects.push_back({id, splits[s], file});
  }

  // Feature maps whose per-channel spatial max is the planted activation.
  const std::size_t frames = data.filters.values.rows();
  const std::size_t channels = data.filters.values.cols();
  Tensor maps({frames, channels, 2, 2});
  Rng rng(seed ^ 0xF00DULL);
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t c = 0; c < channels; ++c) {
      double* cell = maps.data.data() + (t * channels + c) * 4;
      const double peak = data.filters.values(t, c);
      cell[0] = peak;
      for (int k = 1; k < 4; ++k) cell[k] = peak - (1.0 - rng.uniform());
    }
  }
  const fs::path maps_file = dir / "filters" / "synthetic_conv.npy";
  dataio::write_tensor(maps_file, maps);
  manifest.activations.push_back(
      {"synthetic/conv", "synthetic", "conv", dataio::ActivationKind::kFeatureMaps, maps_file});

  matching::LabelTable fbn_labels;
  for (std::size_t i = 0; i < config.m; ++i) fbn_labels.entries[i] = fmt::format("synthetic FBN #{}", i);
  matching::LabelTable filter_labels;
  for (std::size_t c = 0; c < channels; ++c) filter_labels.entries[c] = "noise channel";
  for (std::size_t i = 0; i < data.permutation.size(); ++i) {
    filter_labels.entries[data.permutation[i]] = fmt::format("planted source {}", i);
  }
  dataio::write_labels(dir / "labels" / "fbn.csv", fbn_labels);
  dataio::write_labels(dir / "labels" / "filter.csv", filter_labels);
  manifest.labels["fbn"] = dir / "labels" / "fbn.csv";
  manifest.labels["filter"] = dir / "labels" / "filter.csv";

  dataio::write_matrix(dir / "latent.npy", data.latent);
  json truth;
  truth["permutation"] = data.permutation;
  truth["latent"] = "latent.npy";
  truth["seed"] = seed;
  truth["sigma_brain"] = config.sigma_brain;
  truth["sigma_filter"] = config.sigma_filter;
  write_text(dir / kTruthFile, truth.dump(2) + "\n");
  dataio::write_manifest(dir / kManifestFile, manifest);

  const auto f = manifest.split_fractions();
  log << fmt::format("wrote {} subjects (train {:.2f} / val {:.2f} / test {:.2f}) to {}\n",
                     data.subjects.size(), f.train, f.val, f.test, dir.string());
}

// ---------------------------------------------------------------------------

struct TrainOptions {
  std::string manifest;
  std::string variant = "lt+msa";
  std::size_t fbns = 64;
  std::size_t epochs = 100;
  std::size_t batch = 16;
  double lr = 0.01;
  std::size_t heads = 4;
  std::size_t lstm_layers = 2;
  bool no_positional = false;
  std::string out;
};

void cmd_train(const TrainOptions& o, std::uint64_t seed, std::ostream& log) {
  const auto manifest = dataio::load_manifest(o.manifest);
  const auto subjects = dataio::load_subjects(manifest);
  if (subjects.empty()) throw InputError("manifest lists no subjects");

  embedding::EmbeddingConfig config;
  config.voxels = subjects.front().signal.cols();
  config.fbns = o.fbns;
  config.variant = embedding::parse_variant(o.variant);
  config.lr = o.lr;
  config.epochs = o.epochs;
  config.batch = o.batch;
  config.seed = seed;
  config.heads = o.heads;
  config.lstm_layers = o.lstm_layers;
  config.positional_encoding = !o.no_positional;

  const auto result = embedding::train(subjects, config);
  const fs::path dir(o.out);
  embedding::save_checkpoint(dir / kCheckpointFile, result.model);
  std::string csv = "epoch,train_mse,val_mse\n";
  for (const auto& rec : result.log) {
    csv += fmt::format("{},{:.17g},{}\n", rec.epoch, rec.train_mse,
                       std::isnan(rec.val_mse) ? std::string("nan") : fmt::format("{:.17g}", rec.val_mse));
  }
  write_text(dir / kTrainingLogFile, csv);
  log << fmt::format("trained {} (n={}, m={}) for {} epochs: train MSE {:.6f} -> {:.6f}\n",
                     embedding::variant_name(config.variant), config.voxels, config.fbns, config.epochs,
                     result.log.front().train_mse, result.log.back().train_mse);
}

// ---------------------------------------------------------------------------

struct EmbedOptions {
  std::string manifest;
  std::string checkpoint;
  std::string split = "test";
  std::string out;
};

void cmd_embed(const EmbedOptions& o, std::ostream& log) {
  const auto manifest = dataio::load_manifest(o.manifest);
  const auto model = embedding::load_checkpoint(o.checkpoint);
  const auto subjects = dataio::load_subjects(manifest);
  const auto split = embedding::parse_split(o.split);
  const auto averaged = embedding::average_activations(model, subjects, split);
  dataio::write_matrix(fs::path(o.out) / kFbnActivationsFile, averaged.values);
  log << fmt::format("averaged {} x {} FBN activations over '{}' subjects\n", averaged.values.rows(),
                     averaged.values.cols(), o.split);
}

// ---------------------------------------------------------------------------

struct ExtractOptions {
  std::string input;
  std::string output;
  std::string manifest;
  std::string out;
};

void cmd_extract(const ExtractOptions& o, std::ostream& log) {
  auto reduce = [&](const fs::path& in, const fs::path& out) {
    Tensor t = dataio::read_tensor(in);
    const auto a = activations::filter_activations({std::move(t), "", ""});
    dataio::write_matrix(out, a.values);
    log << fmt::format("{} -> {} ({} x {})\n", in.string(), out.string(), a.values.rows(), a.values.cols());
  };
  if (!o.input.empty()) {
    if (o.output.empty()) throw InputError("--input needs --output");
    reduce(o.input, o.output);
    return;
  }
  if (o.manifest.empty() || o.out.empty()) throw InputError("extract needs --input/--output or --manifest/--out");
  const auto manifest = dataio::load_manifest(o.manifest);
  for (const auto& a : manifest.activations) {
    if (a.kind != dataio::ActivationKind::kFeatureMaps) continue;
    reduce(a.path, fs::path(o.out) / fmt::format("{}_{}.npy", a.model, a.layer));
  }
}

// ---------------------------------------------------------------------------

struct PairOptions {
  std::string fbn;
  std::string filters;
  std::string direction = "fbn-to-filter";
  double alpha = 0.05;
  int lag = 0;
  std::string model = "model";
  std::string layer = "layer";
  std::string run = "run";
  std::string truth;
  std::string out;
};

void cmd_pair(const PairOptions& o, std::size_t threads, std::ostream& log) {
  const Matrix fbn = dataio::read_matrix(o.fbn);
  const Matrix filters = load_filter_matrix(o.filters);
  if (fbn.rows() != filters.rows()) {
    throw InputError(fmt::format("FBN activations have {} time points but filter activations have {}",
                                 fbn.rows(), filters.rows()));
  }
  const auto aligned = activations::align({filters, false, 0}, {fbn}, o.lag);
  const auto corr = matching::correlation_matrix(aligned.fbns.values, aligned.filters.values, threads);
  const auto direction = matching::parse_direction(o.direction);
  const auto result = matching::pair_neurons(corr, direction, o.alpha);

  json j;
  j["model"] = o.model;
  j["layer"] = o.layer;
  j["run"] = o.run;
  j["direction"] = matching::direction_name(direction);
  j["alpha"] = o.alpha;
  j["lag"] = o.lag;
  j["length"] = corr.length;
  j["mean_r"] = number_or_null(result.mean_r);
  j["nonsignificant"] = result.nonsignificant;
  j["unpaired"] = result.unpaired;
  j["ratio"] = result.ratio();
  json pairs = json::array();
  for (const auto& p : result.pairs) {
    json e;
    e["source"] = p.source;
    e["target"] = p.paired ? json(p.target) : json(nullptr);
    e["r"] = number_or_null(p.r);
    e["p"] = number_or_null(p.p);
    e["paired"] = p.paired;
    pairs.push_back(e);
  }
  j["pairs"] = pairs;

  if (!o.truth.empty()) {
    const json truth = parse_json_file(o.truth);
    const auto permutation = truth.at("permutation").get<std::vector<std::size_t>>();
    const Matrix latent =
        dataio::read_matrix(fs::path(o.truth).parent_path() / truth.at("latent").get<std::string>());
    const auto latent_aligned = activations::align({filters, false, 0}, {latent}, o.lag);
    const double recovery =
        synth::score_recovery(result, permutation, latent_aligned.fbns.values, aligned.fbns.values);
    j["recovery"] = recovery;
    log << fmt::format("planted-coupling recovery {:.4f}\n", recovery);
  }
  write_text(fs::path(o.out) / kPairingFile, j.dump(2) + "\n");
  log << fmt::format("paired {} sources ({}): mean PCC {:.4f}, not significant {}\n", result.pairs.size(),
                     matching::direction_name(direction), result.mean_r, result.ratio());
}

matching::LabeledPairing read_pairing(const fs::path& path) {
  const json j = parse_json_file(path);
  try {
    matching::LabeledPairing lp;
    lp.model = j.at("model").get<std::string>();
    lp.layer = j.at("layer").get<std::string>();
    lp.run = j.at("run").get<std::string>();
    auto& r = lp.result;
    r.direction = matching::parse_direction(j.at("direction").get<std::string>());
    r.alpha = j.at("alpha").get<double>();
    r.mean_r = number_or_nan(j.at("mean_r"));
    r.nonsignificant = j.at("nonsignificant").get<std::size_t>();
    r.unpaired = j.at("unpaired").get<std::size_t>();
    for (const auto& e : j.at("pairs")) {
      matching::NeuronPair p;
      p.source = e.at("source").get<std::size_t>();
      p.paired = e.at("paired").get<bool>();
      p.target = p.paired ? e.at("target").get<std::size_t>() : 0;
      p.r = number_or_nan(e.at("r"));
      p.p = number_or_nan(e.at("p"));
      r.pairs.push_back(p);
    }
    return lp;
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------

struct AnnotateOptions {
  std::string pairing;
  std::string src_labels;
  std::string dst_labels;
  std::string out;
};

void cmd_annotate(const AnnotateOptions& o, std::ostream& log) {
  const auto pairing = read_pairing(o.pairing);
  const matching::LabelTable empty;
  const auto src = o.src_labels.empty() ? empty : dataio::read_labels(o.src_labels);
  const auto dst = o.dst_labels.empty() ? empty : dataio::read_labels(o.dst_labels);
  const auto entries = matching::cross_annotate(pairing.result, src, dst);
  const fs::path dir(o.out);
  write_text(dir / kAnnotationsJsonl, matching::annotations_jsonl(entries));
  write_text(dir / kAnnotationsText, matching::annotations_table(entries));
  log << fmt::format("wrote {} cross-annotations\n", entries.size());
}

// ---------------------------------------------------------------------------

struct ReportOptions {
  std::vector<std::string> pairings;
  std::string out;
};

void cmd_report(const ReportOptions& o, std::ostream& log) {
  std::vector<matching::LabeledPairing> results;
  for (const auto& p : o.pairings) results.push_back(read_pairing(p));
  const auto rows = matching::summarize(results);
  const fs::path dir(o.out);
  write_text(dir / kReportCsv, matching::summary_csv(rows));
  const std::string table = matching::summary_table(rows);
  write_text(dir / kReportText, table);
  log << table;
}

// ---------------------------------------------------------------------------

struct AblateOptions {
  std::vector<std::string> variants;  // NAME=PATH
  std::string filters;
  int lag = 0;
  std::string out;
};

void cmd_ablate(const AblateOptions& o, std::size_t threads, std::ostream& log) {
  const Matrix filters = load_filter_matrix(o.filters);
  std::vector<analysis::VariantMetrics> variants;
  for (const auto& spec : o.variants) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("--variant expects NAME=PATH, got '" + spec + "'");
    const Matrix fbn = dataio::read_matrix(spec.substr(eq + 1));
    if (fbn.rows() != filters.rows()) {
      throw InputError(fmt::format("variant {} has {} time points, filters have {}", spec.substr(0, eq),
                                   fbn.rows(), filters.rows()));
    }
    const auto aligned = activations::align({filters, false, 0}, {fbn}, o.lag);
    const auto corr = matching::correlation_matrix(aligned.fbns.values, aligned.filters.values, threads);
    const auto pairing = matching::pair_neurons(corr, matching::Direction::kFbnToFilter);
    analysis::VariantMetrics vm{spec.substr(0, eq), {}};
    for (const auto& p : pairing.pairs) {
      if (!p.paired) continue;
      vm.bundles.push_back(analysis::pair_metrics(aligned.fbns.values.column(p.source),
                                                  aligned.filters.values.column(p.target)));
    }
    variants.push_back(std::move(vm));
  }
  const auto rows = analysis::ablation_report(variants);
  const fs::path dir(o.out);
  write_text(dir / kAblationCsv, analysis::ablation_csv(rows));
  const std::string table = analysis::ablation_table(rows);
  write_text(dir / kAblationText, table);
  log << table;
}

// ---------------------------------------------------------------------------

struct RegressOptions {
  std::string input;
  std::string out;
};

std::vector<analysis::Point> read_points(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> x_col;
  std::optional<std::size_t> y_col;
  std::vector<analysis::Point> points;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = parse_csv_record(line, line_no);
    if (!x_col) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == "pcc") x_col = i;
        if (fields[i] == "accuracy") y_col = i;
      }
      if (!x_col || !y_col) throw ParseError("line 1: header needs 'pcc' and 'accuracy' columns");
      continue;
    }
    if (fields.size() <= std::max(*x_col, *y_col)) {
      throw ParseError(fmt::format("line {}: too few fields", line_no));
    }
    try {
      std::size_t used_x = 0;
      std::size_t used_y = 0;
      const double x = std::stod(fields[*x_col], &used_x);
      const double y = std::stod(fields[*y_col], &used_y);
      if (used_x != fields[*x_col].size() || used_y != fields[*y_col].size()) throw std::invalid_argument("");
      points.push_back({x, y});
    } catch (const std::exception&) {
      throw ParseError(fmt::format("line {}: pcc/accuracy are not numbers", line_no));
    }
  }
  if (!x_col) throw ParseError("line 1: empty regression input");
  return points;
}

void cmd_regress(const RegressOptions& o, std::ostream& log) {
  const auto points = read_points(o.input);
  const auto fit = analysis::ols_fit(points);
  const fs::path dir(o.out);
  write_text(dir / kRegressionJson, analysis::regression_json(fit));
  write_text(dir / kRegressionPlot, analysis::regression_plot_csv(fit, points));
  log << fmt::format("slope {:.4f}  intercept {:.4f}  R2 {:.4f}  p {:.3g}  (n={})\n", fit.slope,
                     fit.intercept, fit.r2, fit.p_value, fit.n);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Couple CNN filters and functional brain networks through synchronized activations"};
  app.set_config("--config", "", "INI/TOML file supplying any flag; command-line flags win");
  app.fallthrough();  // global flags may also follow the subcommand
  app.require_subcommand(1);
  std::uint64_t seed = 42;
  std::size_t threads = 1;
  app.add_option("--seed", seed, "Seed for every random draw")->capture_default_str();
  app.add_option("--threads", threads, "Worker cap for parallel sections")->capture_default_str()
      ->check(CLI::PositiveNumber);

  SynthOptions so;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic coupled dataset");
  synth_cmd->add_option("--out", so.out, "Output directory")->required();
  synth_cmd->add_option("--subjects", so.config.subjects)->capture_default_str();
  synth_cmd->add_option("--t", so.config.t, "Time points")->capture_default_str();
  synth_cmd->add_option("--n", so.config.n, "Voxels")->capture_default_str();
  synth_cmd->add_option("--m", so.config.m, "Latent sources")->capture_default_str();
  synth_cmd->add_option("--c", so.config.c, "Filter channels")->capture_default_str();
  synth_cmd->add_option("--sigma-brain", so.config.sigma_brain)->capture_default_str();
  synth_cmd->add_option("--sigma-filter", so.config.sigma_filter)->capture_default_str();

  TrainOptions to;
  auto* train_cmd = app.add_subcommand("train", "Train the FBN embedding");
  train_cmd->add_option("--manifest", to.manifest)->required();
  train_cmd->add_option("--out", to.out, "Output directory")->required();
  train_cmd->add_option("--variant", to.variant, "lt, lt+lstm or lt+msa")->capture_default_str();
  train_cmd->add_option("--m", to.fbns, "Number of FBNs")->capture_default_str();
  train_cmd->add_option("--epochs", to.epochs)->capture_default_str();
  train_cmd->add_option("--batch", to.batch)->capture_default_str();
  train_cmd->add_option("--lr", to.lr)->capture_default_str();
  train_cmd->add_option("--heads", to.heads)->capture_default_str();
  train_cmd->add_option("--lstm-layers", to.lstm_layers)->capture_default_str();
  train_cmd->add_flag("--no-positional", to.no_positional, "Disable positional encoding (lt+msa)");

  EmbedOptions eo;
  auto* embed_cmd = app.add_subcommand("embed", "Average FBN activations of held-out subjects");
  embed_cmd->add_option("--manifest", eo.manifest)->required();
  embed_cmd->add_option("--checkpoint", eo.checkpoint)->required();
  embed_cmd->add_option("--split", eo.split)->capture_default_str();
  embed_cmd->add_option("--out", eo.out, "Output directory")->required();

  ExtractOptions xo;
  auto* extract_cmd = app.add_subcommand("extract", "Reduce feature maps to filter activations");
  extract_cmd->add_option("--input", xo.input, "T x C x H x W feature-map tensor");
  extract_cmd->add_option("--output", xo.output, "Output T x C tensor");
  extract_cmd->add_option("--manifest", xo.manifest, "Reduce every feature_maps entry");
  extract_cmd->add_option("--out", xo.out, "Output directory for --manifest");

  PairOptions po;
  auto* pair_cmd = app.add_subcommand("pair", "Pair neurons by maximal PCC");
  pair_cmd->add_option("--fbn", po.fbn, "t x m FBN activations")->required();
  pair_cmd->add_option("--filters", po.filters, "T x C activations or feature maps")->required();
  pair_cmd->add_option("--direction", po.direction)->capture_default_str();
  pair_cmd->add_option("--alpha", po.alpha)->capture_default_str();
  pair_cmd->add_option("--lag", po.lag, "Filter row i pairs with FBN row i+lag")->capture_default_str();
  pair_cmd->add_option("--model", po.model)->capture_default_str();
  pair_cmd->add_option("--layer", po.layer)->capture_default_str();
  pair_cmd->add_option("--run", po.run)->capture_default_str();
  pair_cmd->add_option("--truth", po.truth, "Synthetic truth.json for recovery scoring");
  pair_cmd->add_option("--out", po.out, "Output directory")->required();

  AnnotateOptions ao;
  auto* annotate_cmd = app.add_subcommand("annotate", "Cross-annotate paired neurons");
  annotate_cmd->add_option("--pairing", ao.pairing)->required();
  annotate_cmd->add_option("--src-labels", ao.src_labels);
  annotate_cmd->add_option("--dst-labels", ao.dst_labels);
  annotate_cmd->add_option("--out", ao.out, "Output directory")->required();

  ReportOptions ro;
  auto* report_cmd = app.add_subcommand("report", "Summarize pairings per model, layer and run");
  report_cmd->add_option("--pairing", ro.pairings)->required();
  report_cmd->add_option("--out", ro.out, "Output directory")->required();

  AblateOptions bo;
  auto* ablate_cmd = app.add_subcommand("ablate", "Compare embedding variants on matched pairs");
  ablate_cmd->add_option("--variant", bo.variants, "NAME=PATH to t x m FBN activations")->required();
  ablate_cmd->add_option("--filters", bo.filters)->required();
  ablate_cmd->add_option("--lag", bo.lag)->capture_default_str();
  ablate_cmd->add_option("--out", bo.out, "Output directory")->required();

  RegressOptions go;
  auto* regress_cmd = app.add_subcommand("regress", "Regress accuracy on mean PCC");
  regress_cmd->add_option("--input", go.input, "CSV with pcc and accuracy columns")->required();
  regress_cmd->add_option("--out", go.out, "Output directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: E_USAGE: " << e.what() << "\n";
    return 2;
  }

  try {
    out << fmt::format("syncact {} seed={} threads={}\n", app.get_subcommands().front()->get_name(), seed,
                       threads);
    if (*synth_cmd) cmd_synth(so, seed, out);
    if (*train_cmd) cmd_train(to, seed, out);
    if (*embed_cmd) cmd_embed(eo, out);
    if (*extract_cmd) cmd_extract(xo, out);
    if (*pair_cmd) cmd_pair(po, threads, out);
    if (*annotate_cmd) cmd_annotate(ao, out);
    if (*report_cmd) cmd_report(ro, out);
    if (*ablate_cmd) cmd_ablate(bo, threads, out);
    if (*regress_cmd) cmd_regress(go, out);
  } catch (const Error& e) {
    std::string message = e.what();
    std::replace(message.begin(), message.end(), '\n', ' ');
    err << "error: " << error_code_name(e.code()) << ": " << message << "\n";
    return error_exit_status(e.code());
  } catch (const std::exception& e) {
    err << "error: E_INTERNAL: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace syncact::cli
