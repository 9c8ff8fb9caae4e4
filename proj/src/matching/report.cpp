#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "syncact/matching.hpp"
#include "syncact/text.hpp"

namespace syncact::matching {

std::vector<SummaryRow> summarize(std::span<const LabeledPairing> results) {
  std::vector<SummaryRow> rows;
  rows.reserve(results.size());
  for (const auto& item : results) {
    const auto& res = item.result;
    rows.push_back({item.model, item.layer, item.run, res.mean_r, fmt::format("{:.4f}", res.mean_r),
                    res.nonsignificant, res.source_count(), res.ratio()});
  }
  return rows;
}

std::string summary_csv(std::span<const SummaryRow> rows) {
  std::string out = "model,layer,run,mean_pcc,ratio,nonsignificant,sources\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{}\n", csv_field(r.model), csv_field(r.layer),
                       csv_field(r.run), r.mean_text, r.ratio, r.nonsignificant, r.sources);
  }
  return out;
}

std::string summary_table(std::span<const SummaryRow> rows) {
  // First-seen order for models, layers within a model, and runs.
  std::vector<std::string> runs;
  std::vector<std::pair<std::string, std::string>> keys;
  std::map<std::pair<std::string, std::string>, std::map<std::string, const SummaryRow*>> cells;
  for (const auto& r : rows) {
    if (std::find(runs.begin(), runs.end(), r.run) == runs.end()) runs.push_back(r.run);
    const auto key = std::make_pair(r.model, r.layer);
    if (!cells.contains(key)) keys.push_back(key);
    cells[key][r.run] = &r;
  }

  // Rank layers within each (model, run) when a model has more than one layer.
  std::map<const SummaryRow*, int> rank;
  std::map<std::string, std::vector<std::string>> layers_of;
  for (const auto& [model, layer] : keys) layers_of[model].push_back(layer);
  for (const auto& [model, layers] : layers_of) {
    if (layers.size() < 2) continue;
    for (const auto& run : runs) {
      std::vector<const SummaryRow*> column;
      for (const auto& layer : layers) {
        auto it = cells[{model, layer}].find(run);
        if (it != cells[{model, layer}].end() && !std::isnan(it->second->mean_r)) {
          column.push_back(it->second);
        }
      }
      std::stable_sort(column.begin(), column.end(),
                       [](const SummaryRow* a, const SummaryRow* b) { return a->mean_r > b->mean_r; });
      if (!column.empty()) rank[column[0]] = 1;
      if (column.size() > 1) rank[column[1]] = 2;
    }
  }

  std::vector<std::vector<std::string>> table;
  std::vector<std::string> header{"Methods", "Layer"};
  for (const auto& run : runs) {
    header.push_back(run + " PCC");
    header.push_back(run + " Ratio");
  }
  table.push_back(header);
  for (const auto& key : keys) {
    std::vector<std::string> line{key.first, key.second};
    for (const auto& run : runs) {
      auto it = cells[key].find(run);
      if (it == cells[key].end()) {
        line.push_back("-");
        line.push_back("-");
        continue;
      }
      std::string pcc = it->second->mean_text;
      if (auto r = rank.find(it->second); r != rank.end()) pcc += fmt::format(" ({})", r->second);
      line.push_back(pcc);
      line.push_back(it->second->ratio);
    }
    table.push_back(line);
  }
  return render_table(table);
}

std::string_view LabelTable::describe(std::size_t id) const {
  auto it = entries.find(id);
  return it == entries.end() ? kUnlabeled : std::string_view(it->second);
}

std::vector<Annotation> cross_annotate(const PairingResult& pairing, const LabelTable& source_labels,
                                       const LabelTable& target_labels) {
  std::vector<Annotation> out;
  for (const auto& pair : pairing.pairs) {
    if (!pair.paired) continue;
    out.push_back({pair.source, std::string(source_labels.describe(pair.source)), pair.target,
                   std::string(target_labels.describe(pair.target)), pair.r, pair.p});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Annotation& a, const Annotation& b) { return a.r > b.r; });
  return out;
}

std::string annotations_jsonl(std::span<const Annotation> entries) {
  std::string out;
  for (const auto& e : entries) {
    nlohmann::ordered_json j;
    j["source"] = e.source;
    j["source_description"] = e.source_description;
    j["target"] = e.target;
    j["target_description"] = e.target_description;
    j["r"] = e.r;
    j["p"] = e.p;
    out += j.dump() + "\n";
  }
  return out;
}

std::string annotations_table(std::span<const Annotation> entries) {
  std::vector<std::vector<std::string>> table{
      {"Source", "Source description", "->", "Target", "Target description", "PCC", "p"}};
  for (const auto& e : entries) {
    table.push_back({std::to_string(e.source), e.source_description, "->", std::to_string(e.target),
                     e.target_description, fmt::format("{:.4f}", e.r), fmt::format("{:.3g}", e.p)});
  }
  return render_table(table);
}

}  // namespace syncact::matching
