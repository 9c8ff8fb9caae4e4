#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace syncact::cli {

// Runs the command line `args` (args[0] is the program name). Diagnostics go
// to `err` as a single line "error: <CODE>: <message>"; the return value is
// the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Fixed output file names inside --out directories.
inline constexpr const char* kManifestFile = "manifest.ini";
inline constexpr const char* kTruthFile = "truth.json";
inline constexpr const char* kCheckpointFile = "model.ckpt";
inline constexpr const char* kTrainingLogFile = "training_log.csv";
inline constexpr const char* kFbnActivationsFile = "fbn_activations.npy";
inline constexpr const char* kPairingFile = "pairing.json";
inline constexpr const char* kAnnotationsJsonl = "annotations.jsonl";
inline constexpr const char* kAnnotationsText = "annotations.txt";
inline constexpr const char* kReportCsv = "report.csv";
inline constexpr const char* kReportText = "report.txt";
inline constexpr const char* kAblationCsv = "ablation.csv";
inline constexpr const char* kAblationText = "ablation.txt";
inline constexpr const char* kRegressionJson = "regression.json";
inline constexpr const char* kRegressionPlot = "regression_plot.csv";

}  // namespace syncact::cli
