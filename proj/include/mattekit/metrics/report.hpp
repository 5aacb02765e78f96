#ifndef MATTEKIT_METRICS_REPORT_HPP_
#define MATTEKIT_METRICS_REPORT_HPP_

#include <map>
#include <string>
#include <vector>

#include "mattekit/core/manifest.hpp"
#include "mattekit/metrics/metrics.hpp"

namespace mattekit::metrics {

enum class RegionMode { Whole, Unknown };

const char* to_string(RegionMode mode);

struct PerImageMetrics {
  std::string id;
  bool ok = false;
  double sad = 0, mse = 0, grad = 0, conn = 0;
  std::vector<std::string> warnings;
  std::string error;  // set when !ok
};

struct Aggregate {
  double mean_sad = 0, mean_mse = 0, mean_grad = 0, mean_conn = 0;
};

struct MetricsReport {
  std::vector<PerImageMetrics> per_image;  // manifest order, failed entries included
  Aggregate aggregate;                     // arithmetic means over the ok entries
  int count = 0;                           // number of ok entries
  int failed = 0;
  std::map<std::string, std::string> config;  // effective conventions

  bool all_ok() const { return failed == 0; }

  /// One JSON object per line: the per-image records, then one aggregate record.
  std::string to_jsonl() const;
  /// Human-readable table with the aggregate row and the embedded config.
  std::string to_summary_table() const;
};

struct EvalOptions {
  RegionMode region = RegionMode::Whole;
  MetricOptions metric_options;
  int threads = 1;
  // Optional square resize applied to prediction and ground truth before
  // metrics; 0 = native resolution.
  int resize = 0;
};

/// Evaluates pred_dir/<id>.png against each record's alpha. Per-image failures
/// (missing or unreadable predictions, shape mismatches) are recorded, not
/// fatal. With RegionMode::Unknown the region is the ground truth's fractional
/// set {0 < α < 1}.
MetricsReport evaluate_corpus(const CorpusManifest& manifest, const std::string& pred_dir,
                              const EvalOptions& options = {});

}  // namespace mattekit::metrics

#endif  // MATTEKIT_METRICS_REPORT_HPP_
