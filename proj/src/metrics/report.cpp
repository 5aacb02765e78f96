#include "mattekit/metrics/report.hpp"

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "mattekit/cli/batch.hpp"
#include "mattekit/core/resize.hpp"
#include "mattekit/fusion/fusion.hpp"
#include "mattekit/io/png_io.hpp"

namespace mattekit::metrics {

using nlohmann::json;

const char* to_string(RegionMode mode) {
  return mode == RegionMode::Whole ? "whole" : "unknown";
}

namespace {

PerImageMetrics evaluate_one(const ManifestRecord& record, const std::string& pred_dir,
                             const EvalOptions& options) {
  PerImageMetrics out;
  out.id = record.id;
  try {
    const std::filesystem::path pred_path =
        std::filesystem::path(pred_dir) / (record.id + ".png");
    if (!std::filesystem::exists(pred_path)) {
      throw Error(ErrorCode::MissingPrediction, "no prediction file " + pred_path.string());
    }
    AlphaMatte pred = io::read_matte(pred_path.string());
    AlphaMatte gt = io::read_matte(record.alpha);
    if (options.resize > 0) {
      pred = resize_bilinear(pred, options.resize, options.resize);
      gt = resize_bilinear(gt, options.resize, options.resize);
    }

    const BinaryMask* region = nullptr;
    BinaryMask unknown(1, 1, std::vector<uint8_t>{0});
    if (options.region == RegionMode::Unknown) {
      unknown = fusion::f_quant(gt);
      region = &unknown;
    }

    std::vector<Warning> warn;
    out.sad = sad(pred, gt, region, options.metric_options);
    out.mse = mse(pred, gt, region, options.metric_options);
    out.grad = grad_error(pred, gt, region, options.metric_options);
    out.conn = conn_error(pred, gt, region, options.metric_options, &warn);
    for (const Warning w : warn) out.warnings.emplace_back(to_string(w));
    out.ok = true;
  } catch (const Error& e) {
    out.ok = false;
    out.error = std::string(to_string(e.code())) + ": " + e.what();
  } catch (const std::exception& e) {
    out.ok = false;
    out.error = e.what();
  }
  return out;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

MetricsReport evaluate_corpus(const CorpusManifest& manifest, const std::string& pred_dir,
                              const EvalOptions& options) {
  MetricsReport report;
  report.per_image.resize(manifest.records.size());

  // Each worker writes only its own slot, so the report is independent of the
  // thread count.
  cli::parallel_for(static_cast<int>(manifest.records.size()), options.threads, [&](int i) {
    report.per_image[i] = evaluate_one(manifest.records[i], pred_dir, options);
  });

  double s = 0, m = 0, g = 0, c = 0;
  for (const PerImageMetrics& pim : report.per_image) {
    if (pim.ok) {
      ++report.count;
      s += pim.sad;
      m += pim.mse;
      g += pim.grad;
      c += pim.conn;
    } else {
      ++report.failed;
    }
  }
  if (report.count > 0) {
    report.aggregate.mean_sad = s / report.count;
    report.aggregate.mean_mse = m / report.count;
    report.aggregate.mean_grad = g / report.count;
    report.aggregate.mean_conn = c / report.count;
  }

  const MetricOptions& mo = options.metric_options;
  report.config["region"] = to_string(options.region);
  report.config["sad_scale"] = format_double(mo.sad_scale);
  report.config["mse_scale"] = format_double(mo.mse_scale);
  report.config["grad_scale"] = format_double(mo.grad_scale);
  report.config["conn_scale"] = format_double(mo.conn_scale);
  report.config["grad_sigma"] = format_double(mo.grad_sigma);
  report.config["conn_step"] = format_double(mo.conn_step);
  report.config["conn_threshold"] = format_double(mo.conn_threshold);
  if (options.resize > 0) report.config["resize"] = std::to_string(options.resize);
  return report;
}

std::string MetricsReport::to_jsonl() const {
  std::ostringstream os;
  for (const PerImageMetrics& pim : per_image) {
    json rec;
    rec["id"] = pim.id;
    rec["ok"] = pim.ok;
    if (pim.ok) {
      rec["sad"] = pim.sad;
      rec["mse"] = pim.mse;
      rec["grad"] = pim.grad;
      rec["conn"] = pim.conn;
      if (!pim.warnings.empty()) rec["warnings"] = pim.warnings;
    } else {
      rec["error"] = pim.error;
    }
    os << rec.dump() << "\n";
  }
  json agg;
  agg["aggregate"] = true;
  agg["count"] = count;
  agg["failed"] = failed;
  agg["mean_sad"] = aggregate.mean_sad;
  agg["mean_mse"] = aggregate.mean_mse;
  agg["mean_grad"] = aggregate.mean_grad;
  agg["mean_conn"] = aggregate.mean_conn;
  agg["config"] = config;
  os << agg.dump() << "\n";
  return os.str();
}

std::string MetricsReport::to_summary_table() const {
  std::ostringstream os;
  os << "id                               SAD        MSE       Grad       Conn\n";
  os << "--------------------------------------------------------------------\n";
  auto row = [&os](const std::string& name, double a, double b, double c, double d) {
    os << name;
    for (size_t pad = name.size(); pad < 28; ++pad) os << ' ';
    char buf[64];
    std::snprintf(buf, sizeof(buf), " %10.5f %10.5f %10.5f %10.5f", a, b, c, d);
    os << buf << "\n";
  };
  for (const PerImageMetrics& pim : per_image) {
    if (pim.ok) {
      row(pim.id, pim.sad, pim.mse, pim.grad, pim.conn);
    } else {
      os << pim.id;
      for (size_t pad = pim.id.size(); pad < 28; ++pad) os << ' ';
      os << " FAILED: " << pim.error << "\n";
    }
  }
  os << "--------------------------------------------------------------------\n";
  row("mean (" + std::to_string(count) + " ok, " + std::to_string(failed) + " failed)",
      aggregate.mean_sad, aggregate.mean_mse, aggregate.mean_grad, aggregate.mean_conn);
  for (const auto& [key, value] : config) {
    os << "# " << key << " = " << value << "\n";
  }
  return os.str();
}

}  // namespace mattekit::metrics
