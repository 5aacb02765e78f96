#include "mattekit/cli/driver.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mattekit/cli/batch.hpp"
#include "mattekit/compose/compositor.hpp"
#include "mattekit/core/config.hpp"
#include "mattekit/core/manifest.hpp"
#include "mattekit/core/resize.hpp"
#include "mattekit/fusion/fusion.hpp"
#include "mattekit/harmony/harmony.hpp"
#include "mattekit/io/png_io.hpp"
#include "mattekit/losses/losses.hpp"
#include "mattekit/metrics/report.hpp"

namespace mattekit::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc | std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, path + ": cannot open temp file for writing");
    out << content;
    if (!out.good()) throw Error(ErrorCode::IoError, path + ": write failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::IoError, path + ": rename from temp failed");
  }
}

// Shared flags: config file selection and ad-hoc key=value overrides.
struct GlobalArgs {
  std::string config_path;
  std::vector<std::string> sets;
  int threads = 1;
};

Config build_config(const GlobalArgs& global) {
  Config cfg;
  std::string path = global.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv(Config::kEnvVar); env != nullptr && *env != '\0') {
      path = env;
    }
  }
  if (!path.empty()) cfg.load_file(path);
  for (const std::string& kv : global.sets) {
    const size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw CLI::ValidationError("--set expects key=value, got '" + kv + "'");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    cfg.set_override(trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
  }
  return cfg;
}

metrics::MetricOptions metric_options_from(const Config& cfg) {
  metrics::MetricOptions mo;
  mo.sad_scale = cfg.get_double("metrics.sad_scale");
  mo.mse_scale = cfg.get_double("metrics.mse_scale");
  mo.grad_scale = cfg.get_double("metrics.grad_scale");
  mo.conn_scale = cfg.get_double("metrics.conn_scale");
  mo.grad_sigma = cfg.get_double("metrics.grad_sigma");
  mo.conn_step = cfg.get_double("metrics.conn_step");
  mo.conn_threshold = cfg.get_double("metrics.conn_threshold");
  return mo;
}

// ---------------------------------------------------------------- compose --

struct ComposeArgs {
  std::string manifest;
  std::string out_dir;
  std::string bg_dir;
  bool harmonize = false;
  unsigned seed = 0;
};

int cmd_compose(const ComposeArgs& args, const Config& cfg, int threads) {
  const CorpusManifest manifest = CorpusManifest::load(args.manifest);
  fs::create_directories(args.out_dir);

  std::vector<std::string> bg_pool;
  if (!args.bg_dir.empty()) {
    for (const auto& entry : fs::directory_iterator(args.bg_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".png") {
        bg_pool.push_back(entry.path().string());
      }
    }
    std::sort(bg_pool.begin(), bg_pool.end());
  }

  harmony::HarmonyOptions hopt;
  hopt.epsilon = cfg.get_double("harmony.epsilon");
  hopt.literal_eq10 = cfg.get_bool("harmony.literal_eq10");

  const int n = static_cast<int>(manifest.records.size());
  std::vector<std::string> failures(n);

  parallel_for(n, threads, [&](int i) {
    const ManifestRecord& rec = manifest.records[i];
    try {
      const ImageBuffer fg = io::read_image(rec.foreground);
      const AlphaMatte alpha = io::read_matte(rec.alpha);
      require_same_shape(fg.height(), fg.width(), alpha.height(), alpha.width(),
                         "compose " + rec.id + " foreground/alpha");

      std::string bg_path = rec.background;
      if (bg_path.empty()) {
        if (bg_pool.empty()) {
          throw Error(ErrorCode::EmptyBackground,
                      "record '" + rec.id + "' has no background and no --bg-dir pool");
        }
        // One generator per record, keyed by seed + slot, so results are
        // independent of worker scheduling and thread count.
        std::mt19937 rng(args.seed + static_cast<unsigned>(i));
        bg_path = bg_pool[rng() % bg_pool.size()];
      }
      ImageBuffer bg = io::read_image(bg_path);
      if (bg.height() != fg.height() || bg.width() != fg.width()) {
        bg = resize_bilinear(bg, fg.height(), fg.width());
      }

      ImageBuffer out = compose::composite(fg, bg, alpha);
      if (args.harmonize) {
        const BinaryMask mask = compose::binarize_alpha(alpha);
        out = harmony::harmonize(out, mask, hopt);
      }

      const fs::path base = fs::path(args.out_dir);
      io::write_image(out, (base / (rec.id + ".png")).string());
      io::write_matte(alpha, (base / (rec.id + "_alpha.png")).string());
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  });

  int failed = 0;
  for (int i = 0; i < n; ++i) {
    if (!failures[i].empty()) {
      ++failed;
      std::cerr << "record '" << manifest.records[i].id << "' failed: " << failures[i] << "\n";
    }
  }
  std::cout << n << " records, " << (n - failed) << " composited, " << failed << " failed\n";
  return failed == 0 ? kExitOk : kExitDataError;
}

// ------------------------------------------------------------------- eval --

struct EvalArgs {
  std::string manifest;
  std::string pred_dir;
  std::string report_path;   // default: <pred_dir>/metrics.jsonl
  std::string summary_path;  // default: <pred_dir>/metrics.txt
  int resize = 0;
};

int cmd_eval(const EvalArgs& args, const Config& cfg, int threads) {
  const CorpusManifest manifest = CorpusManifest::load(args.manifest);

  metrics::EvalOptions opt;
  opt.metric_options = metric_options_from(cfg);
  opt.threads = threads;
  opt.resize = args.resize;
  const std::string region = cfg.get_string("metrics.region");
  if (region == "whole") {
    opt.region = metrics::RegionMode::Whole;
  } else if (region == "unknown") {
    opt.region = metrics::RegionMode::Unknown;
  } else {
    throw Error(ErrorCode::ParseError,
                "metrics.region must be 'whole' or 'unknown', got '" + region + "'");
  }

  const metrics::MetricsReport report = metrics::evaluate_corpus(manifest, args.pred_dir, opt);

  const std::string report_path =
      args.report_path.empty() ? (fs::path(args.pred_dir) / "metrics.jsonl").string()
                               : args.report_path;
  const std::string summary_path =
      args.summary_path.empty() ? (fs::path(args.pred_dir) / "metrics.txt").string()
                                : args.summary_path;
  write_text_atomic(report_path, report.to_jsonl());
  write_text_atomic(summary_path, report.to_summary_table());

  char line[256];
  std::snprintf(line, sizeof(line), "SAD %.3f\nMSE %.3f\nGrad %.3f\nConn %.3f\n",
                report.aggregate.mean_sad, report.aggregate.mean_mse,
                report.aggregate.mean_grad, report.aggregate.mean_conn);
  std::cout << line;
  std::cout << report.count << " evaluated, " << report.failed << " failed\n";
  return report.all_ok() ? kExitOk : kExitDataError;
}

// -------------------------------------------------- single-file utilities --

struct HarmonizeArgs {
  std::string composite;
  std::string mask;
  std::string out;
};

int cmd_harmonize(const HarmonizeArgs& args, const Config& cfg) {
  const ImageBuffer comp = io::read_image(args.composite);
  const BinaryMask mask = io::read_mask(args.mask);
  harmony::HarmonyOptions hopt;
  hopt.epsilon = cfg.get_double("harmony.epsilon");
  hopt.literal_eq10 = cfg.get_bool("harmony.literal_eq10");
  io::write_image(harmony::harmonize(comp, mask, hopt), args.out);
  return kExitOk;
}

struct TrimapArgs {
  std::string alpha;
  std::string out;
};

int cmd_trimap(const TrimapArgs& args, const Config& cfg) {
  const AlphaMatte alpha = io::read_matte(args.alpha);
  const int radius = cfg.get_int("trimap.radius");
  io::write_image(compose::make_trimap(alpha, radius), args.out);
  return kExitOk;
}

struct FuseArgs {
  std::string alpha_h;
  std::string alpha_l;
  std::string out;
};

int cmd_fuse(const FuseArgs& args, const Config& cfg) {
  const AlphaMatte high = io::read_matte(args.alpha_h);
  const AlphaMatte low = io::read_matte(args.alpha_l);
  fusion::FusionOptions fopt;
  fopt.quant_lo = cfg.get_double("fusion.quant_lo");
  fopt.quant_hi = cfg.get_double("fusion.quant_hi");
  fopt.allow_resize = cfg.get_bool("fusion.allow_resize");
  io::write_matte(fusion::fuse(high, low, fopt), args.out);
  return kExitOk;
}

struct LossArgs {
  std::string kind;
  std::string pred;
  std::string gt;
  std::string mask;
  std::string fg;
  std::string bg;
  std::string out;  // empty = stdout only
  double dom = 0.0;
  std::vector<double> aux;
};

int cmd_loss(const LossArgs& args, const Config& cfg) {
  const int levels = cfg.get_int("losses.pyramid_levels");
  std::vector<Warning> warnings;
  double value = 0.0;

  auto need = [&](const std::string& v, const char* flag) -> const std::string& {
    if (v.empty()) {
      throw CLI::ValidationError("loss --kind " + args.kind + " requires " + flag);
    }
    return v;
  };

  if (args.kind == "bce") {
    value = losses::bce(io::read_matte(need(args.pred, "--pred")),
                        io::read_mask(need(args.gt, "--gt")));
  } else if (args.kind == "coarse") {
    if (args.aux.size() != 3) {
      throw CLI::ValidationError("loss --kind coarse requires --aux a b c");
    }
    value = losses::coarse_loss(args.dom, {args.aux[0], args.aux[1], args.aux[2]});
  } else if (args.kind == "l1") {
    value = losses::l1_loss(io::read_matte(need(args.pred, "--pred")),
                            io::read_matte(need(args.gt, "--gt")),
                            io::read_mask(need(args.mask, "--mask")), &warnings);
  } else if (args.kind == "composition") {
    value = losses::composition_loss(io::read_matte(need(args.pred, "--pred")),
                                     io::read_matte(need(args.gt, "--gt")),
                                     io::read_image(need(args.fg, "--fg")),
                                     io::read_image(need(args.bg, "--bg")),
                                     io::read_mask(need(args.mask, "--mask")), &warnings);
  } else if (args.kind == "laplacian") {
    value = losses::laplacian_loss(io::read_matte(need(args.pred, "--pred")),
                                   io::read_matte(need(args.gt, "--gt")),
                                   io::read_mask(need(args.mask, "--mask")), levels);
  } else if (args.kind == "refine") {
    value = losses::refine_loss(io::read_matte(need(args.pred, "--pred")),
                                io::read_matte(need(args.gt, "--gt")),
                                io::read_image(need(args.fg, "--fg")),
                                io::read_image(need(args.bg, "--bg")),
                                io::read_mask(need(args.mask, "--mask")), &warnings);
  } else {
    throw CLI::ValidationError("unknown loss kind '" + args.kind +
                               "' (expected bce|coarse|l1|composition|laplacian|refine)");
  }

  json rec;
  rec["kind"] = args.kind;
  rec["value"] = value;
  if (!warnings.empty()) {
    std::vector<std::string> names;
    names.reserve(warnings.size());
    for (const Warning w : warnings) names.emplace_back(to_string(w));
    rec["warnings"] = names;
  }
  const std::string line = rec.dump();
  std::cout << line << "\n";
  if (!args.out.empty()) write_text_atomic(args.out, line + "\n");
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"mattekit — batch toolkit for alpha-matting corpora", "mattekit"};
  app.require_subcommand(1);

  GlobalArgs global;
  app.add_option("--config", global.config_path,
                 "config file path (falls back to $" + std::string(Config::kEnvVar) + ")");
  app.add_option("--set", global.sets, "override a config key, e.g. --set harmony.epsilon=1e-4")
      ->take_all();
  app.add_option("--threads", global.threads, "worker threads for batch commands")
      ->check(CLI::PositiveNumber);

  int exit_code = kExitOk;

  // compose
  ComposeArgs compose_args;
  CLI::App* compose = app.add_subcommand("compose", "composite a manifest of records");
  compose->add_option("manifest", compose_args.manifest, "manifest file (one record per line)")
      ->required();
  compose->add_option("out_dir", compose_args.out_dir, "output directory")->required();
  compose->add_option("--bg-dir", compose_args.bg_dir,
                      "pool of background PNGs for records without one");
  compose->add_flag("--harmonize", compose_args.harmonize,
                    "match foreground statistics to the background after compositing");
  compose->add_option("--seed", compose_args.seed, "seed for background pairing");
  compose->callback(
      [&] { exit_code = cmd_compose(compose_args, build_config(global), global.threads); });

  // eval
  EvalArgs eval_args;
  std::string region_flag;
  int resize_flag = 0;
  CLI::App* eval = app.add_subcommand("eval", "score predictions against a manifest");
  eval->add_option("manifest", eval_args.manifest, "manifest file")->required();
  eval->add_option("pred_dir", eval_args.pred_dir, "directory of <id>.png predictions")
      ->required();
  CLI::Option* region_opt =
      eval->add_option("--region", region_flag, "evaluation region: whole or unknown");
  CLI::Option* resize_opt = eval->add_option(
      "--resize", resize_flag, "resize predictions and ground truth to N x N first");
  eval->add_option("--report", eval_args.report_path,
                   "structured per-image report path (default <pred_dir>/metrics.jsonl)");
  eval->add_option("--summary", eval_args.summary_path,
                   "summary table path (default <pred_dir>/metrics.txt)");
  eval->callback([&] {
    Config cfg = build_config(global);
    if (region_opt->count() > 0) cfg.set_override("metrics.region", region_flag);
    if (resize_opt->count() > 0) eval_args.resize = resize_flag;
    exit_code = cmd_eval(eval_args, cfg, global.threads);
  });

  // harmonize
  HarmonizeArgs harm_args;
  double epsilon_flag = 0.0;
  bool literal_flag = false;
  CLI::App* harm = app.add_subcommand("harmonize", "statistics transfer onto a masked region");
  harm->add_option("composite", harm_args.composite, "input image")->required();
  harm->add_option("mask", harm_args.mask, "foreground mask (binary PNG)")->required();
  harm->add_option("out", harm_args.out, "output image path")->required();
  CLI::Option* eps_opt =
      harm->add_option("--epsilon", epsilon_flag, "variance-stabilizing epsilon");
  CLI::Option* literal_opt = harm->add_flag(
      "--literal-eq10", literal_flag, "swap the scale/shift roles (literal transfer variant)");
  harm->callback([&] {
    Config cfg = build_config(global);
    if (eps_opt->count() > 0) cfg.set_override("harmony.epsilon", fmt_double(epsilon_flag));
    if (literal_opt->count() > 0) {
      cfg.set_override("harmony.literal_eq10", literal_flag ? "true" : "false");
    }
    exit_code = cmd_harmonize(harm_args, cfg);
  });

  // trimap
  TrimapArgs trimap_args;
  int radius_flag = 0;
  CLI::App* trimap = app.add_subcommand("trimap", "derive a three-region map from a matte");
  trimap->add_option("alpha", trimap_args.alpha, "alpha matte PNG")->required();
  trimap->add_option("out", trimap_args.out, "output trimap path")->required();
  CLI::Option* radius_opt =
      trimap->add_option("--radius", radius_flag, "unknown-band radius in pixels");
  trimap->callback([&] {
    Config cfg = build_config(global);
    if (radius_opt->count() > 0) cfg.set_override("trimap.radius", std::to_string(radius_flag));
    exit_code = cmd_trimap(trimap_args, cfg);
  });

  // fuse
  FuseArgs fuse_args;
  double lo_flag = 0.0;
  double hi_flag = 1.0;
  CLI::App* fuse = app.add_subcommand("fuse", "blend a refined matte into a coarse matte");
  fuse->add_option("alpha_h", fuse_args.alpha_h, "full-resolution (refined) matte")->required();
  fuse->add_option("alpha_l", fuse_args.alpha_l, "coarse matte (any resolution)")->required();
  fuse->add_option("out", fuse_args.out, "output matte path")->required();
  CLI::Option* lo_opt = fuse->add_option("--quant-lo", lo_flag, "edge-mask lower bound");
  CLI::Option* hi_opt = fuse->add_option("--quant-hi", hi_flag, "edge-mask upper bound");
  fuse->callback([&] {
    Config cfg = build_config(global);
    if (lo_opt->count() > 0) cfg.set_override("fusion.quant_lo", fmt_double(lo_flag));
    if (hi_opt->count() > 0) cfg.set_override("fusion.quant_hi", fmt_double(hi_flag));
    exit_code = cmd_fuse(fuse_args, cfg);
  });

  // loss
  LossArgs loss_args;
  int levels_flag = 0;
  CLI::App* loss = app.add_subcommand("loss", "compute one training-loss value");
  loss->add_option("--kind", loss_args.kind, "bce|coarse|l1|composition|laplacian|refine")
      ->required();
  loss->add_option("--pred", loss_args.pred, "predicted matte PNG");
  loss->add_option("--gt", loss_args.gt, "target matte/mask PNG");
  loss->add_option("--mask", loss_args.mask, "unknown-region mask PNG");
  loss->add_option("--fg", loss_args.fg, "foreground image (composition/refine)");
  loss->add_option("--bg", loss_args.bg, "background image (composition/refine)");
  loss->add_option("--out", loss_args.out, "also write the record to this path");
  loss->add_option("--dom", loss_args.dom, "dominant term (coarse)");
  loss->add_option("--aux", loss_args.aux, "three auxiliary terms (coarse)")->expected(3);
  CLI::Option* levels_opt =
      loss->add_option("--levels", levels_flag, "pyramid depth for the laplacian term");
  loss->callback([&] {
    Config cfg = build_config(global);
    if (levels_opt->count() > 0) {
      cfg.set_override("losses.pyramid_levels", std::to_string(levels_flag));
    }
    exit_code = cmd_loss(loss_args, cfg);
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);  // prints help or the usage error
    return rc == 0 ? kExitOk : kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return exit_code;
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? argc - 1 : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace mattekit::cli
