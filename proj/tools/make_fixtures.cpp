// Generates the committed fixture corpus: ten 32x32 records (foreground,
// alpha, background), a matching prediction set, the corpus manifest, and the
// frozen evaluation report the regression gate compares against.
//
// Every pixel is a closed-form function of the record index and coordinates,
// so regeneration is bit-stable: no clocks, no environment, no external data.
//
//   make_fixtures [out_dir]   (default: fixtures)

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "mattekit/cli/driver.hpp"
#include "mattekit/core/image.hpp"
#include "mattekit/core/manifest.hpp"
#include "mattekit/io/png_io.hpp"

namespace fs = std::filesystem;
using namespace mattekit;

namespace {

constexpr int kRecords = 10;
constexpr int kSize = 32;

std::string record_id(int i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "img%02d", i);
  return buf;
}

// Soft disc: opaque core, fractional rim, transparent outside. Records with
// i % 3 == 0 get a second small disc so connectivity sees detached components.
AlphaMatte make_alpha(int i) {
  const double cx = 8.0 + (i * 3) % 16;
  const double cy = 7.0 + (i * 5) % 17;
  const double radius = 6.0 + i % 5;
  const double band = 3.0;
  std::vector<float> vals(static_cast<size_t>(kSize) * kSize);
  for (int y = 0; y < kSize; ++y) {
    for (int x = 0; x < kSize; ++x) {
      const double d = std::sqrt((x - cx) * (x - cx) + (y - cy) * (y - cy));
      double a = std::clamp((radius - d) / band, 0.0, 1.0);
      if (i % 3 == 0) {
        const double d2 = std::sqrt((x - 25.0) * (x - 25.0) + (y - 25.0) * (y - 25.0));
        a = std::max(a, std::clamp((3.5 - d2) / 1.5, 0.0, 1.0));
      }
      vals[static_cast<size_t>(y) * kSize + x] = static_cast<float>(a);
    }
  }
  return AlphaMatte(kSize, kSize, std::move(vals));
}

// Integer lattice patterns keep the rasters exactly reproducible.
ImageBuffer make_foreground(int i) {
  std::vector<float> vals(static_cast<size_t>(3) * kSize * kSize);
  for (int c = 0; c < 3; ++c) {
    for (int y = 0; y < kSize; ++y) {
      for (int x = 0; x < kSize; ++x) {
        const int v = (x * (2 + c) + y * (3 + c) + i * 13 + c * 41) % 256;
        vals[(static_cast<size_t>(c) * kSize + y) * kSize + x] = static_cast<float>(v) / 255.0f;
      }
    }
  }
  return ImageBuffer(kSize, kSize, 3, std::move(vals));
}

ImageBuffer make_background(int i) {
  std::vector<float> vals(static_cast<size_t>(3) * kSize * kSize);
  for (int c = 0; c < 3; ++c) {
    for (int y = 0; y < kSize; ++y) {
      for (int x = 0; x < kSize; ++x) {
        const int v = ((x / 4 + y / 4 + i) % 2) * 160 + (x * 3 + y * 5 + i * 17 + c * 29) % 96;
        vals[(static_cast<size_t>(c) * kSize + y) * kSize + x] = static_cast<float>(v) / 255.0f;
      }
    }
  }
  return ImageBuffer(kSize, kSize, 3, std::move(vals));
}

// Perturbed copy of the ground truth: fractional disagreement almost
// everywhere, but enough of the opaque core survives at exactly 1 that the
// connectivity source region stays non-empty. Record 7 is kept perfect so the
// report carries one all-zero row.
AlphaMatte make_prediction(int i, const AlphaMatte& gt) {
  if (i == 7) return gt;
  std::vector<float> vals(static_cast<size_t>(kSize) * kSize);
  for (int y = 0; y < kSize; ++y) {
    for (int x = 0; x < kSize; ++x) {
      const double t = ((x * 7 + y * 11 + i * 29) % 101) / 100.0;
      const double p = std::clamp(static_cast<double>(gt.at(y, x)) + 0.25 * t - 0.1, 0.0, 1.0);
      vals[static_cast<size_t>(y) * kSize + x] = static_cast<float>(p);
    }
  }
  return AlphaMatte(kSize, kSize, std::move(vals));
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path out_dir = argc > 1 ? argv[1] : "fixtures";
  try {
    for (const char* sub : {"fg", "alpha", "bg", "predictions", "golden"}) {
      fs::create_directories(out_dir / sub);
    }

    CorpusManifest manifest;
    for (int i = 0; i < kRecords; ++i) {
      const std::string id = record_id(i);
      const AlphaMatte alpha = make_alpha(i);
      io::write_image(make_foreground(i), (out_dir / "fg" / (id + ".png")).string());
      io::write_matte(alpha, (out_dir / "alpha" / (id + ".png")).string());
      io::write_image(make_background(i), (out_dir / "bg" / (id + ".png")).string());
      io::write_matte(make_prediction(i, alpha),
                      (out_dir / "predictions" / (id + ".png")).string());

      ManifestRecord rec;
      rec.id = id;
      rec.foreground = "fg/" + id + ".png";
      rec.alpha = "alpha/" + id + ".png";
      rec.background = "bg/" + id + ".png";
      rec.split = Split::Test;
      manifest.records.push_back(std::move(rec));
    }
    const std::string manifest_path = (out_dir / "manifest.jsonl").string();
    manifest.save(manifest_path);

    // Freeze the report through the real evaluation front end so the golden
    // bytes are exactly what a normal run produces.
    const std::vector<std::string> eval_args = {
        "eval",      manifest_path,
        (out_dir / "predictions").string(),
        "--report",  (out_dir / "golden" / "report.jsonl").string(),
        "--summary", (out_dir / "golden" / "summary.txt").string(),
    };
    if (const int rc = cli::run_cli(eval_args); rc != 0) {
      std::fprintf(stderr, "golden evaluation failed with exit code %d\n", rc);
      return 1;
    }

    std::printf("wrote %d records under %s\n", kRecords, out_dir.string().c_str());
    return 0;
  } catch (const Error& e) {
    std::fprintf(stderr, "make_fixtures: %s\n", e.what());
    return 1;
  }
}
