#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mattekit/harmony/harmony.hpp"
#include "support/testutil.hpp"

using namespace mattekit;

namespace {

/// Mean and sqrt(variance + eps) of one plane over the mask, recomputed
/// directly so property tests don't depend on the code under test.
struct PlaneStats {
  double mean = 0;
  double std = 0;
};

PlaneStats stats_of(const std::vector<float>& planes, int plane_index, int pixels,
                    const BinaryMask& mask, bool in_mask, double eps = 1e-5) {
  double sum = 0;
  int n = 0;
  const float* plane = planes.data() + static_cast<size_t>(plane_index) * pixels;
  for (int p = 0; p < pixels; ++p) {
    if ((mask.values()[p] != 0) == in_mask) {
      sum += plane[p];
      ++n;
    }
  }
  PlaneStats out;
  out.mean = sum / n;
  double var = 0;
  for (int p = 0; p < pixels; ++p) {
    if ((mask.values()[p] != 0) == in_mask) {
      const double d = plane[p] - out.mean;
      var += d * d;
    }
  }
  out.std = std::sqrt(var / n + eps);
  return out;
}

}  // namespace

TEST_CASE("stats of a constant region are the value and sqrt(epsilon)") {
  const ImageBuffer img = ImageBuffer::filled(4, 4, 1, 0.3f);
  const BinaryMask mask = BinaryMask::filled(4, 4, 1);
  const harmony::RegionStats stats = harmony::masked_stats(img, mask);
  REQUIRE(stats.mean.size() == 1);
  CHECK(stats.pixel_count == 16);
  CHECK(stats.mean[0] == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(stats.std[0] == doctest::Approx(std::sqrt(1e-5)).epsilon(1e-9));  // ~3.1623e-3
}

TEST_CASE("two-point masked stats match the hand calculation") {
  // Mask covers only the first two pixels: values 0.2 and 0.4.
  const ImageBuffer img(2, 2, 1, {0.2f, 0.4f, 0.9f, 0.9f});
  const BinaryMask mask(2, 2, std::vector<uint8_t>{1, 1, 0, 0});
  const harmony::RegionStats stats = harmony::masked_stats(img, mask);
  CHECK(stats.pixel_count == 2);
  CHECK(stats.mean[0] == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(stats.std[0] == doctest::Approx(std::sqrt(0.01 + 1e-5)).epsilon(1e-6));
}

TEST_CASE("full-mask stats equal whole-image statistics") {
  std::mt19937 rng(21);
  const ImageBuffer img = test::random_image(rng, 6, 6, 3);
  const BinaryMask full = BinaryMask::filled(6, 6, 1);
  const harmony::RegionStats stats = harmony::masked_stats(img, full);

  const std::vector<float> planes(img.data().begin(), img.data().end());
  for (int c = 0; c < 3; ++c) {
    // in_mask=false with the complement view: compute directly over all pixels
    double sum = 0;
    for (const float v : img.plane(c)) sum += v;
    const double mean = sum / 36.0;
    double var = 0;
    for (const float v : img.plane(c)) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / 36.0 + 1e-5);
    CHECK(stats.mean[c] == doctest::Approx(mean).epsilon(1e-9));
    CHECK(stats.std[c] == doctest::Approx(sd).epsilon(1e-9));
  }
}

TEST_CASE("masked_stats requires a populated mask") {
  const ImageBuffer img = ImageBuffer::filled(3, 3, 1, 0.5f);
  try {
    harmony::masked_stats(img, BinaryMask::filled(3, 3, 0));
    FAIL("expected EmptyMask");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyMask);
  }
  CHECK_THROWS_AS(harmony::masked_stats(img, BinaryMask::filled(2, 3, 1)), Error);
}

TEST_CASE("two-point transfer lands on the hand-derived values") {
  // Foreground pixels {0.2, 0.4}; background pixels {0.4, 0.8} giving
  // background mean 0.6 and std ~0.2. Transferred: ~{0.4, 0.8}.
  const ImageBuffer img(2, 2, 1, {0.2f, 0.4f, 0.4f, 0.8f});
  const BinaryMask mask(2, 2, std::vector<uint8_t>{1, 1, 0, 0});
  const std::vector<float> raw = harmony::harmonize_raw(img, mask);
  CHECK(raw[0] == doctest::Approx(0.4).epsilon(1e-3));
  CHECK(raw[1] == doctest::Approx(0.8).epsilon(1e-3));
  // Background pixels pass through bit-identically.
  CHECK(raw[2] == 0.4f);
  CHECK(raw[3] == 0.8f);
}

TEST_CASE("transfer matches background statistics after one application") {
  std::mt19937 rng(22);
  for (int round = 0; round < 20; ++round) {
    const ImageBuffer img = test::random_image(rng, 8, 8, 3);
    const BinaryMask mask = test::random_mask_nondegenerate(rng, 8, 8);
    const std::vector<float> raw = harmony::harmonize_raw(img, mask);

    const std::vector<float> original(img.data().begin(), img.data().end());
    for (int c = 0; c < 3; ++c) {
      const PlaneStats fg_after = stats_of(raw, c, 64, mask, true);
      const PlaneStats bg = stats_of(original, c, 64, mask, false);
      CHECK(std::abs(fg_after.mean - bg.mean) <= 1e-4);
      CHECK(std::abs(fg_after.std - bg.std) <= 1e-4);
    }
  }
}

TEST_CASE("transfer is idempotent before clamping") {
  std::mt19937 rng(23);
  const ImageBuffer img = test::random_image(rng, 8, 8, 3);
  const BinaryMask mask = test::random_mask_nondegenerate(rng, 8, 8);

  const std::vector<float> once = harmony::harmonize_raw(img, mask);
  const std::vector<float> twice = harmony::harmonize_raw_planes(once, 8, 8, 3, mask);
  for (size_t i = 0; i < once.size(); ++i) {
    CHECK(std::abs(once[i] - twice[i]) <= 1e-4);
  }
}

TEST_CASE("matching statistics make the transfer a no-op") {
  // Foreground and background regions with identical {0.2, 0.4} values.
  const ImageBuffer img(2, 2, 1, {0.2f, 0.4f, 0.2f, 0.4f});
  const BinaryMask mask(2, 2, std::vector<uint8_t>{1, 1, 0, 0});
  const std::vector<float> raw = harmony::harmonize_raw(img, mask);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(raw[i] - img.data()[i]) <= 1e-6);
  }
}

TEST_CASE("transfer preserves value ordering on the masked region") {
  std::mt19937 rng(24);
  const ImageBuffer img = test::random_image(rng, 8, 8, 1);
  const BinaryMask mask = test::random_mask_nondegenerate(rng, 8, 8);
  const std::vector<float> raw = harmony::harmonize_raw(img, mask);

  std::vector<int> masked;
  for (int p = 0; p < 64; ++p) {
    if (mask.values()[p]) masked.push_back(p);
  }
  for (size_t a = 0; a < masked.size(); ++a) {
    for (size_t b = a + 1; b < masked.size(); ++b) {
      const float in_a = img.data()[masked[a]];
      const float in_b = img.data()[masked[b]];
      if (in_a < in_b) CHECK(raw[masked[a]] <= raw[masked[b]]);
      if (in_b < in_a) CHECK(raw[masked[b]] <= raw[masked[a]]);
    }
  }
}

TEST_CASE("the literal transfer variant swaps scale and shift roles") {
  const ImageBuffer img(2, 2, 1, {0.2f, 0.4f, 0.4f, 0.8f});
  const BinaryMask mask(2, 2, std::vector<uint8_t>{1, 1, 0, 0});
  harmony::HarmonyOptions opt;
  opt.literal_eq10 = true;
  const std::vector<float> raw = harmony::harmonize_raw(img, mask, opt);

  const double mu = 0.3, sigma = std::sqrt(0.01 + 1e-5);
  const double bg_mean = 0.6, bg_std = std::sqrt(0.04 + 1e-5);
  // literal: scale = background mean, shift = background std
  const double expect0 = bg_mean * ((0.2f - mu) / sigma) + bg_std;
  const double expect1 = bg_mean * ((0.4f - mu) / sigma) + bg_std;
  CHECK(raw[0] == doctest::Approx(expect0).epsilon(1e-5));
  CHECK(raw[1] == doctest::Approx(expect1).epsilon(1e-5));
}

TEST_CASE("harmonize clamps to the unit range and validates") {
  // Extreme background stats push transferred values outside [0,1].
  const ImageBuffer img(1, 4, 1, {0.0f, 1.0f, 0.99f, 1.0f});
  const BinaryMask mask(1, 4, std::vector<uint8_t>{1, 1, 0, 0});
  const ImageBuffer out = harmony::harmonize(img, mask);
  CHECK(validate(out).ok());
  // Background pixels still pass through unchanged.
  CHECK(out.at(0, 2, 0) == 0.99f);
  CHECK(out.at(0, 3, 0) == 1.0f);
}

TEST_CASE("degenerate masks are rejected with specific codes") {
  const ImageBuffer img = ImageBuffer::filled(3, 3, 1, 0.5f);
  try {
    harmony::harmonize(img, BinaryMask::filled(3, 3, 0));
    FAIL("expected EmptyMask");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyMask);
  }
  try {
    harmony::harmonize(img, BinaryMask::filled(3, 3, 1));
    FAIL("expected EmptyBackground");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyBackground);
  }
  CHECK_THROWS_AS(harmony::harmonize(img, BinaryMask::filled(2, 2, 1)), Error);
}
