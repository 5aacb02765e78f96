#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mattekit/fusion/fusion.hpp"
#include "mattekit/losses/losses.hpp"
#include "mattekit/losses/pyramid.hpp"
#include "support/oracles.hpp"
#include "support/testutil.hpp"

using namespace mattekit;

namespace {

losses::Plane matte_plane(const AlphaMatte& m) {
  losses::Plane p;
  p.height = m.height();
  p.width = m.width();
  p.data.assign(m.values().begin(), m.values().end());
  return p;
}

}  // namespace

TEST_CASE("bce of a perfect binary prediction sits at the clamp floor") {
  std::mt19937 rng(41);
  const BinaryMask target = test::random_mask_nondegenerate(rng, 8, 8);
  const AlphaMatte pred(8, 8, target.to_float());
  CHECK(losses::bce(pred, target) <= 1e-6);
}

TEST_CASE("bce of the 0.5 predictor is ln 2 for any target") {
  std::mt19937 rng(42);
  const BinaryMask target = test::random_mask_nondegenerate(rng, 6, 7);
  const double value = losses::bce(AlphaMatte::filled(6, 7, 0.5f), target);
  CHECK(std::abs(value - std::log(2.0)) <= 1e-9);
}

TEST_CASE("bce of a maximally wrong prediction is clamp-bounded") {
  const double value =
      losses::bce(AlphaMatte::filled(4, 4, 0.0f), BinaryMask::filled(4, 4, 1));
  CHECK(value == doctest::Approx(-std::log(1e-7)).epsilon(1e-9));  // ~16.118
}

TEST_CASE("bce is symmetric under joint complement") {
  std::mt19937 rng(43);
  const BinaryMask target = test::random_mask_nondegenerate(rng, 8, 8);

  // Predictions on the k/256 grid (k in [1,255]) so the float complement
  // 1 - p is exact and no value enters the clamp band.
  std::uniform_int_distribution<int> grid(1, 255);
  std::vector<float> values(64), flipped(64);
  for (int i = 0; i < 64; ++i) {
    values[i] = static_cast<float>(grid(rng)) / 256.0f;
    flipped[i] = 1.0f - values[i];
  }
  const double lhs = losses::bce(AlphaMatte(8, 8, std::move(values)), target);
  const double rhs = losses::bce(AlphaMatte(8, 8, std::move(flipped)), target.complement());
  CHECK(lhs == rhs);
}

TEST_CASE("bce validates shapes") {
  CHECK_THROWS_AS(losses::bce(AlphaMatte::filled(2, 2, 0.5f), BinaryMask::filled(2, 3, 1)),
                  Error);
}

TEST_CASE("coarse loss applies the fixed stage weights") {
  CHECK(losses::coarse_loss(1.0, {1.0, 1.0, 1.0}) == 2.8);
  CHECK(losses::coarse_loss(0.7, {0.0, 0.0, 0.0}) == 0.7);
  CHECK(losses::coarse_loss(0.0, {1.0, 0.0, 0.0}) == 0.8);
  CHECK(losses::coarse_loss(0.0, {0.0, 1.0, 0.0}) == 0.6);
  CHECK(losses::coarse_loss(0.0, {0.0, 0.0, 1.0}) == 0.4);
}

TEST_CASE("coarse loss is linear in each argument") {
  std::mt19937 rng(44);
  std::uniform_real_distribution<double> dist(0.0, 2.0);
  for (int round = 0; round < 10; ++round) {
    const double d1 = dist(rng), d2 = dist(rng);
    const std::array<double, 3> a1{dist(rng), dist(rng), dist(rng)};
    const std::array<double, 3> a2{dist(rng), dist(rng), dist(rng)};
    const std::array<double, 3> sum{a1[0] + a2[0], a1[1] + a2[1], a1[2] + a2[2]};
    CHECK(losses::coarse_loss(d1 + d2, sum) ==
          doctest::Approx(losses::coarse_loss(d1, a1) + losses::coarse_loss(d2, a2))
              .epsilon(1e-12));
  }
}

TEST_CASE("region L1 averages only the unknown pixels") {
  // One unknown pixel with |0.3 - 0.8| = 0.5.
  const AlphaMatte pred(2, 2, {0.3f, 0.0f, 1.0f, 1.0f});
  const AlphaMatte gt(2, 2, {0.8f, 1.0f, 0.0f, 0.0f});
  const BinaryMask g(2, 2, std::vector<uint8_t>{1, 0, 0, 0});
  CHECK(losses::l1_loss(pred, gt, g) == doctest::Approx(0.5).epsilon(1e-6));

  std::mt19937 rng(45);
  const AlphaMatte same = test::random_matte(rng, 5, 5);
  CHECK(losses::l1_loss(same, same, BinaryMask::filled(5, 5, 1)) == 0.0);
}

TEST_CASE("empty unknown region yields zero with a warning") {
  const AlphaMatte pred = AlphaMatte::filled(3, 3, 0.2f);
  const AlphaMatte gt = AlphaMatte::filled(3, 3, 0.9f);
  std::vector<Warning> warnings;
  CHECK(losses::l1_loss(pred, gt, BinaryMask::filled(3, 3, 0), &warnings) == 0.0);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0] == Warning::EmptyUnknown);
}

TEST_CASE("L1 ignores changes outside the unknown region") {
  std::mt19937 rng(46);
  const AlphaMatte pred = test::random_matte(rng, 6, 6);
  const AlphaMatte gt = test::random_matte(rng, 6, 6);
  const BinaryMask g = test::random_mask_nondegenerate(rng, 6, 6);

  // Flip a g=0 pixel to a new value.
  int outside = -1;
  for (int i = 0; i < 36; ++i) {
    if (!g.values()[i]) {
      outside = i;
      break;
    }
  }
  REQUIRE(outside >= 0);
  std::vector<float> tweaked(pred.values().begin(), pred.values().end());
  tweaked[outside] = tweaked[outside] < 0.5f ? 0.93f : 0.07f;

  CHECK(losses::l1_loss(pred, gt, g) ==
        losses::l1_loss(AlphaMatte(6, 6, std::move(tweaked)), gt, g));
}

TEST_CASE("composition loss on one pixel with unit-contrast layers") {
  const AlphaMatte pred(1, 1, {0.2f});
  const AlphaMatte gt(1, 1, {0.7f});
  const ImageBuffer fg = ImageBuffer::filled(1, 1, 1, 1.0f);
  const ImageBuffer bg = ImageBuffer::filled(1, 1, 1, 0.0f);
  const BinaryMask g = BinaryMask::filled(1, 1, 1);
  // |composite(pred) - composite(gt)| = |pred - gt| = 0.5
  CHECK(losses::composition_loss(pred, gt, fg, bg, g) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("identical layers cancel alpha entirely") {
  std::mt19937 rng(47);
  const ImageBuffer f = test::random_image(rng, 5, 5, 3);
  const AlphaMatte pred = test::random_matte(rng, 5, 5);
  const AlphaMatte gt = test::random_matte(rng, 5, 5);
  CHECK(losses::composition_loss(pred, gt, f, f, BinaryMask::filled(5, 5, 1)) == 0.0);
}

TEST_CASE("composition loss equals the |Δα|·|F−B| closed form on one channel") {
  std::mt19937 rng(48);
  const ImageBuffer fg = test::random_image(rng, 6, 6, 1);
  const ImageBuffer bg = test::random_image(rng, 6, 6, 1);
  const AlphaMatte pred = test::random_matte(rng, 6, 6);
  const AlphaMatte gt = test::random_matte(rng, 6, 6);
  const BinaryMask g = test::random_mask_nondegenerate(rng, 6, 6);

  double sum = 0;
  int n = 0;
  for (int i = 0; i < 36; ++i) {
    if (!g.values()[i]) continue;
    // C(pred) - C(gt) = (pred - gt) (F - B), all in double like production.
    const double cp = static_cast<double>(pred.values()[i]) * fg.data()[i] +
                      (1.0 - pred.values()[i]) * bg.data()[i];
    const double cg = static_cast<double>(gt.values()[i]) * fg.data()[i] +
                      (1.0 - gt.values()[i]) * bg.data()[i];
    sum += std::abs(static_cast<double>(static_cast<float>(cp)) -
                    static_cast<double>(static_cast<float>(cg)));
    ++n;
  }
  REQUIRE(n > 0);
  CHECK(losses::composition_loss(pred, gt, fg, bg, g) ==
        doctest::Approx(sum / n).epsilon(1e-9));
}

TEST_CASE("multi-band loss of equal inputs vanishes") {
  std::mt19937 rng(49);
  const AlphaMatte m = test::random_matte(rng, 16, 16);
  CHECK(losses::laplacian_loss(m, m, BinaryMask::filled(16, 16, 1)) == 0.0);

  // Equal constants under a full mask also cancel level by level.
  const AlphaMatte c1 = AlphaMatte::filled(16, 16, 0.6f);
  const AlphaMatte c2 = AlphaMatte::filled(16, 16, 0.6f);
  CHECK(losses::laplacian_loss(c1, c2, BinaryMask::filled(16, 16, 1)) == 0.0);
}

TEST_CASE("multi-band loss matches the non-separable pyramid oracle") {
  std::mt19937 rng(50);
  for (int round = 0; round < 5; ++round) {
    const AlphaMatte pred = test::random_matte(rng, 16, 16);
    const AlphaMatte gt = test::random_matte(rng, 16, 16);
    const BinaryMask g = test::random_mask_nondegenerate(rng, 16, 16);

    const double production = losses::laplacian_loss(pred, gt, g);
    const double expect = test::oracle::laplacian_loss_2d(
        matte_plane(fusion::unknown_restrict(pred, g)),
        matte_plane(fusion::unknown_restrict(gt, g)), 5);
    CHECK(test::close_rel(production, expect, 1e-6));
  }
}

TEST_CASE("pyramid depth drives the minimum image size") {
  const BinaryMask g4 = BinaryMask::filled(4, 4, 1);
  const AlphaMatte m4 = AlphaMatte::filled(4, 4, 0.5f);
  try {
    losses::laplacian_loss(m4, m4, g4, 5);  // needs min side >= 8
    FAIL("expected ImageTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ImageTooSmall);
  }
  // Shallower pyramids admit smaller images.
  CHECK_NOTHROW(losses::laplacian_loss(m4, m4, g4, 4));
  const AlphaMatte m8 = AlphaMatte::filled(8, 8, 0.5f);
  CHECK_NOTHROW(losses::laplacian_loss(m8, m8, BinaryMask::filled(8, 8, 1), 5));
  CHECK_THROWS_AS(losses::laplacian_loss(m8, m8, BinaryMask::filled(8, 8, 1), 0), Error);
}

TEST_CASE("refine loss is exactly the sum of its three parts") {
  std::mt19937 rng(51);
  for (int round = 0; round < 10; ++round) {
    const AlphaMatte pred = test::random_matte(rng, 8, 8);
    const AlphaMatte gt = test::random_matte(rng, 8, 8);
    const ImageBuffer fg = test::random_image(rng, 8, 8, 3);
    const ImageBuffer bg = test::random_image(rng, 8, 8, 3);
    const BinaryMask g = test::random_mask_nondegenerate(rng, 8, 8);

    const double total = losses::refine_loss(pred, gt, fg, bg, g);
    const double parts = losses::l1_loss(pred, gt, g) +
                         losses::composition_loss(pred, gt, fg, bg, g) +
                         losses::laplacian_loss(pred, gt, g);
    CHECK(total == parts);
  }
}

TEST_CASE("refine loss of a perfect prediction is zero") {
  std::mt19937 rng(52);
  const AlphaMatte m = test::random_matte(rng, 8, 8);
  const ImageBuffer fg = test::random_image(rng, 8, 8, 3);
  const ImageBuffer bg = test::random_image(rng, 8, 8, 3);
  CHECK(losses::refine_loss(m, m, fg, bg, BinaryMask::filled(8, 8, 1)) == 0.0);
}

TEST_CASE("refine loss with no unknown pixels warns once and returns zero") {
  std::mt19937 rng(53);
  const AlphaMatte pred = test::random_matte(rng, 8, 8);
  const AlphaMatte gt = test::random_matte(rng, 8, 8);
  const ImageBuffer fg = test::random_image(rng, 8, 8, 3);
  const ImageBuffer bg = test::random_image(rng, 8, 8, 3);
  std::vector<Warning> warnings;
  CHECK(losses::refine_loss(pred, gt, fg, bg, BinaryMask::filled(8, 8, 0), &warnings) == 0.0);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0] == Warning::EmptyUnknown);
}

TEST_CASE("refine loss ignores pixels outside the unknown region") {
  std::mt19937 rng(54);
  const AlphaMatte pred = test::random_matte(rng, 8, 8);
  const AlphaMatte gt = test::random_matte(rng, 8, 8);
  const ImageBuffer fg = test::random_image(rng, 8, 8, 3);
  const ImageBuffer bg = test::random_image(rng, 8, 8, 3);
  const BinaryMask g = test::random_mask_nondegenerate(rng, 8, 8);

  int outside = -1;
  for (int i = 0; i < 64; ++i) {
    if (!g.values()[i]) {
      outside = i;
      break;
    }
  }
  REQUIRE(outside >= 0);
  std::vector<float> tweaked(pred.values().begin(), pred.values().end());
  tweaked[outside] = tweaked[outside] < 0.5f ? 0.87f : 0.13f;

  CHECK(losses::refine_loss(pred, gt, fg, bg, g) ==
        losses::refine_loss(AlphaMatte(8, 8, std::move(tweaked)), gt, fg, bg, g));
}

TEST_CASE("border reflection folds indices symmetrically") {
  CHECK(losses::reflect_index(0, 5) == 0);
  CHECK(losses::reflect_index(-1, 5) == 1);
  CHECK(losses::reflect_index(-2, 5) == 2);
  CHECK(losses::reflect_index(5, 5) == 3);
  CHECK(losses::reflect_index(6, 5) == 2);
  CHECK(losses::reflect_index(3, 1) == 0);  // single-element axis
}

TEST_CASE("binomial blur preserves constants and downsampling halves sizes") {
  losses::Plane p;
  p.height = 6;
  p.width = 9;
  p.data.assign(54, 0.42);
  const losses::Plane blurred = losses::binomial_blur5(p);
  for (const double v : blurred.data) CHECK(v == doctest::Approx(0.42).epsilon(1e-12));

  const losses::Plane half = losses::downsample2(p);
  CHECK(half.height == 3);  // ceil(6/2)
  CHECK(half.width == 5);   // ceil(9/2)
}

TEST_CASE("laplacian pyramid reconstructs its input") {
  std::mt19937 rng(55);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  losses::Plane p;
  p.height = 16;
  p.width = 16;
  p.data.resize(256);
  for (double& v : p.data) v = dist(rng);

  const std::vector<losses::Plane> bands = losses::laplacian_pyramid(p, 5);
  REQUIRE(bands.size() == 5);

  // Rebuild top-down: G_{k} = Lap_k + upsample(G_{k+1}).
  losses::Plane acc = bands.back();
  for (int k = 3; k >= 0; --k) {
    const losses::Plane up = losses::upsample_to(acc, bands[k].height, bands[k].width);
    acc.height = bands[k].height;
    acc.width = bands[k].width;
    acc.data.resize(bands[k].data.size());
    for (size_t i = 0; i < acc.data.size(); ++i) acc.data[i] = bands[k].data[i] + up.data[i];
  }
  for (size_t i = 0; i < p.data.size(); ++i) {
    CHECK(acc.data[i] == doctest::Approx(p.data[i]).epsilon(1e-12));
  }
}
