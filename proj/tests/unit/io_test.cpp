#include <doctest.h>

#include <png.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "mattekit/io/png_io.hpp"
#include "support/testutil.hpp"

using namespace mattekit;

namespace {

/// Writes a PNG through raw libpng with full control over color type, for
/// exercising reader paths (palette, alpha) our writer never produces.
void write_png_direct(const std::string& path, int width, int height, int color_type,
                      int bit_depth, const std::vector<png_byte>& interleaved,
                      const std::vector<png_color>* palette = nullptr) {
  FILE* fp = std::fopen(path.c_str(), "wb");
  REQUIRE(fp != nullptr);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  REQUIRE(setjmp(png_jmpbuf(png)) == 0);
  png_init_io(png, fp);
  png_set_IHDR(png, info, width, height, bit_depth, color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  if (palette != nullptr) {
    png_set_PLTE(png, info, palette->data(), static_cast<int>(palette->size()));
  }
  png_write_info(png, info);

  int channels = 1;
  if (color_type == PNG_COLOR_TYPE_RGB) channels = 3;
  if (color_type == PNG_COLOR_TYPE_GRAY_ALPHA) channels = 2;
  if (color_type == PNG_COLOR_TYPE_RGB_ALPHA) channels = 4;
  const size_t stride = static_cast<size_t>(width) * channels * (bit_depth == 16 ? 2 : 1);
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y) {
    rows[y] = const_cast<png_bytep>(interleaved.data() + y * stride);
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

}  // namespace

TEST_CASE("8-bit matte round-trip hits exact 255ths") {
  test::TempDir dir;
  const AlphaMatte matte(2, 3, {0.0f, 1.0f, 0.5f, 0.25f, 0.999f, 0.001f});
  const std::string path = dir.file("m.png");
  io::write_matte(matte, path);
  const AlphaMatte back = io::read_matte(path);
  REQUIRE(back.height() == 2);
  REQUIRE(back.width() == 3);
  for (int i = 0; i < 6; ++i) {
    const float v = matte.values()[i];
    const float expected =
        static_cast<float>(std::floor(v * 255.0 + 0.5) / 255.0);  // round-half-up levels
    CHECK(back.values()[i] == expected);
  }
}

TEST_CASE("16-bit matte round-trip is finer than 8-bit") {
  test::TempDir dir;
  std::mt19937 rng(5);
  const AlphaMatte matte = test::random_matte(rng, 8, 8);
  io::write_matte(matte, dir.file("m16.png"), 16);
  const AlphaMatte back = io::read_matte(dir.file("m16.png"));
  for (int i = 0; i < matte.pixel_count(); ++i) {
    CHECK(std::abs(back.values()[i] - matte.values()[i]) <= 0.5f / 65535.0f + 1e-7f);
  }
}

TEST_CASE("RGB image round-trip preserves 8-bit levels per channel") {
  test::TempDir dir;
  std::mt19937 rng(7);
  const ImageBuffer img = test::random_image(rng, 5, 4, 3);
  io::write_image(img, dir.file("rgb.png"));
  const ImageBuffer back = io::read_image(dir.file("rgb.png"));
  REQUIRE(back.channels() == 3);
  for (size_t i = 0; i < img.data().size(); ++i) {
    const float expected =
        static_cast<float>(std::floor(img.data()[i] * 255.0 + 0.5) / 255.0);
    CHECK(back.data()[i] == expected);
  }
}

TEST_CASE("grayscale images read as one channel") {
  test::TempDir dir;
  const ImageBuffer gray(2, 2, 1, {0.f, 0.25f, 0.5f, 1.f});
  io::write_image(gray, dir.file("g.png"));
  CHECK(io::read_image(dir.file("g.png")).channels() == 1);
}

TEST_CASE("write quantization rounds half up") {
  test::TempDir dir;
  // 0.5/255 = exactly halfway between level 0 and 1 -> rounds to level 1.
  const AlphaMatte matte(1, 2, {0.5f / 255.0f, 0.4f / 255.0f});
  io::write_matte(matte, dir.file("q.png"));
  const AlphaMatte back = io::read_matte(dir.file("q.png"));
  CHECK(back.values()[0] == 1.0f / 255.0f);
  CHECK(back.values()[1] == 0.0f);
}

TEST_CASE("binary masks survive the mask round-trip") {
  test::TempDir dir;
  std::mt19937 rng(9);
  const BinaryMask mask = test::random_mask_nondegenerate(rng, 6, 6);
  io::write_mask(mask, dir.file("mask.png"));
  const BinaryMask back = io::read_mask(dir.file("mask.png"));
  CHECK(std::equal(mask.values().begin(), mask.values().end(), back.values().begin()));
}

TEST_CASE("read_mask rejects fractional samples") {
  test::TempDir dir;
  io::write_matte(AlphaMatte(1, 1, {0.5f}), dir.file("frac.png"));
  CHECK_THROWS_AS(io::read_mask(dir.file("frac.png")), Error);
}

TEST_CASE("read_matte rejects color input") {
  test::TempDir dir;
  io::write_image(ImageBuffer::filled(2, 2, 3, 0.5f), dir.file("color.png"));
  try {
    io::read_matte(dir.file("color.png"));
    FAIL("expected ChannelMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ChannelMismatch);
  }
}

TEST_CASE("unreadable paths and non-PNG bytes raise IoError") {
  test::TempDir dir;
  try {
    io::read_image(dir.file("missing.png"));
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }

  std::ofstream(dir.file("fake.png")) << "definitely not a png";
  try {
    io::read_image(dir.file("fake.png"));
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}

TEST_CASE("palette PNGs expand to RGB") {
  test::TempDir dir;
  const std::vector<png_color> palette{{255, 0, 0}, {0, 255, 0}, {0, 0, 255}};
  // 2x2 of palette indices 0,1,2,0
  const std::vector<png_byte> indices{0, 1, 2, 0};
  write_png_direct(dir.file("pal.png"), 2, 2, PNG_COLOR_TYPE_PALETTE, 8, indices, &palette);

  const ImageBuffer img = io::read_image(dir.file("pal.png"));
  REQUIRE(img.channels() == 3);
  CHECK(img.at(0, 0, 0) == 1.0f);  // red pixel
  CHECK(img.at(0, 0, 1) == 0.0f);
  CHECK(img.at(0, 1, 1) == 1.0f);  // green pixel
  CHECK(img.at(1, 0, 2) == 1.0f);  // blue pixel
}

TEST_CASE("alpha channels are stripped on read") {
  test::TempDir dir;
  // 1x2 gray+alpha: gray values 100 and 200 with alphas 10 and 250.
  const std::vector<png_byte> ga{100, 10, 200, 250};
  write_png_direct(dir.file("ga.png"), 2, 1, PNG_COLOR_TYPE_GRAY_ALPHA, 8, ga);
  const ImageBuffer img = io::read_image(dir.file("ga.png"));
  REQUIRE(img.channels() == 1);
  CHECK(img.at(0, 0, 0) == doctest::Approx(100.0f / 255.0f));
  CHECK(img.at(0, 1, 0) == doctest::Approx(200.0f / 255.0f));
}

TEST_CASE("low-bit grayscale expands to 8-bit levels") {
  test::TempDir dir;
  // 1-bit gray, 8 pixels packed into one byte: 10110010
  const std::vector<png_byte> packed{0b10110010};
  write_png_direct(dir.file("g1.png"), 8, 1, PNG_COLOR_TYPE_GRAY, 1, packed);
  const ImageBuffer img = io::read_image(dir.file("g1.png"));
  REQUIRE(img.channels() == 1);
  const std::vector<float> expect{1, 0, 1, 1, 0, 0, 1, 0};
  for (int x = 0; x < 8; ++x) CHECK(img.at(0, x, 0) == expect[x]);
}

TEST_CASE("writes create parent directories and never leave temp files") {
  test::TempDir dir;
  const std::string nested = dir.file("a/b/c/out.png");
  io::write_matte(AlphaMatte::filled(2, 2, 0.5f), nested);
  CHECK(std::filesystem::exists(nested));
  // The temp path used internally must be gone after the rename.
  int entries = 0;
  for ([[maybe_unused]] const auto& e :
       std::filesystem::directory_iterator(dir.file("a/b/c"))) {
    ++entries;
  }
  CHECK(entries == 1);
}

TEST_CASE("16-bit RGB files read back exactly") {
  test::TempDir dir;
  const ImageBuffer img(1, 2, 3,
                        {0.25f, 0.75f,   // R plane
                         0.5f, 0.125f,   // G plane
                         1.0f, 0.0f});   // B plane
  io::write_image(img, dir.file("rgb16.png"), 16);
  const ImageBuffer back = io::read_image(dir.file("rgb16.png"));
  REQUIRE(back.channels() == 3);
  for (size_t i = 0; i < img.data().size(); ++i) {
    const float expected =
        static_cast<float>(std::floor(img.data()[i] * 65535.0 + 0.5) / 65535.0);
    CHECK(back.data()[i] == expected);
  }
}
