#include "mattekit/io/png_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <vector>

namespace mattekit::io {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

struct RawPixels {
  int height = 0;
  int width = 0;
  int channels = 0;   // 1 or 3
  int bit_depth = 0;  // 8 or 16
  std::vector<float> planar;  // [0,1]
};

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::IoError, path + ": " + what);
}

RawPixels read_raw(const std::string& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) fail(path, "cannot open for reading");

  png_byte header[8];
  if (std::fread(header, 1, 8, fp.get()) != 8 || png_sig_cmp(header, 0, 8) != 0) {
    fail(path, "not a PNG file");
  }

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) fail(path, "png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    fail(path, "png_create_info_struct failed");
  }

  std::vector<png_byte> interleaved;
  std::vector<png_bytep> rows;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(path, "libpng error while reading");
  }

  png_init_io(png, fp.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  const int color_type = png_get_color_type(png, info);

  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_strip_alpha(png);
  if (bit_depth == 16) png_set_swap(png);  // rows arrive host-endian

  png_read_update_info(png, info);

  const int channels = png_get_channels(png, info);
  const int out_depth = png_get_bit_depth(png, info);
  if (channels != 1 && channels != 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(path, "unsupported channel count " + std::to_string(channels));
  }

  const size_t rowbytes = png_get_rowbytes(png, info);
  interleaved.resize(rowbytes * height);
  rows.resize(height);
  for (png_uint_32 y = 0; y < height; ++y) rows[y] = interleaved.data() + y * rowbytes;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  RawPixels out;
  out.height = static_cast<int>(height);
  out.width = static_cast<int>(width);
  out.channels = channels;
  out.bit_depth = out_depth;
  const size_t pixels = static_cast<size_t>(out.height) * out.width;
  out.planar.resize(pixels * channels);

  if (out_depth == 8) {
    for (size_t p = 0; p < pixels; ++p) {
      for (int c = 0; c < channels; ++c) {
        out.planar[c * pixels + p] = interleaved[p * channels + c] / 255.0f;
      }
    }
  } else if (out_depth == 16) {
    const auto* samples = reinterpret_cast<const uint16_t*>(interleaved.data());
    for (size_t p = 0; p < pixels; ++p) {
      for (int c = 0; c < channels; ++c) {
        out.planar[c * pixels + p] = samples[p * channels + c] / 65535.0f;
      }
    }
  } else {
    fail(path, "unsupported bit depth " + std::to_string(out_depth));
  }
  return out;
}

void write_raw(const std::string& path, int height, int width, int channels,
               std::span<const float> planar, int bit_depth) {
  if (bit_depth != 8 && bit_depth != 16) {
    throw Error(ErrorCode::IoError, path + ": bit depth must be 8 or 16");
  }

  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  const std::string tmp = path + ".tmp";

  {
    FilePtr fp(std::fopen(tmp.c_str(), "wb"));
    if (!fp) fail(path, "cannot open temp file for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) fail(path, "png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
      png_destroy_write_struct(&png, nullptr);
      fail(path, "png_create_info_struct failed");
    }

    std::vector<png_byte> rowbuf;
    if (setjmp(png_jmpbuf(png))) {
      png_destroy_write_struct(&png, &info);
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      fail(path, "libpng error while writing");
    }

    png_init_io(png, fp.get());
    const int color_type = channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB;
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
                 bit_depth, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    if (bit_depth == 16) png_set_swap(png);

    const size_t pixels = static_cast<size_t>(height) * width;
    const double maxval = bit_depth == 8 ? 255.0 : 65535.0;
    const size_t bytes_per_sample = bit_depth == 8 ? 1 : 2;
    rowbuf.resize(static_cast<size_t>(width) * channels * bytes_per_sample);

    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        for (int c = 0; c < channels; ++c) {
          const double v = planar[static_cast<size_t>(c) * pixels + y * width + x];
          const auto q = static_cast<uint32_t>(std::floor(v * maxval + 0.5));
          const size_t s = (static_cast<size_t>(x) * channels + c) * bytes_per_sample;
          if (bit_depth == 8) {
            rowbuf[s] = static_cast<png_byte>(q);
          } else {
            reinterpret_cast<uint16_t*>(rowbuf.data())[x * channels + c] =
                static_cast<uint16_t>(q);
          }
        }
      }
      png_write_row(png, rowbuf.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    if (std::fflush(fp.get()) != 0) fail(path, "flush failed");
  }

  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail(path, "rename from temp failed");
  }
}

}  // namespace

ImageBuffer read_image(const std::string& path) {
  RawPixels raw = read_raw(path);
  return ImageBuffer(raw.height, raw.width, raw.channels, std::move(raw.planar));
}

AlphaMatte read_matte(const std::string& path) {
  RawPixels raw = read_raw(path);
  if (raw.channels != 1) {
    throw Error(ErrorCode::ChannelMismatch, path + ": matte must be single-channel, got " +
                                                std::to_string(raw.channels));
  }
  return AlphaMatte(raw.height, raw.width, std::move(raw.planar));
}

BinaryMask read_mask(const std::string& path) {
  RawPixels raw = read_raw(path);
  if (raw.channels != 1) {
    throw Error(ErrorCode::ChannelMismatch, path + ": mask must be single-channel, got " +
                                                std::to_string(raw.channels));
  }
  return BinaryMask(raw.height, raw.width, std::span<const float>(raw.planar));
}

void write_image(const ImageBuffer& image, const std::string& path, int bit_depth) {
  write_raw(path, image.height(), image.width(), image.channels(), image.data(), bit_depth);
}

void write_matte(const AlphaMatte& matte, const std::string& path, int bit_depth) {
  write_raw(path, matte.height(), matte.width(), 1, matte.values(), bit_depth);
}

void write_mask(const BinaryMask& mask, const std::string& path) {
  const std::vector<float> planar = mask.to_float();
  write_raw(path, mask.height(), mask.width(), 1, planar, 8);
}

}  // namespace mattekit::io
