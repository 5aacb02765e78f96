#include "mattekit/core/image.hpp"

#include <string>

namespace mattekit {

namespace {

std::string at_pixel(size_t flat, int width) {
  return "flat index " + std::to_string(flat) + " (row " +
         std::to_string(flat / static_cast<size_t>(width)) + ")";
}

Status check_dims(int height, int width) {
  if (height < 1 || width < 1) {
    return Status::fail(ErrorCode::ZeroDimension,
                        "dimensions must be positive, got " + std::to_string(height) + "x" +
                            std::to_string(width));
  }
  return Status::good();
}

}  // namespace

Status validate_image_data(int height, int width, int channels, std::span<const float> data) {
  if (auto s = check_dims(height, width); !s.ok()) return s;
  if (channels != 1 && channels != 3) {
    return Status::fail(ErrorCode::ChannelMismatch,
                        "channels must be 1 or 3, got " + std::to_string(channels));
  }
  const size_t expected = static_cast<size_t>(height) * width * channels;
  if (data.size() != expected) {
    return Status::fail(ErrorCode::ShapeMismatch,
                        "data length " + std::to_string(data.size()) + " != h*w*c = " +
                            std::to_string(expected));
  }
  for (size_t i = 0; i < data.size(); ++i) {
    const float v = data[i];
    if (!(v >= 0.0f && v <= 1.0f)) {  // catches NaN as well
      return Status::fail(ErrorCode::OutOfRangeValue,
                          "value " + std::to_string(v) + " at " + at_pixel(i, width));
    }
  }
  return Status::good();
}

Status validate_matte_data(int height, int width, std::span<const float> values) {
  if (auto s = check_dims(height, width); !s.ok()) return s;
  const size_t expected = static_cast<size_t>(height) * width;
  if (values.size() != expected) {
    return Status::fail(ErrorCode::ShapeMismatch,
                        "value count " + std::to_string(values.size()) + " != h*w = " +
                            std::to_string(expected));
  }
  for (size_t i = 0; i < values.size(); ++i) {
    const float v = values[i];
    if (!(v >= 0.0f && v <= 1.0f)) {
      return Status::fail(ErrorCode::OutOfRangeValue,
                          "value " + std::to_string(v) + " at " + at_pixel(i, width));
    }
  }
  return Status::good();
}

Status validate_mask_data(int height, int width, std::span<const float> values) {
  if (auto s = check_dims(height, width); !s.ok()) return s;
  const size_t expected = static_cast<size_t>(height) * width;
  if (values.size() != expected) {
    return Status::fail(ErrorCode::ShapeMismatch,
                        "value count " + std::to_string(values.size()) + " != h*w = " +
                            std::to_string(expected));
  }
  for (size_t i = 0; i < values.size(); ++i) {
    const float v = values[i];
    if (v != 0.0f && v != 1.0f) {
      return Status::fail(ErrorCode::NonBinaryValue,
                          "value " + std::to_string(v) + " at " + at_pixel(i, width));
    }
  }
  return Status::good();
}

ImageBuffer::ImageBuffer(int height, int width, int channels, std::vector<float> data)
    : height_(height), width_(width), channels_(channels), data_(std::move(data)) {
  validate_image_data(height_, width_, channels_, data_).check();
}

ImageBuffer ImageBuffer::filled(int height, int width, int channels, float value) {
  return ImageBuffer(height, width, channels,
                     std::vector<float>(static_cast<size_t>(height) * width * channels, value));
}

AlphaMatte::AlphaMatte(int height, int width, std::vector<float> values)
    : height_(height), width_(width), values_(std::move(values)) {
  validate_matte_data(height_, width_, values_).check();
}

AlphaMatte AlphaMatte::filled(int height, int width, float value) {
  return AlphaMatte(height, width, std::vector<float>(static_cast<size_t>(height) * width, value));
}

BinaryMask::BinaryMask(int height, int width, std::vector<uint8_t> values)
    : height_(height), width_(width), values_(std::move(values)) {
  check_dims(height_, width_).check();
  const size_t expected = static_cast<size_t>(height_) * width_;
  if (values_.size() != expected) {
    throw Error(ErrorCode::ShapeMismatch,
                "mask value count " + std::to_string(values_.size()) + " != h*w = " +
                    std::to_string(expected));
  }
  for (size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != 0 && values_[i] != 1) {
      throw Error(ErrorCode::NonBinaryValue,
                  "byte value " + std::to_string(values_[i]) + " at index " + std::to_string(i));
    }
  }
}

BinaryMask::BinaryMask(int height, int width, std::span<const float> values)
    : height_(height), width_(width) {
  validate_mask_data(height, width, values).check();
  values_.resize(values.size());
  for (size_t i = 0; i < values.size(); ++i) values_[i] = values[i] == 1.0f ? 1 : 0;
}

BinaryMask BinaryMask::filled(int height, int width, uint8_t value) {
  return BinaryMask(height, width,
                    std::vector<uint8_t>(static_cast<size_t>(height) * width, value));
}

int BinaryMask::count_ones() const {
  int n = 0;
  for (uint8_t v : values_) n += v;
  return n;
}

BinaryMask BinaryMask::complement() const {
  std::vector<uint8_t> out(values_.size());
  for (size_t i = 0; i < values_.size(); ++i) out[i] = values_[i] ? 0 : 1;
  return BinaryMask(height_, width_, std::move(out));
}

std::vector<float> BinaryMask::to_float() const {
  std::vector<float> out(values_.size());
  for (size_t i = 0; i < values_.size(); ++i) out[i] = values_[i] ? 1.0f : 0.0f;
  return out;
}

Status validate(const ImageBuffer& image) {
  return validate_image_data(image.height(), image.width(), image.channels(), image.data());
}

Status validate(const AlphaMatte& matte) {
  return validate_matte_data(matte.height(), matte.width(), matte.values());
}

Status validate(const BinaryMask& mask) {
  for (size_t i = 0; i < mask.values().size(); ++i) {
    const uint8_t v = mask.values()[i];
    if (v != 0 && v != 1) {
      return Status::fail(ErrorCode::NonBinaryValue,
                          "byte value " + std::to_string(v) + " at index " + std::to_string(i));
    }
  }
  return Status::good();
}

void require_same_shape(int h_a, int w_a, int h_b, int w_b, const std::string& where) {
  if (h_a != h_b || w_a != w_b) {
    throw Error(ErrorCode::ShapeMismatch,
                where + ": " + std::to_string(h_a) + "x" + std::to_string(w_a) + " vs " +
                    std::to_string(h_b) + "x" + std::to_string(w_b));
  }
}

ImageBuffer matte_to_image(const AlphaMatte& matte) {
  return ImageBuffer(matte.height(), matte.width(), 1,
                     std::vector<float>(matte.values().begin(), matte.values().end()));
}

AlphaMatte image_to_matte(const ImageBuffer& image) {
  if (image.channels() != 1) {
    throw Error(ErrorCode::ChannelMismatch,
                "matte view needs a 1-channel image, got " + std::to_string(image.channels()));
  }
  return AlphaMatte(image.height(), image.width(),
                    std::vector<float>(image.data().begin(), image.data().end()));
}

}  // namespace mattekit
