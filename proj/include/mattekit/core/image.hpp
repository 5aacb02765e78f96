#ifndef MATTEKIT_CORE_IMAGE_HPP_
#define MATTEKIT_CORE_IMAGE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "mattekit/core/errors.hpp"

namespace mattekit {

// Canonical pixel layout is planar (channel-major): data[c*H*W + y*W + x].
// All values live in [0,1]; types are immutable after construction and safe to
// share read-only across threads.

Status validate_image_data(int height, int width, int channels, std::span<const float> data);
Status validate_matte_data(int height, int width, std::span<const float> values);
Status validate_mask_data(int height, int width, std::span<const float> values);

/// H×W×C float raster in [0,1], planar layout. Channels is 1 or 3.
class ImageBuffer {
 public:
  ImageBuffer(int height, int width, int channels, std::vector<float> data);

  static ImageBuffer filled(int height, int width, int channels, float value);

  int height() const { return height_; }
  int width() const { return width_; }
  int channels() const { return channels_; }
  int pixel_count() const { return height_ * width_; }

  float at(int y, int x, int c) const { return data_[(c * height_ + y) * width_ + x]; }

  std::span<const float> plane(int c) const {
    return {data_.data() + static_cast<size_t>(c) * height_ * width_,
            static_cast<size_t>(height_) * width_};
  }
  std::span<const float> data() const { return data_; }

 private:
  int height_;
  int width_;
  int channels_;
  std::vector<float> data_;
};

/// H×W opacity field in [0,1].
class AlphaMatte {
 public:
  AlphaMatte(int height, int width, std::vector<float> values);

  static AlphaMatte filled(int height, int width, float value);

  int height() const { return height_; }
  int width() const { return width_; }
  int pixel_count() const { return height_ * width_; }

  float at(int y, int x) const { return values_[y * width_ + x]; }
  std::span<const float> values() const { return values_; }

 private:
  int height_;
  int width_;
  std::vector<float> values_;
};

/// H×W {0,1} field. Stored as bytes; constructible from float data that must be
/// exactly 0.0 or 1.0.
class BinaryMask {
 public:
  BinaryMask(int height, int width, std::vector<uint8_t> values);
  BinaryMask(int height, int width, std::span<const float> values);

  static BinaryMask filled(int height, int width, uint8_t value);

  int height() const { return height_; }
  int width() const { return width_; }
  int pixel_count() const { return height_ * width_; }

  uint8_t at(int y, int x) const { return values_[y * width_ + x]; }
  std::span<const uint8_t> values() const { return values_; }

  /// Number of 1-pixels.
  int count_ones() const;

  BinaryMask complement() const;

  /// The mask as a float field (0.0/1.0).
  std::vector<float> to_float() const;

 private:
  int height_;
  int width_;
  std::vector<uint8_t> values_;
};

/// Re-checks every type invariant; returns the first violation, if any.
Status validate(const ImageBuffer& image);
Status validate(const AlphaMatte& matte);
Status validate(const BinaryMask& mask);

/// Throws ShapeMismatch unless both fields share height and width.
void require_same_shape(int h_a, int w_a, int h_b, int w_b, const std::string& where);

/// 1-channel view of a matte as an ImageBuffer (copies).
ImageBuffer matte_to_image(const AlphaMatte& matte);

/// 1-channel image reinterpreted as a matte (copies).
AlphaMatte image_to_matte(const ImageBuffer& image);

}  // namespace mattekit

#endif  // MATTEKIT_CORE_IMAGE_HPP_
