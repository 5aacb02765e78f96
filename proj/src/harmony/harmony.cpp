#include "mattekit/harmony/harmony.hpp"

#include <algorithm>
#include <cmath>

namespace mattekit::harmony {

namespace {

RegionStats stats_on_planes(const float* planes, int height, int width, int channels,
                            const BinaryMask& mask, double epsilon) {
  const size_t pixels = static_cast<size_t>(height) * width;
  const std::span<const uint8_t> m = mask.values();

  int count = 0;
  for (size_t p = 0; p < pixels; ++p) count += m[p];
  if (count == 0) {
    throw Error(ErrorCode::EmptyMask, "masked_stats: mask has no foreground pixels");
  }

  RegionStats stats;
  stats.pixel_count = count;
  stats.mean.resize(channels);
  stats.std.resize(channels);
  for (int c = 0; c < channels; ++c) {
    const float* plane = planes + static_cast<size_t>(c) * pixels;
    double sum = 0.0;
    for (size_t p = 0; p < pixels; ++p) {
      if (m[p]) sum += plane[p];
    }
    const double mean = sum / count;
    double sq = 0.0;
    for (size_t p = 0; p < pixels; ++p) {
      if (m[p]) {
        const double d = plane[p] - mean;
        sq += d * d;
      }
    }
    stats.mean[c] = mean;
    stats.std[c] = std::sqrt(sq / count + epsilon);
  }
  return stats;
}

}  // namespace

RegionStats masked_stats(const ImageBuffer& image, const BinaryMask& mask, double epsilon) {
  require_same_shape(image.height(), image.width(), mask.height(), mask.width(),
                     "masked_stats image/mask");
  return stats_on_planes(image.data().data(), image.height(), image.width(), image.channels(),
                         mask, epsilon);
}

std::vector<float> harmonize_raw_planes(const std::vector<float>& planes, int height,
                                        int width, int channels, const BinaryMask& fg_mask,
                                        const HarmonyOptions& options) {
  require_same_shape(height, width, fg_mask.height(), fg_mask.width(),
                     "harmonize image/mask");
  const size_t pixels = static_cast<size_t>(height) * width;
  if (planes.size() != pixels * channels) {
    throw Error(ErrorCode::ShapeMismatch, "harmonize: planar data size mismatch");
  }

  const BinaryMask bg_mask = fg_mask.complement();
  if (fg_mask.count_ones() == 0) {
    throw Error(ErrorCode::EmptyMask, "harmonize: foreground mask is empty");
  }
  if (bg_mask.count_ones() == 0) {
    throw Error(ErrorCode::EmptyBackground, "harmonize: background region is empty");
  }

  const RegionStats fg =
      stats_on_planes(planes.data(), height, width, channels, fg_mask, options.epsilon);
  const RegionStats bg =
      stats_on_planes(planes.data(), height, width, channels, bg_mask, options.epsilon);

  std::vector<float> out = planes;
  const std::span<const uint8_t> m = fg_mask.values();
  for (int c = 0; c < channels; ++c) {
    const double mu = fg.mean[c];
    const double sigma = fg.std[c];
    // Role-consistent transfer: scale by the background spread, shift to the
    // background mean. The literal variant uses the two the other way round.
    const double scale = options.literal_eq10 ? bg.mean[c] : bg.std[c];
    const double shift = options.literal_eq10 ? bg.std[c] : bg.mean[c];
    float* plane = out.data() + static_cast<size_t>(c) * pixels;
    for (size_t p = 0; p < pixels; ++p) {
      if (m[p]) {
        plane[p] = static_cast<float>(scale * ((plane[p] - mu) / sigma) + shift);
      }
    }
  }
  return out;
}

std::vector<float> harmonize_raw(const ImageBuffer& composite, const BinaryMask& fg_mask,
                                 const HarmonyOptions& options) {
  const std::vector<float> planes(composite.data().begin(), composite.data().end());
  return harmonize_raw_planes(planes, composite.height(), composite.width(),
                              composite.channels(), fg_mask, options);
}

ImageBuffer harmonize(const ImageBuffer& composite, const BinaryMask& fg_mask,
                      const HarmonyOptions& options) {
  std::vector<float> raw = harmonize_raw(composite, fg_mask, options);
  for (float& v : raw) v = std::clamp(v, 0.0f, 1.0f);
  return ImageBuffer(composite.height(), composite.width(), composite.channels(),
                     std::move(raw));
}

}  // namespace mattekit::harmony
