#include "mattekit/compose/compositor.hpp"

#include <algorithm>

namespace mattekit::compose {

ImageBuffer composite(const ImageBuffer& fg, const ImageBuffer& bg, const AlphaMatte& alpha) {
  require_same_shape(fg.height(), fg.width(), bg.height(), bg.width(), "composite fg/bg");
  require_same_shape(fg.height(), fg.width(), alpha.height(), alpha.width(),
                     "composite fg/alpha");
  if (fg.channels() != bg.channels()) {
    throw Error(ErrorCode::ChannelMismatch,
                "composite: fg has " + std::to_string(fg.channels()) + " channels, bg has " +
                    std::to_string(bg.channels()));
  }

  const int h = fg.height();
  const int w = fg.width();
  const int channels = fg.channels();
  const size_t pixels = static_cast<size_t>(h) * w;

  std::vector<float> out(pixels * channels);
  const std::span<const float> a = alpha.values();
  for (int c = 0; c < channels; ++c) {
    const std::span<const float> f = fg.plane(c);
    const std::span<const float> b = bg.plane(c);
    float* dst = out.data() + static_cast<size_t>(c) * pixels;
    for (size_t p = 0; p < pixels; ++p) {
      const double av = a[p];
      dst[p] = static_cast<float>(av * f[p] + (1.0 - av) * b[p]);
    }
  }
  return ImageBuffer(h, w, channels, std::move(out));
}

BinaryMask binarize_alpha(const AlphaMatte& alpha) {
  const std::span<const float> a = alpha.values();
  std::vector<uint8_t> bits(a.size());
  for (size_t p = 0; p < a.size(); ++p) bits[p] = a[p] > 0.0f ? 1 : 0;
  return BinaryMask(alpha.height(), alpha.width(), std::move(bits));
}

namespace detail {

namespace {

// Sliding-window min/max over rows then columns. `outside` is the value
// assumed beyond the border (background = 0 for both passes here).
std::vector<uint8_t> window_all(const std::vector<uint8_t>& in, int h, int w, int radius,
                                bool want_min) {
  std::vector<uint8_t> rowpass(in.size());
  // Horizontal pass.
  for (int y = 0; y < h; ++y) {
    const uint8_t* src = in.data() + static_cast<size_t>(y) * w;
    uint8_t* dst = rowpass.data() + static_cast<size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      uint8_t acc = want_min ? 1 : 0;
      for (int dx = -radius; dx <= radius; ++dx) {
        const int xx = x + dx;
        const uint8_t v = (xx < 0 || xx >= w) ? 0 : src[xx];
        if (want_min) {
          acc = std::min(acc, v);
        } else {
          acc = std::max(acc, v);
        }
      }
      dst[x] = acc;
    }
  }
  // Vertical pass.
  std::vector<uint8_t> out(in.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      uint8_t acc = want_min ? 1 : 0;
      for (int dy = -radius; dy <= radius; ++dy) {
        const int yy = y + dy;
        const uint8_t v = (yy < 0 || yy >= h) ? 0 : rowpass[static_cast<size_t>(yy) * w + x];
        if (want_min) {
          acc = std::min(acc, v);
        } else {
          acc = std::max(acc, v);
        }
      }
      out[static_cast<size_t>(y) * w + x] = acc;
    }
  }
  return out;
}

}  // namespace

std::vector<uint8_t> erode_square(const std::vector<uint8_t>& in, int h, int w, int radius) {
  if (radius <= 0) return in;
  return window_all(in, h, w, radius, /*want_min=*/true);
}

std::vector<uint8_t> dilate_square(const std::vector<uint8_t>& in, int h, int w, int radius) {
  if (radius <= 0) return in;
  return window_all(in, h, w, radius, /*want_min=*/false);
}

}  // namespace detail

ImageBuffer make_trimap(const AlphaMatte& alpha, int radius) {
  if (radius < 0) {
    throw Error(ErrorCode::OutOfRangeValue,
                "make_trimap: radius must be >= 0, got " + std::to_string(radius));
  }
  const int h = alpha.height();
  const int w = alpha.width();
  const std::span<const float> a = alpha.values();
  const size_t pixels = a.size();

  std::vector<uint8_t> solid(pixels);    // alpha exactly 1
  std::vector<uint8_t> nonzero(pixels);  // alpha > 0
  for (size_t p = 0; p < pixels; ++p) {
    solid[p] = a[p] == 1.0f ? 1 : 0;
    nonzero[p] = a[p] > 0.0f ? 1 : 0;
  }

  const std::vector<uint8_t> fg_core = detail::erode_square(solid, h, w, radius);
  const std::vector<uint8_t> reach = detail::dilate_square(nonzero, h, w, radius);

  std::vector<float> tri(pixels);
  for (size_t p = 0; p < pixels; ++p) {
    if (fg_core[p]) {
      tri[p] = 1.0f;
    } else if (!reach[p]) {
      tri[p] = 0.0f;
    } else {
      tri[p] = 0.5f;
    }
  }
  return ImageBuffer(h, w, 1, std::move(tri));
}

}  // namespace mattekit::compose
