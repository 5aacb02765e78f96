#ifndef MATTEKIT_CORE_RESIZE_HPP_
#define MATTEKIT_CORE_RESIZE_HPP_

#include <algorithm>
#include <cmath>

#include "mattekit/core/image.hpp"

namespace mattekit {

namespace detail {

// Bilinear resample with half-pixel centers (align-corners=false):
//   src = (dst + 0.5) * in/out - 0.5, clamped to [0, in-1].
// Resizing to the same size is an exact copy. Math in double regardless of T.
template <typename T>
void resize_plane_bilinear(const T* src, int in_h, int in_w, T* dst, int out_h, int out_w) {
  const double scale_y = static_cast<double>(in_h) / out_h;
  const double scale_x = static_cast<double>(in_w) / out_w;
  for (int y = 0; y < out_h; ++y) {
    double sy = (y + 0.5) * scale_y - 0.5;
    sy = std::clamp(sy, 0.0, static_cast<double>(in_h - 1));
    const int y0 = static_cast<int>(std::floor(sy));
    const int y1 = std::min(y0 + 1, in_h - 1);
    const double fy = sy - y0;
    for (int x = 0; x < out_w; ++x) {
      double sx = (x + 0.5) * scale_x - 0.5;
      sx = std::clamp(sx, 0.0, static_cast<double>(in_w - 1));
      const int x0 = static_cast<int>(std::floor(sx));
      const int x1 = std::min(x0 + 1, in_w - 1);
      const double fx = sx - x0;
      const double top = (1.0 - fx) * src[y0 * in_w + x0] + fx * src[y0 * in_w + x1];
      const double bot = (1.0 - fx) * src[y1 * in_w + x0] + fx * src[y1 * in_w + x1];
      dst[y * out_w + x] = static_cast<T>((1.0 - fy) * top + fy * bot);
    }
  }
}

}  // namespace detail

ImageBuffer resize_bilinear(const ImageBuffer& image, int out_h, int out_w);
AlphaMatte resize_bilinear(const AlphaMatte& matte, int out_h, int out_w);

}  // namespace mattekit

#endif  // MATTEKIT_CORE_RESIZE_HPP_
