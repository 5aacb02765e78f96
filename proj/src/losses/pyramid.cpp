#include "mattekit/losses/pyramid.hpp"

#include <algorithm>

#include "mattekit/core/errors.hpp"
#include "mattekit/core/resize.hpp"

namespace mattekit::losses {

int reflect_index(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * (n - 1);
  int j = i % period;
  if (j < 0) j += period;
  return j < n ? j : period - j;
}

Plane binomial_blur5(const Plane& in) {
  static constexpr double kTap[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
  const int h = in.height;
  const int w = in.width;

  Plane rows{h, w, std::vector<double>(in.data.size())};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -2; k <= 2; ++k) {
        acc += kTap[k + 2] * in.at(y, reflect_index(x + k, w));
      }
      rows.data[static_cast<size_t>(y) * w + x] = acc;
    }
  }

  Plane out{h, w, std::vector<double>(in.data.size())};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -2; k <= 2; ++k) {
        acc += kTap[k + 2] * rows.at(reflect_index(y + k, h), x);
      }
      out.data[static_cast<size_t>(y) * w + x] = acc;
    }
  }
  return out;
}

Plane downsample2(const Plane& in) {
  const Plane blurred = binomial_blur5(in);
  const int oh = (in.height + 1) / 2;
  const int ow = (in.width + 1) / 2;
  Plane out{oh, ow, std::vector<double>(static_cast<size_t>(oh) * ow)};
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      out.data[static_cast<size_t>(y) * ow + x] = blurred.at(2 * y, 2 * x);
    }
  }
  return out;
}

Plane upsample_to(const Plane& in, int out_h, int out_w) {
  Plane out{out_h, out_w, std::vector<double>(static_cast<size_t>(out_h) * out_w)};
  detail::resize_plane_bilinear<double>(in.data.data(), in.height, in.width, out.data.data(),
                                        out_h, out_w);
  return out;
}

std::vector<Plane> laplacian_pyramid(const Plane& in, int levels) {
  if (levels < 1) {
    throw Error(ErrorCode::OutOfRangeValue,
                "laplacian_pyramid: levels must be >= 1, got " + std::to_string(levels));
  }
  // Each downsample halves (rounding up); the top Gaussian level must keep at
  // least 2 pixels per axis for the band-pass differences to be meaningful.
  const int min_side = std::min(in.height, in.width);
  const int need = levels >= 2 ? (1 << (levels - 2)) : 1;
  if (min_side < need) {
    throw Error(ErrorCode::ImageTooSmall,
                "laplacian_pyramid: " + std::to_string(levels) + " levels need min(H,W) >= " +
                    std::to_string(need) + ", got " + std::to_string(min_side));
  }

  std::vector<Plane> gauss;
  gauss.reserve(levels);
  gauss.push_back(in);
  for (int k = 1; k < levels; ++k) gauss.push_back(downsample2(gauss.back()));

  std::vector<Plane> laps;
  laps.reserve(levels);
  for (int k = 0; k + 1 < levels; ++k) {
    const Plane up = upsample_to(gauss[k + 1], gauss[k].height, gauss[k].width);
    Plane band = gauss[k];
    for (size_t p = 0; p < band.data.size(); ++p) band.data[p] -= up.data[p];
    laps.push_back(std::move(band));
  }
  laps.push_back(gauss.back());
  return laps;
}

}  // namespace mattekit::losses
